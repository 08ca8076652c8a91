# This script handles the chain-check command.
# Created On: Oct 19, 2026
#
import click
from rich.panel import Panel

from heisencut.config import MAX_DIM_CAP
from heisencut.core.spin_chain import ChainSpec, verify_chain_hypotheses, check_cut
from heisencut.errors import CapExceededError
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, write_output, exit_with_verdict
from heisencut.utils.io_utils import read_json

# Closures inside matrices larger than this take minutes
SLOW_CHAIN_DIM = 16

@click.command()
@click.option('--spec', 'spec_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Chain JSON file.')
@click.option('--cut', required=True, type=int, help='Number of leading sites used as the controller.')
@click.option('--slow', is_flag=True, help=f'Allow closures of chains larger than {SLOW_CHAIN_DIM} dimensions.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def chain_check(ctx, spec_file, cut, slow, output_file):
    """
    Check whether the first M sites of a chain control the whole chain.

    Prints the per-coupling hypothesis checks, then closes the controller
    operators together with the chain Hamiltonian. Exit code 0 when the closure
    is the full traceless algebra of the chain, 1 otherwise.

    Examples:
        \b
        $ heisencut chain-check --spec chain.json --cut 1
        $ heisencut chain-check --spec chain3.json --cut 1 --slow
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    console.rule("Chain controllability")

    spec = ChainSpec.from_json(read_json(spec_file))
    if spec.dim > SLOW_CHAIN_DIM and not slow:
        raise CapExceededError(
            f"Chain dimension {spec.dim} needs a long closure; rerun with --slow or use a smaller chain."
        )

    hypotheses = verify_chain_hypotheses(spec, rel_tol=config.rel_tol)
    hypotheses.print_on_screen(console=console)

    dim_cap = max(config.dim_cap, MAX_DIM_CAP) if slow else config.dim_cap
    report = check_cut(spec, cut, dim_cap=dim_cap, rel_tol=config.rel_tol)
    console.print(Panel(
        f"Closure dimension: [bold]{report.closure_dim}[/bold] of {report.target_dim}",
        title=f"Cut after site {cut}", style="cyan"
    ))

    write_output({"hypotheses": hypotheses.json(), **report.json()}, 'chain-check', config, output_file)
    exit_with_verdict(report.controllable, label="Controllable")
