# This script handles the interface command.
# Created On: Oct 19, 2026
#
from dataclasses import replace

import click
from rich.panel import Panel

from heisencut.core.interface import interface_bruteforce, interface_structural, MIN_CONTROLLER_DIM
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, load_hamiltonian, write_output


@click.command()
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Hamiltonian JSON file.')
@click.option('--brute-force', is_flag=True, help='Also compute the interface algebra by direct closure.')
@click.option('--cap', type=int, help='Largest joint dimension for the brute-force closure.')
@click.option('--strip', is_flag=True, help='Strip local terms before the analysis.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def interface(ctx, input_file, brute_force, cap, strip, output_file):
    """
    Compute the interface algebra of a coupling.

    With dim_c >= 3 the structural form W (x) B + 1 (x) L is returned and, with
    --brute-force, checked against the direct closure. With dim_c = 2 only the
    brute-force closure is meaningful and --brute-force is required.

    Examples:
        \b
        $ heisencut interface --in h.json --out analysis.json
        $ heisencut interface --in xy2x2.json --brute-force
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    if cap is not None:
        config = replace(config, dim_cap=cap)
        config.validate()
    dim_cap = config.dim_cap
    console.rule("Interface algebra")

    h = load_hamiltonian(input_file, strip=strip)

    if h.dim_c < MIN_CONTROLLER_DIM and brute_force:
        space = interface_bruteforce(h, dim_cap, config.rel_tol)
        console.print(Panel(
            f"Brute-force dimension: [bold]{space.dim}[/bold]\n"
            f"Structure theorem inapplicable: dim_c = {h.dim_c}",
            title="Interface algebra", style="yellow"
        ))
        payload = {
            "dim_c": h.dim_c,
            "dim_s": h.dim_s,
            "brute_force_dimension": space.dim,
            "structural_dimension": None,
            "note": f"Structure theorem inapplicable: dim_c = {h.dim_c}",
            "brute_force": space.json(),
        }
        write_output(payload, 'interface', config, output_file)
        return

    analysis = interface_structural(
        h, dim_cap=dim_cap, brute_force=brute_force, rel_tol=config.rel_tol, member_tol=config.member_tol
    )
    analysis.print_on_screen(console=console)
    write_output(analysis.json(), 'interface', config, output_file)
