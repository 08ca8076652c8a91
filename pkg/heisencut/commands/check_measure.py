# This script handles the check-measure command.
# Created On: Oct 19, 2026
#
import click

from heisencut.core.operators import HermitianOperator
from heisencut.core.interface import check_implementable
from heisencut.utils.cli_utils import console, handle_errors, get_config, load_hamiltonian, exit_with_verdict
from heisencut.utils.io_utils import read_json


@click.command()
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Hamiltonian JSON file.')
@click.option('--observable', required=True, type=click.Path(exists=True, dir_okay=False), help='Observable (matrix JSON) on the system.')
@click.pass_context
@handle_errors
def check_measure(ctx, input_file, observable):
    """
    Decide whether an observable is CQND-measurable (equivalently, whether its
    one-parameter group is implementable) through the controller.

    Example:
        \b
        $ heisencut check-measure --in h.json --observable a.json
    """
    config = get_config(ctx)
    console.rule("CQND measurability")

    h = load_hamiltonian(input_file)
    a = HermitianOperator.from_json(read_json(observable))
    verdict, residual = check_implementable(a, h, rel_tol=config.rel_tol, member_tol=config.member_tol)
    console.print(f"Membership residual in B: [bold]{residual:.3e}[/bold]")
    exit_with_verdict(verdict, label="Measurable")
