# This script handles the check-control command.
# Created On: Oct 19, 2026
#
import click

from heisencut.core.interface import check_universal_control
from heisencut.utils.cli_utils import console, handle_errors, get_config, load_hamiltonian, exit_with_verdict


@click.command()
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Hamiltonian JSON file.')
@click.pass_context
@handle_errors
def check_control(ctx, input_file):
    """
    Decide whether the coupling enables universal control of the system.

    Exit code 0 when the system-side factors generate every operator on the
    system, 1 otherwise.

    Example:
        \b
        $ heisencut check-control --in xy2x2.json
    """
    config = get_config(ctx)
    console.rule("Universal control")

    h = load_hamiltonian(input_file)
    verdict = check_universal_control(h, rel_tol=config.rel_tol)
    exit_with_verdict(verdict, label="Universal control")
