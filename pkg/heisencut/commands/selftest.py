# This script handles the selftest command.
# Created On: Oct 19, 2026
#
import click
from rich.panel import Panel

from heisencut.core.selftest import run_selftest
from heisencut.utils.cli_utils import console, handle_errors, get_config, print_basic_info, write_output, exit_with_verdict


@click.command()
@click.option('--slow', is_flag=True, help='Include the three-qutrit chain closure (takes minutes).')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Write the report as JSON.')
@click.pass_context
@handle_errors
def selftest(ctx, slow, output_file):
    """
    Run the acceptance suite end to end and print a pass/fail table.

    Exit code 0 when every criterion passes, 1 otherwise.

    Examples:
        \b
        $ heisencut selftest
        $ heisencut --seed 7 selftest --slow
    """
    config = get_config(ctx)
    print_basic_info()
    console.rule("Self test")

    report = run_selftest(config, slow=slow)
    report.print_on_screen(console=console)

    if output_file:
        write_output(report.json(), 'selftest', config, output_file)
    if report.failures:
        failing = "\n".join(f"{r.number}. {r.name}: {r.measured}" for r in report.failures)
        console.print(Panel(failing, title="Failing criteria", style="bold red"))
    exit_with_verdict(report.all_passed, label="All criteria passed")
