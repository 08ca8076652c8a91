# cli.py - The main entry point for the CLI.
# Created On: Oct 19, 2026
#
# Run in dev mode: `python -m heisencut.cli [command] [arguments]`
# Installation (locally):
#   `pip install .`
#
import sys

import click
from rich.panel import Panel

from heisencut.commands import (
    decompose, closure, interface, check_control, check_measure, synthesize,
    simulate_measurement, compose, chain_check, selftest, info
)
from heisencut.config import RunConfig
from heisencut.errors import ConfigError
from heisencut.utils.cli_utils import console, print_basic_info, print_error, EXIT_USAGE
from heisencut.utils.log_utils import setup_logging


@click.command()
def help():
    """Displays help about the available commands."""
    print_basic_info()
    console.print(Panel("Help - heisencut CLI", style="green", title="Command List"))

    for command_name, command in cli.commands.items():
        if command is not help:  # Skip displaying help for the help command itself
            console.print(f"\n[bold yellow]{command_name}[/bold yellow]: {command.help}")

@click.group()
@click.option('--rel-tol', type=float, help='Rank/acceptance threshold of the closure engines.')
@click.option('--member-tol', type=float, help='Membership residual threshold.')
@click.option('--cap', type=int, help='Largest joint dimension for brute-force closures.')
@click.option('--seed', type=int, help='Seed for every random draw.')
@click.option('-v', '--verbose', count=True, help='-v for INFO, -vv for DEBUG logging.')
@click.pass_context
def cli(ctx, rel_tol, member_tol, cap, seed, verbose):
    """Controller-only quantum control: interface algebras, synthesis and CQND measurements."""
    try:
        config = RunConfig.from_env(
            rel_tol=rel_tol, member_tol=member_tol, dim_cap=cap, seed=seed, verbosity=verbose or None
        )
    except ConfigError as e:
        print_error(str(e))
        sys.exit(EXIT_USAGE)
    console.quiet = False
    setup_logging(config.verbosity)
    ctx.obj = config

# Add commands to the group
cli.add_command(help, name='help')
cli.add_command(info.info)
cli.add_command(decompose.decompose)
cli.add_command(closure.closure)
cli.add_command(interface.interface)
cli.add_command(check_control.check_control, name='check-control')
cli.add_command(check_measure.check_measure, name='check-measure')
cli.add_command(synthesize.synthesize)
cli.add_command(simulate_measurement.simulate_measurement, name='simulate-measurement')
cli.add_command(compose.compose)
cli.add_command(chain_check.chain_check, name='chain-check')
cli.add_command(selftest.selftest)

if __name__ == '__main__':
    cli()
