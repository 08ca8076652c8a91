# This script handles the info command.
# Created On: Oct 19, 2026
#
import click
from rich.table import Table

from heisencut.config import DOT_ENVPATH, DEV_MODE
from heisencut.utils.cli_utils import console, print_basic_info, get_config


@click.command()
@click.pass_context
def info(ctx):
    """
    Display the active configuration.

    Example:
        \b
        $ heisencut info

    """
    print_basic_info()
    config = get_config(ctx)

    table = Table(title="Run configuration")
    table.add_column("Setting", style="cyan")
    table.add_column("Value", style="green")
    for key, value in config.json().items():
        table.add_row(key, str(value))
    table.add_row("dev_mode", DEV_MODE)
    table.add_row(".env", f"{DOT_ENVPATH} ({'found' if DOT_ENVPATH.exists() else 'absent'})")
    console.print(table)
