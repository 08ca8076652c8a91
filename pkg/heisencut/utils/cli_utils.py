# /utils/cli_utils.py
# Created On: Oct 19, 2026
#
import functools
import json
import sys
from datetime import date

import click
from rich.console import Console
from rich.table import Table
from rich.panel import Panel

from heisencut.version import __version__
from heisencut.config import APP_NAME, APP_DESCRIPTION, RunConfig
from heisencut.errors import HeisencutError
from heisencut.core.schmidt import BipartiteHamiltonian, strip_locals
from heisencut.utils.io_utils import read_json, dump_json, build_metadata

# Human-readable output; errors go to stderr so stdout can carry a bare JSON document
console = Console()
err_console = Console(stderr=True)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


# Function to print basic information
def print_basic_info():
    # Create title with centered alignment
    title = Panel(f"{APP_NAME} - {APP_DESCRIPTION}", title=f"{APP_NAME}", title_align="center", style="bold white on blue", border_style="bright_blue")

    # Create information table with centered alignment
    info_table = Table(show_header=False)
    info_table.add_row("[center]Version[/center]", f"[center]{__version__}[/center]")
    info_table.add_row("[center]Today's Date[/center]", f"[center]{date.today().strftime('%B %d, %Y')}[/center]")

    console.print(title)
    console.print(info_table)
    console.print("\n")


def print_error(message):
    err_console.print(Panel(f"[red]{message}[/red]", title="Error", style="bold red"))


def handle_errors(func):
    """
    Render input and invariant failures as a red panel and exit with code 2.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HeisencutError as e:
            print_error(f"{type(e).__name__}: {e}")
        except json.JSONDecodeError as e:
            print_error(f"Malformed JSON: {e}")
        except KeyError as e:
            print_error(f"Missing key in input: {e}")
        except ValueError as e:
            print_error(f"Invalid value: {e}")
        sys.exit(EXIT_USAGE)
    return wrapper


def exit_with_verdict(verdict, label="Verdict"):
    """Print the verdict and exit 0 (true) or 1 (false)."""
    style = "bold green" if verdict else "bold red"
    console.print(Panel(f"{label}: [bold]{str(bool(verdict)).upper()}[/bold]", style=style))
    sys.exit(EXIT_TRUE if verdict else EXIT_FALSE)


def quiet_when_piping(output_file):
    """Silence the tables and panels when the JSON document is written to stdout."""
    console.quiet = output_file is None


def get_config(ctx):
    """The ``RunConfig`` stored on the click context by the command group."""
    ctx = ctx or click.get_current_context(silent=True)
    if ctx is not None and isinstance(ctx.obj, RunConfig):
        return ctx.obj
    return RunConfig.from_env()


def write_output(payload, command, config, output_file=None):
    """
    Attach the metadata block and write ``payload`` to ``output_file`` or stdout.
    """
    payload = {"metadata": build_metadata(command, config.seed), **payload}
    text = dump_json(payload, output_file)
    if output_file is None:
        click.echo(text)
    else:
        console.print(f"Wrote [bold]{output_file}[/bold]")
    return payload


def load_hamiltonian(file_path, dim_c=None, dim_s=None, strip=False):
    """
    Read a Hamiltonian file (``{"dim_c", "dim_s", "full"}`` or a bare matrix
    plus explicit dimensions) and decompose it.
    """
    h = BipartiteHamiltonian.from_json(read_json(file_path), dim_c=dim_c, dim_s=dim_s)
    return strip_locals(h) if strip else h
