# This script handles the closure command.
# Created On: Oct 19, 2026
#
import click
from rich.panel import Panel

from heisencut.core.operators import HermitianOperator
from heisencut.core.closure import lie_closure, star_closure
from heisencut.errors import FormatError
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, write_output
from heisencut.utils.io_utils import read_json, matrix_from_json


@click.command()
@click.option('--kind', type=click.Choice(['lie', 'star']), default='lie', help='Close under i[.,.] (lie) or under products (star).')
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='JSON list of generator matrices.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def closure(ctx, kind, input_file, output_file):
    """
    Close a set of Hermitian generators into a Lie algebra or a *-algebra.

    The input is a list of matrix objects, or {"generators": [...]}.

    Examples:
        \b
        $ heisencut closure --kind lie --in generators.json --out basis.json
        $ heisencut closure --kind star --in generators.json
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    console.rule(f"{kind.capitalize()} closure")

    data = read_json(input_file)
    if isinstance(data, dict):
        data = data.get("generators")
    if not isinstance(data, list) or not data:
        raise FormatError("Generators file must hold a non-empty list of matrices.")
    generators = [HermitianOperator(matrix_from_json(g)) for g in data]

    if kind == 'lie':
        report = lie_closure(generators, rel_tol=config.rel_tol)
        payload = report.json()
        dimension = report.dim
    else:
        space = star_closure(generators, rel_tol=config.rel_tol)
        payload = {"dimension": space.dim, "subspace": space.json()}
        dimension = space.dim

    console.print(Panel(f"Closure dimension: [bold]{dimension}[/bold]", title=f"{kind} closure", style="cyan"))
    write_output({"kind": kind, **payload}, 'closure', config, output_file)
