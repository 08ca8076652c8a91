# This script handles the compose command.
# Created On: Oct 19, 2026
#
import click
from rich.panel import Panel

from heisencut.core.measurement import scheme_sum, scheme_commutator, scheme_jordan, max_pointer_overlap
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, write_output
from heisencut.utils.io_utils import read_json, matrix_from_json

BUILDERS = {
    'sum': scheme_sum,
    'commutator': scheme_commutator,
    'jordan': scheme_jordan,
}


def load_measurement_hamiltonian(file_path):
    """``{"E": matrix, "observable": matrix}`` describing ``E (x) A``."""
    data = read_json(file_path)
    return matrix_from_json(data["E"]), matrix_from_json(data["observable"])


@click.command()
@click.option('--op', required=True, type=click.Choice(sorted(BUILDERS)), help='Composite observable to measure.')
@click.option('--a', 'a_file', required=True, type=click.Path(exists=True, dir_okay=False), help='First measurement Hamiltonian.')
@click.option('--b', 'b_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Second measurement Hamiltonian.')
@click.option('--m', default=64, show_default=True, help='Product-formula truncation.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def compose(ctx, op, a_file, b_file, m, output_file):
    """
    Build a measurement scheme for A + B, i[A, B] or AB + BA from the
    measurement Hamiltonians E (x) A and F (x) B.

    Example:
        \b
        $ heisencut compose --op jordan --a ha.json --b hb.json --m 64 --out scheme.json
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    console.rule(f"Composite measurement: {op}")

    scheme = BUILDERS[op](load_measurement_hamiltonian(a_file), load_measurement_hamiltonian(b_file), m)
    console.print(Panel(
        f"Outcomes: [bold]{len(scheme.projections)}[/bold]\n"
        f"Eigenvalues: {', '.join(f'{mu:+.6g}' for mu in scheme.eigenvalues)}\n"
        f"Evolution time: {scheme.evolution_time:.6g}\n"
        f"Largest pointer overlap: {max_pointer_overlap(scheme):.2e}",
        title="Scheme", style="cyan"
    ))
    write_output(scheme.json(), 'compose', config, output_file)
