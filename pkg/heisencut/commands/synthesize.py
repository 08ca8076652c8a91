# This script handles the synthesize command.
# Created On: Oct 19, 2026
#
import click
from rich.table import Table

from heisencut.core.operators import HermitianOperator
from heisencut.core.schmidt import BipartiteHamiltonian, strip_locals
from heisencut.core.synthesis import weyl_group, synthesize_inversion, trotter_procedure, commutator_procedure
from heisencut.errors import FormatError
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, write_output
from heisencut.utils.io_utils import read_json, matrix_from_json


def _synthesize(kind, data):
    if kind == 'invert':
        h = BipartiteHamiltonian.from_json(data["hamiltonian"])
        if data.get("strip", False):
            h = strip_locals(h)
        return synthesize_inversion(h, weyl_group(h.dim_c), float(data["eps"]))
    if kind == 'trotter':
        terms = [(HermitianOperator(matrix_from_json(t["G"])), float(t.get("c", 1.0))) for t in data["terms"]]
        return trotter_procedure(terms, int(data["m"]), order=int(data.get("order", 1)))
    a = HermitianOperator(matrix_from_json(data["A"]))
    b = HermitianOperator(matrix_from_json(data["B"]))
    return commutator_procedure(a, b, int(data["m"]), order=int(data.get("order", 1)))


@click.command()
@click.option('--kind', required=True, type=click.Choice(['invert', 'trotter', 'commutator']), help='Which synthesiser to run.')
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Synthesis spec JSON file.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def synthesize(ctx, kind, input_file, output_file):
    """
    Build a control sequence and report its error against the target unitary.

    \b
    Spec file per kind:
      invert:     {"hamiltonian": {"dim_c", "dim_s", "full"}, "eps": 0.1}
      trotter:    {"terms": [{"G": matrix, "c": 1.0}, ...], "m": 16, "order": 1}
      commutator: {"A": matrix, "B": matrix, "m": 16, "order": 1}

    Example:
        \b
        $ heisencut synthesize --kind invert --in spec.json --out proc.json
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    console.rule(f"Synthesis: {kind}")

    data = read_json(input_file)
    if not isinstance(data, dict):
        raise FormatError("Synthesis spec must be a JSON object.")
    result = _synthesize(kind, data)

    table = Table(show_header=False)
    table.add_row("Error (phase aligned, spectral norm)", f"{result.error:.3e}")
    if result.error_bound is not None:
        table.add_row("Error bound", f"{result.error_bound:.3e}")
    if result.t_p is not None:
        table.add_row("t_p", f"{result.t_p:.6g}")
    if result.procedure is not None:
        table.add_row("Steps", str(len(result.procedure)))
    console.print(table)

    write_output({"kind": kind, **result.json()}, 'synthesize', config, output_file)
