# This script handles the simulate-measurement command.
# Created On: Oct 19, 2026
#
import click

from heisencut.core.operators import HermitianOperator
from heisencut.core.measurement import (
    MeasurementScheme, build_cqnd_scheme, simulate_measurement as run_scheme, cqnd_check, pointer_overlaps
)
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, write_output
from heisencut.utils.io_utils import read_json, vector_from_json, matrix_to_json


def load_scheme(data):
    """A full scheme object, or ``{"observable": matrix, "dim_c": n}`` built on the fly."""
    if "effective_h" in data:
        return MeasurementScheme.from_json(data)
    return build_cqnd_scheme(HermitianOperator.from_json(data["observable"]), int(data["dim_c"]))


@click.command()
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Scheme JSON file.')
@click.option('--state', 'state_file', required=True, type=click.Path(exists=True, dir_okay=False), help='System state (vector JSON).')
@click.option('--n-times', default=20, show_default=True, help='Intermediate times for the disturbance check.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def simulate_measurement(ctx, input_file, state_file, n_times, output_file):
    """
    Run a measurement scheme on a system state.

    Reports outcome probabilities against the Born rule, the pointer overlap
    matrix and the largest disturbance of eigenstates at intermediate times.

    Example:
        \b
        $ heisencut simulate-measurement --in scheme.json --state psi.json --out result.json
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    console.rule("Measurement simulation")

    scheme = load_scheme(read_json(input_file))
    psi = vector_from_json(read_json(state_file))
    result = run_scheme(scheme, psi)
    result.print_on_screen(scheme.eigenvalues, console=console)

    disturbance = cqnd_check(scheme, scheme.observable, n_times)
    console.print(f"Largest intermediate disturbance: [bold]{disturbance:.3e}[/bold]")

    payload = {
        "kind": scheme.kind,
        "eigenvalues": list(scheme.eigenvalues),
        **result.json(),
        "pointer_overlaps": matrix_to_json(pointer_overlaps(scheme)),
        "max_disturbance": disturbance,
    }
    write_output(payload, 'simulate-measurement', config, output_file)
