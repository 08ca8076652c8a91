# This script handles the decompose command.
# Created On: Oct 19, 2026
#
import click

from heisencut.core.schmidt import strip_locals
from heisencut.utils.cli_utils import console, quiet_when_piping, handle_errors, get_config, load_hamiltonian, write_output


@click.command()
@click.option('--in', 'input_file', required=True, type=click.Path(exists=True, dir_okay=False), help='Hamiltonian JSON file.')
@click.option('--dim-c', type=int, help='Controller dimension (if not in the file).')
@click.option('--dim-s', type=int, help='System dimension (if not in the file).')
@click.option('--strip', is_flag=True, help='Drop the local terms and the scalar part.')
@click.option('--out', 'output_file', type=click.Path(dir_okay=False), help='Output file (default: stdout).')
@click.pass_context
@handle_errors
def decompose(ctx, input_file, dim_c, dim_s, strip, output_file):
    """
    Decompose a bipartite Hamiltonian into sum_j A_j (x) B_j + A (x) 1 + 1 (x) B + c 1.

    Example:
        \b
        $ heisencut decompose --dim-c 2 --dim-s 2 --in h.json --out decomp.json
    """
    config = get_config(ctx)
    quiet_when_piping(output_file)
    console.rule("Operator-Schmidt decomposition")

    h = load_hamiltonian(input_file, dim_c, dim_s)
    if strip:
        h = strip_locals(h)
    h.print_on_screen(console=console)

    write_output(h.json(), 'decompose', config, output_file)
