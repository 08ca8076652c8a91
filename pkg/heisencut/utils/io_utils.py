# /utils/io_utils.py
# Created On: Oct 19, 2026
#
"""
Low level JSON codecs shared by every command.

A matrix is stored as ``{"dim": n, "re": [[...]], "im": [[...]]}`` (row-major),
a vector as ``{"dim": n, "re": [...], "im": [...]}``.
"""
import json
from pathlib import Path

import numpy as np

from heisencut.errors import FormatError
from heisencut.version import __version__
from heisencut.utils.general_utils import utcnow, convert_utc_to_local_str


def matrix_to_json(matrix):
    matrix = np.asarray(matrix, dtype=complex)
    return {
        "dim": int(matrix.shape[0]),
        "re": matrix.real.tolist(),
        "im": matrix.imag.tolist(),
    }


def matrix_from_json(data):
    """
    Decode a matrix JSON object into a complex square ``ndarray``.

    Raises:
        FormatError: if keys are missing or the shape disagrees with ``dim``.
    """
    try:
        dim = int(data["dim"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"Malformed matrix JSON: {e}") from e

    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise FormatError(f"Matrix JSON declares dim={dim} but carries arrays of shape {re.shape} and {im.shape}.")
    return re + 1j * im


def vector_to_json(vector):
    vector = np.asarray(vector, dtype=complex).ravel()
    return {"dim": int(vector.size), "re": vector.real.tolist(), "im": vector.imag.tolist()}


def vector_from_json(data):
    try:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
        dim = int(data.get("dim", re.size))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"Malformed vector JSON: {e}") from e

    if re.shape != (dim,) or im.shape != (dim,):
        raise FormatError(f"Vector JSON declares dim={dim} but carries arrays of shape {re.shape} and {im.shape}.")
    return re + 1j * im


def read_json(file_path):
    """Load a JSON document, mapping decoding problems to ``FormatError``."""
    try:
        with open(file_path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError(f"{file_path}: not valid JSON ({e.msg} at line {e.lineno}).") from e


def build_metadata(command, seed=None):
    return {
        "command": command,
        "version": __version__,
        "seed": seed,
        "generated": convert_utc_to_local_str(dt=utcnow()),
    }


def dump_json(payload, output_file=None):
    """
    Write ``payload`` to ``output_file`` (or return the text when it is None).

    Returns:
        str: the serialised document.
    """
    text = json.dumps(payload, indent=4)
    if output_file is not None:
        output_file = Path(output_file)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(text)
    return text
