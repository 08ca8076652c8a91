# tests/conftest.py
# Created On: Oct 19, 2026
#
import json

import numpy as np
import pytest

from heisencut.core.operators import PAULI_X, PAULI_Y, PAULI_Z, gell_mann_matrices
from heisencut.utils.general_utils import make_rng
from heisencut.utils.io_utils import matrix_to_json


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run the long chain closures")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def paulis():
    return PAULI_X, PAULI_Y, PAULI_Z


@pytest.fixture
def gm():
    return gell_mann_matrices()


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture
def xy_matrix():
    return np.kron(PAULI_X, PAULI_X) + np.kron(PAULI_Y, PAULI_Y)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document under ``tmp_path`` and return its path as a string."""
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)
    return _write


@pytest.fixture
def hamiltonian_json():
    def _build(matrix, dim_c, dim_s):
        return {"dim_c": dim_c, "dim_s": dim_s, "full": matrix_to_json(matrix)}
    return _build
