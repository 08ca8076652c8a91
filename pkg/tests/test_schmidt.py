# tests/test_schmidt.py
# Created On: Oct 19, 2026
#
import numpy as np
import pytest

from heisencut.core.operators import HermitianOperator, PAULI_X, PAULI_Y, PAULI_Z, partial_trace
from heisencut.core.schmidt import BipartiteHamiltonian, schmidt_decompose, strip_locals, from_terms
from heisencut.errors import DimensionMismatchError, FormatError
from heisencut.utils.general_utils import random_hermitian
from heisencut.utils.io_utils import matrix_to_json


def test_xy_coupling_has_two_equal_terms(xy_matrix):
    h = schmidt_decompose(HermitianOperator(xy_matrix), 2, 2)
    assert len(h.interaction_terms) == 2
    np.testing.assert_allclose(h.singular_values, [2.0, 2.0], atol=1e-12)
    assert h.is_stripped()
    np.testing.assert_allclose(h.rebuild(), xy_matrix, atol=1e-12)


def test_local_parts_are_separated():
    full = (
        0.5 * np.kron(PAULI_Z, np.eye(2)) + 0.3 * np.kron(np.eye(2), PAULI_X)
        + 2.0 * np.eye(4) + np.kron(PAULI_X, PAULI_Z)
    )
    h = schmidt_decompose(HermitianOperator(full), 2, 2)
    assert h.scalar == pytest.approx(2.0)
    np.testing.assert_allclose(h.local_c.matrix, 0.5 * PAULI_Z, atol=1e-12)
    np.testing.assert_allclose(h.local_s.matrix, 0.3 * PAULI_X, atol=1e-12)
    assert len(h.interaction_terms) == 1
    assert not h.is_stripped()


@pytest.mark.parametrize("dim_c, dim_s", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_random_hamiltonian_is_rebuilt(rng, dim_c, dim_s):
    full = random_hermitian(dim_c * dim_s, rng)
    h = schmidt_decompose(HermitianOperator(full), dim_c, dim_s)
    np.testing.assert_allclose(h.rebuild(), full, atol=1e-12)

    sigma = np.array(h.singular_values)
    assert np.all(np.diff(sigma) <= 1e-12)
    a_stack = np.array([a.matrix for a in h.a_side])
    gram = np.einsum('aij,bji->ab', a_stack, a_stack).real
    np.testing.assert_allclose(gram, np.diag(sigma), atol=1e-10)
    for a, b in h.interaction_terms:
        assert a.is_traceless() and b.is_traceless()
        assert a.norm() == pytest.approx(b.norm())


def test_many_random_hamiltonians(rng):
    shapes = [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3)]
    for k in range(100):
        dim_c, dim_s = shapes[k % len(shapes)]
        full = random_hermitian(dim_c * dim_s, rng)
        h = schmidt_decompose(HermitianOperator(full), dim_c, dim_s)
        np.testing.assert_allclose(h.rebuild(), full, atol=1e-10)
        # tr_s(H - 1 (x) B - c 1) = dim_s A
        rest = full - np.kron(np.eye(dim_c), h.local_s.matrix) - h.scalar * np.eye(dim_c * dim_s)
        np.testing.assert_allclose(
            partial_trace(rest, (dim_c, dim_s), keep=0), dim_s * h.local_c.matrix, atol=1e-10
        )


def test_sign_gauge():
    h = from_terms([(-PAULI_Z, PAULI_Z)], 2, 2)
    (a, b), = h.interaction_terms
    np.testing.assert_allclose(a.matrix, PAULI_Z, atol=1e-12)
    np.testing.assert_allclose(b.matrix, -PAULI_Z, atol=1e-12)


def test_from_terms(gm):
    h = from_terms([(gm[2], PAULI_Z)], 3, 2)
    assert h.dim == 6
    np.testing.assert_allclose(h.singular_values, [2.0], atol=1e-12)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        schmidt_decompose(HermitianOperator(np.eye(5)), 2, 2)


def test_strip_locals(rng):
    h = strip_locals(schmidt_decompose(HermitianOperator(random_hermitian(6, rng)), 3, 2))
    assert h.is_stripped()
    assert h.scalar == 0.0
    expected = sum(np.kron(a.matrix, b.matrix) for a, b in h.interaction_terms)
    np.testing.assert_allclose(h.full.matrix, expected, atol=1e-12)
    # stripping is idempotent
    again = schmidt_decompose(h.full, 3, 2)
    assert again.locals_norm() < 1e-10


def test_pure_local_hamiltonian_has_no_terms():
    h = schmidt_decompose(HermitianOperator(np.kron(PAULI_Y, np.eye(3))), 2, 3)
    assert h.interaction_terms == ()
    assert strip_locals(h).full.norm() == 0.0


class TestJson:

    def test_full_document(self, xy_matrix, hamiltonian_json):
        h = BipartiteHamiltonian.from_json(hamiltonian_json(xy_matrix, 2, 2))
        data = h.json()
        assert data["dim_c"] == 2 and len(data["interaction_terms"]) == 2

    def test_bare_matrix_needs_dimensions(self, xy_matrix):
        with pytest.raises(FormatError):
            BipartiteHamiltonian.from_json(matrix_to_json(xy_matrix))
        h = BipartiteHamiltonian.from_json(matrix_to_json(xy_matrix), dim_c=2, dim_s=2)
        assert h.dim == 4
