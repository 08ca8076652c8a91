# tests/test_operators.py
# Created On: Oct 19, 2026
#
import numpy as np
import pytest
from scipy import linalg

from heisencut.core.operators import (
    HermitianOperator, UnitaryOperator, OperatorSubspace, SpanBuilder,
    hs_inner, traceless_part, tensor, tensor_unitary, expm, commutator, anticommutator,
    lie_bracket, jordan_product, partial_trace, embed, spectral_norm, phase_aligned_distance,
    gell_mann_basis, hermitian_basis, hermitian_to_real, real_to_hermitian, orthonormal_extend,
    PAULI_X, PAULI_Y, PAULI_Z,
)
from heisencut.errors import DimensionMismatchError, HermiticityError, UnitarityError
from heisencut.utils.general_utils import random_hermitian, random_unitary


class TestHermitianOperator:

    def test_rejects_non_hermitian(self):
        with pytest.raises(HermiticityError):
            HermitianOperator(np.array([[0, 1], [0, 0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            HermitianOperator(np.zeros((2, 3)))

    def test_symmetrises_small_deviation(self):
        m = PAULI_X.copy()
        m[0, 1] += 1e-12
        op = HermitianOperator(m)
        np.testing.assert_array_equal(op.matrix, op.matrix.conj().T)

    def test_matrix_is_read_only(self):
        op = HermitianOperator(PAULI_Z)
        with pytest.raises(ValueError):
            op.matrix[0, 0] = 5

    def test_arithmetic(self):
        x, z = HermitianOperator(PAULI_X), HermitianOperator(PAULI_Z)
        total = 2 * x - z / 2
        np.testing.assert_allclose(total.matrix, 2 * PAULI_X - PAULI_Z / 2)
        assert (-x).allclose(HermitianOperator(-PAULI_X))
        with pytest.raises(HermiticityError):
            x * 1j
        with pytest.raises(DimensionMismatchError):
            x + HermitianOperator.identity(3)

    def test_trace_and_norm(self):
        op = HermitianOperator(np.diag([1.0, 2.0, 3.0]))
        assert op.trace() == pytest.approx(6.0)
        assert op.norm() == pytest.approx(np.sqrt(14.0))
        assert not op.is_traceless()
        assert traceless_part(op).is_traceless()


class TestUnitaryOperator:

    def test_rejects_non_unitary(self):
        with pytest.raises(UnitarityError):
            UnitaryOperator(2 * np.eye(2))

    def test_dagger_inverts(self, rng):
        u = UnitaryOperator(random_unitary(3, rng))
        np.testing.assert_allclose((u @ u.dagger()).matrix, np.eye(3), atol=1e-12)

    def test_tensor_unitary(self, rng):
        u, v = random_unitary(2, rng), random_unitary(3, rng)
        w = tensor_unitary(UnitaryOperator(u), UnitaryOperator(v))
        assert w.dim == 6
        np.testing.assert_allclose(w.matrix, np.kron(u, v))


class TestElementaryOperations:

    def test_hs_inner(self):
        assert hs_inner(HermitianOperator(PAULI_X), HermitianOperator(PAULI_X)).real == pytest.approx(2.0)
        assert abs(hs_inner(HermitianOperator(PAULI_X), HermitianOperator(PAULI_Y))) < 1e-15

    def test_tensor_puts_controller_first(self):
        t = tensor(HermitianOperator(PAULI_Z), HermitianOperator(np.eye(3)))
        np.testing.assert_allclose(t.matrix, np.kron(PAULI_Z, np.eye(3)))

    def test_expm_matches_scipy(self, rng):
        h = HermitianOperator(random_hermitian(4, rng))
        u = expm(h, 0.37)
        np.testing.assert_allclose(u.matrix, linalg.expm(0.37j * h.matrix), atol=1e-12)

    def test_brackets(self):
        np.testing.assert_allclose(lie_bracket(HermitianOperator(PAULI_X), HermitianOperator(PAULI_Y)).matrix, -2 * PAULI_Z)
        np.testing.assert_allclose(commutator(PAULI_X, PAULI_Y), 2j * PAULI_Z)
        np.testing.assert_allclose(anticommutator(PAULI_X, PAULI_Y), np.zeros((2, 2)), atol=1e-15)
        np.testing.assert_allclose(anticommutator(PAULI_X, PAULI_X), 2 * np.eye(2))
        np.testing.assert_allclose(
            jordan_product(HermitianOperator(PAULI_X), HermitianOperator(PAULI_X)).matrix, np.eye(2)
        )

    def test_anticommutator_polarisation(self, rng):
        for _ in range(50):
            a, b = random_hermitian(3, rng), random_hermitian(3, rng)
            square = (a + b) @ (a + b) - a @ a - b @ b
            np.testing.assert_allclose(anticommutator(a, b), square, atol=1e-10)
            jordan = jordan_product(HermitianOperator(a), HermitianOperator(b))
            np.testing.assert_allclose(jordan.matrix, square / 2, atol=1e-10)

    def test_partial_trace(self, rng):
        a, b = random_hermitian(2, rng), random_hermitian(3, rng)
        joint = np.kron(a, b)
        np.testing.assert_allclose(partial_trace(joint, (2, 3), keep=0), a * np.trace(b), atol=1e-12)
        np.testing.assert_allclose(partial_trace(joint, (2, 3), keep=1), b * np.trace(a), atol=1e-12)

    def test_embed(self):
        np.testing.assert_allclose(embed(PAULI_Z, 1, (3, 2)), np.kron(np.eye(3), PAULI_Z))
        with pytest.raises(DimensionMismatchError):
            embed(PAULI_Z, 0, (3, 2))

    def test_spectral_norm(self):
        assert spectral_norm(3 * PAULI_Z) == pytest.approx(3.0)

    def test_phase_aligned_distance_ignores_global_phase(self, rng):
        u = random_unitary(3, rng)
        assert phase_aligned_distance(u, np.exp(0.7j) * u) < 1e-12
        assert phase_aligned_distance(np.eye(2), PAULI_Z) == pytest.approx(2.0)


class TestStandardBases:

    def test_gell_mann_trace_orthogonality(self, gm):
        gram = np.array([[np.trace(a @ b).real for b in gm] for a in gm])
        np.testing.assert_allclose(gram, 2 * np.eye(8), atol=1e-12)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_gell_mann_basis_is_orthonormal_and_traceless(self, dim):
        basis = gell_mann_basis(dim)
        assert basis.shape == (dim * dim - 1, dim, dim)
        frame = hermitian_to_real(basis)
        np.testing.assert_allclose(frame @ frame.T, np.eye(dim * dim - 1), atol=1e-12)
        np.testing.assert_allclose(np.trace(basis, axis1=1, axis2=2), 0, atol=1e-12)

    def test_hermitian_basis_spans_everything(self):
        assert OperatorSubspace.span(hermitian_basis(3), 3).dim == 9


class TestRealCoordinates:

    def test_dot_product_is_hs_inner_product(self, rng):
        x, y = random_hermitian(3, rng), random_hermitian(3, rng)
        assert hermitian_to_real(x) @ hermitian_to_real(y) == pytest.approx(np.trace(x @ y).real)

    def test_inverse_map(self, rng):
        x = random_hermitian(4, rng)
        np.testing.assert_allclose(real_to_hermitian(hermitian_to_real(x), 4), x, atol=1e-15)


class TestSpanBuilder:

    def test_extend_rejects_dependent(self):
        builder = SpanBuilder(2)
        assert builder.extend(PAULI_X)[0]
        accepted, norm = builder.extend(2 * PAULI_X)
        assert not accepted and norm < 1e-12
        assert builder.extend(PAULI_Y)[0]
        assert builder.size == 2

    def test_extend_many_keeps_order(self):
        builder = SpanBuilder(2)
        accepted = builder.extend_many(np.array([PAULI_X, PAULI_Y, PAULI_X + PAULI_Y, PAULI_Z]))
        assert accepted == [0, 1, 3]

    def test_grows_past_capacity(self):
        builder = SpanBuilder(5, capacity=2)
        builder.extend_many(hermitian_basis(5))
        assert builder.size == 25


class TestOperatorSubspace:

    def test_projection_and_residual(self):
        space = OperatorSubspace.span([PAULI_X, PAULI_Y], 2)
        assert space.dim == 2
        np.testing.assert_allclose(space.project(PAULI_X + PAULI_Z), PAULI_X, atol=1e-12)
        assert space.residual(PAULI_X + 3 * PAULI_Y) < 1e-12
        assert space.residual(PAULI_Z) == pytest.approx(1.0)

    def test_rejects_non_orthonormal_stack(self):
        with pytest.raises(ValueError):
            OperatorSubspace(2, np.array([PAULI_X, PAULI_X]))

    def test_json(self):
        space = OperatorSubspace.span([PAULI_X, PAULI_Z], 2)
        data = space.json()
        assert data["dimension"] == 2
        again = OperatorSubspace.from_json(data)
        assert again.residual(PAULI_Z) < 1e-12

    def test_orthonormal_extend(self):
        space = OperatorSubspace.empty(2)
        space, accepted, _ = orthonormal_extend(space, HermitianOperator(PAULI_X))
        assert accepted and space.dim == 1
        space, accepted, _ = orthonormal_extend(space, HermitianOperator(-3 * PAULI_X))
        assert not accepted and space.dim == 1
        with pytest.raises(DimensionMismatchError):
            orthonormal_extend(space, HermitianOperator.identity(3))
