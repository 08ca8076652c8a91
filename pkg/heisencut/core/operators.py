# core/operators.py
# Created On: Oct 19, 2026
#
"""
Dense Hermitian/unitary matrix arithmetic, tensor products, Hilbert-Schmidt
geometry and spectral exponentials. Every other core module is written on top
of the types and helpers defined here.

Conventions:
    - ``hs_inner(X, Y) = trace(X^dagger Y)`` (unnormalised).
    - Tensor products put the controller factor first (left).
    - Hermitian matrices are identified with real vectors of length ``2 n^2``
      (real parts then imaginary parts); the Euclidean product of two such
      vectors is the HS inner product of the matrices.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np
from scipy import linalg
from rich.console import Console
from rich.table import Table

from heisencut.config import HERMITIAN_INPUT_TOL, UNITARY_TOL, REL_TOL
from heisencut.errors import DimensionMismatchError, HermiticityError, UnitarityError
from heisencut.utils.io_utils import matrix_to_json, matrix_from_json

logger = logging.getLogger(__name__)


def _as_square(matrix, what):
    m = np.array(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatchError(f"{what} must be a non-empty square matrix, got shape {m.shape}.")
    return m


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """
    Self-adjoint ``dim x dim`` matrix.

    Inputs are accepted when ``max|M - M^dagger| <= 1e-9 * max(1, ||M||_F)``
    and then symmetrised, so the stored matrix is exactly Hermitian.
    """
    matrix: np.ndarray

    def __post_init__(self):
        m = _as_square(self.matrix, "HermitianOperator")
        deviation = np.max(np.abs(m - m.conj().T))
        if deviation > HERMITIAN_INPUT_TOL * max(1.0, np.linalg.norm(m)):
            raise HermiticityError(f"Matrix is not Hermitian: max |M - M^dagger| = {deviation:.3e}.")
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        object.__setattr__(self, 'matrix', m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def zeros(cls, dim):
        return cls(np.zeros((dim, dim), dtype=complex))

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim, dtype=complex))

    def trace(self):
        return float(np.trace(self.matrix).real)

    def norm(self):
        """Frobenius norm."""
        return float(np.linalg.norm(self.matrix))

    def is_traceless(self, tol=1e-10):
        return abs(self.trace()) <= tol * max(1.0, self.norm())

    def __add__(self, other):
        _check_same_dim(self, other)
        return HermitianOperator(self.matrix + other.matrix)

    def __sub__(self, other):
        _check_same_dim(self, other)
        return HermitianOperator(self.matrix - other.matrix)

    def __neg__(self):
        return HermitianOperator(-self.matrix)

    def __mul__(self, scalar):
        if np.iscomplexobj(scalar) and np.imag(scalar) != 0:
            raise HermiticityError("Only real multiples of a Hermitian operator are Hermitian.")
        return HermitianOperator(float(np.real(scalar)) * self.matrix)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def allclose(self, other, atol=1e-10):
        return self.dim == other.dim and np.allclose(self.matrix, other.matrix, atol=atol)

    def json(self):
        return matrix_to_json(self.matrix)

    @classmethod
    def from_json(cls, data):
        return cls(matrix_from_json(data))

    def print_on_screen(self, title="Operator", console=None):
        console = console or Console()
        table = Table(title=title, show_header=False)
        for row in self.matrix:
            table.add_row(*(f"{z.real:+.4f}{z.imag:+.4f}j" for z in row))
        console.print(table)


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    """Unitary ``dim x dim`` matrix, ``||U^dagger U - 1||_F <= 1e-10``."""
    matrix: np.ndarray

    def __post_init__(self):
        m = _as_square(self.matrix, "UnitaryOperator")
        defect = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))
        if defect > UNITARY_TOL * max(1.0, np.sqrt(m.shape[0])):
            raise UnitarityError(f"Matrix is not unitary: ||U^dagger U - 1||_F = {defect:.3e}.")
        m.setflags(write=False)
        object.__setattr__(self, 'matrix', m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim, dtype=complex))

    def dagger(self):
        return UnitaryOperator(self.matrix.conj().T)

    def __matmul__(self, other):
        _check_same_dim(self, other)
        return UnitaryOperator(self.matrix @ other.matrix)

    def json(self):
        return matrix_to_json(self.matrix)

    @classmethod
    def from_json(cls, data):
        return cls(matrix_from_json(data))


def _check_same_dim(x, y):
    if x.dim != y.dim:
        raise DimensionMismatchError(f"Dimension mismatch: {x.dim} vs {y.dim}.")


def as_array(op):
    return op.matrix if hasattr(op, 'matrix') else np.asarray(op, dtype=complex)


# -- Elementary operations ------------------------------------------------------------


def hs_inner(x, y):
    """
    Hilbert-Schmidt inner product ``trace(X^dagger Y)``.

    Returns:
        complex: real-valued (up to rounding) for Hermitian arguments.
    """
    _check_same_dim(x, y)
    return complex(np.vdot(x.matrix, y.matrix))


def traceless_part(x):
    """``X - (trace(X)/dim) 1``."""
    return HermitianOperator(x.matrix - np.trace(x.matrix) / x.dim * np.eye(x.dim))


def tensor(x, y):
    """Kronecker product with ``x`` (the controller factor) on the left."""
    return HermitianOperator(np.kron(x.matrix, y.matrix))


def tensor_unitary(u, v):
    return UnitaryOperator(np.kron(u.matrix, v.matrix))


def expi_hermitian(matrix, t=1.0):
    """
    ``exp(i t M)`` of a Hermitian ndarray through its eigendecomposition.
    Array level helper for hot loops; ``expm`` is the typed entry point.
    """
    w, v = linalg.eigh(matrix)
    return (v * np.exp(1j * t * w)) @ v.conj().T


def expm(h, t):
    """
    ``e^{iHt}`` via the spectral decomposition of H.

    Returns:
        UnitaryOperator: unitary by construction.
    """
    return UnitaryOperator(expi_hermitian(h.matrix, t))


def commutator(a, b):
    """Raw commutator ``[A, B]`` of two arrays."""
    return a @ b - b @ a


def anticommutator(a, b):
    """Raw anticommutator ``{A, B}`` of two arrays."""
    return a @ b + b @ a


def lie_bracket(x, y):
    """``i[X, Y]``, Hermitian whenever X and Y are."""
    _check_same_dim(x, y)
    return HermitianOperator(1j * commutator(x.matrix, y.matrix))


def jordan_product(x, y):
    """``(XY + YX) / 2``."""
    _check_same_dim(x, y)
    return HermitianOperator((x.matrix @ y.matrix + y.matrix @ x.matrix) / 2)


def partial_trace(matrix, dims, keep):
    """
    Partial trace of an operator on ``H_0 (x) H_1``.

    Args:
        matrix: ``(d0*d1) x (d0*d1)`` array or operator.
        dims (tuple): ``(d0, d1)``.
        keep (int): factor to keep (0 or 1).
    """
    d0, d1 = dims
    m = as_array(matrix).reshape(d0, d1, d0, d1)
    if keep == 0:
        return np.einsum('ikjk->ij', m)
    return np.einsum('kikj->ij', m)


def embed(op, site, dims):
    """Place a local operator on ``site`` of a tensor product with local ``dims``."""
    factors = [np.eye(d, dtype=complex) for d in dims]
    local = as_array(op)
    if local.shape != (dims[site], dims[site]):
        raise DimensionMismatchError(
            f"Operator of shape {local.shape} cannot act on site {site} of dimension {dims[site]}."
        )
    factors[site] = local
    return reduce(np.kron, factors)


def spectral_norm(matrix):
    return float(linalg.norm(as_array(matrix), 2))


def phase_aligned_distance(u, v):
    """
    Spectral-norm distance ``||U - e^{i theta} V||`` with the Frobenius-optimal
    phase ``e^{i theta} = tr(V^dagger U) / |tr(V^dagger U)|``.
    """
    u, v = as_array(u), as_array(v)
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return spectral_norm(u - phase * v)


# -- Standard matrices ---------------------------------------------------------------

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def gell_mann_matrices():
    """The eight standard Gell-Mann matrices, ``tr(l_a l_b) = 2 delta_ab``."""
    l = np.zeros((8, 3, 3), dtype=complex)
    l[0][0, 1] = l[0][1, 0] = 1
    l[1][0, 1], l[1][1, 0] = -1j, 1j
    l[2][0, 0], l[2][1, 1] = 1, -1
    l[3][0, 2] = l[3][2, 0] = 1
    l[4][0, 2], l[4][2, 0] = -1j, 1j
    l[5][1, 2] = l[5][2, 1] = 1
    l[6][1, 2], l[6][2, 1] = -1j, 1j
    l[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return [m for m in l]


def gell_mann_basis(dim):
    """
    HS-orthonormal basis of the traceless Hermitian ``dim x dim`` matrices
    (generalised Gell-Mann: symmetric, antisymmetric, then diagonal).

    Returns:
        numpy.ndarray: stack of shape ``(dim^2 - 1, dim, dim)``.
    """
    mats = []
    for j in range(dim):
        for k in range(j + 1, dim):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[j, k] = sym[k, j] = 1 / np.sqrt(2)
            asym = np.zeros((dim, dim), dtype=complex)
            asym[j, k], asym[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            mats.extend([sym, asym])
    for l in range(1, dim):
        diag = np.zeros(dim)
        diag[:l] = 1
        diag[l] = -l
        mats.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
    return np.array(mats).reshape(len(mats), dim, dim)


def hermitian_basis(dim):
    """``1/sqrt(dim)`` followed by ``gell_mann_basis(dim)``: all Hermitian matrices."""
    return np.concatenate([np.eye(dim, dtype=complex)[None] / np.sqrt(dim), gell_mann_basis(dim)])


# -- Real coordinates and subspaces ---------------------------------------------------


def hermitian_to_real(stack):
    """Map Hermitian matrices (``(..., n, n)``) to real vectors (``(..., 2 n^2)``)."""
    stack = np.asarray(stack)
    flat = stack.reshape(stack.shape[:-2] + (stack.shape[-2] * stack.shape[-1],))
    return np.concatenate([flat.real, flat.imag], axis=-1)


def real_to_hermitian(vectors, dim):
    vectors = np.asarray(vectors)
    half = dim * dim
    m = (vectors[..., :half] + 1j * vectors[..., half:]).reshape(vectors.shape[:-1] + (dim, dim))
    return (m + np.swapaxes(m, -1, -2).conj()) / 2


class SpanBuilder:
    """
    Incremental (re-orthogonalised) Gram-Schmidt over Hermitian matrices.

    Used by the closure engines; ``OperatorSubspace`` is its immutable result.
    A candidate is accepted when its residual exceeds ``rel_tol * ||X||_F``.
    """

    def __init__(self, dim_matrix, rel_tol=REL_TOL, capacity=16):
        self.dim_matrix = dim_matrix
        self.rel_tol = rel_tol
        self._frame = np.zeros((capacity, 2 * dim_matrix * dim_matrix))
        self.size = 0

    @classmethod
    def from_subspace(cls, space, rel_tol=REL_TOL):
        builder = cls(space.dim_matrix, rel_tol, capacity=max(16, space.dim))
        builder._frame[:space.dim] = space.frame
        builder.size = space.dim
        return builder

    @property
    def frame(self):
        return self._frame[:self.size]

    @property
    def stack(self):
        return real_to_hermitian(self.frame, self.dim_matrix)

    def _grow(self):
        bigger = np.zeros((2 * self._frame.shape[0], self._frame.shape[1]))
        bigger[:self.size] = self.frame
        self._frame = bigger

    def _orthogonalise(self, vector):
        frame = self.frame
        for _ in range(2):
            vector = vector - frame.T @ (frame @ vector)
        return vector

    def _append(self, residual, norm):
        if self.size == self._frame.shape[0]:
            self._grow()
        self._frame[self.size] = residual / norm
        self.size += 1

    def extend(self, matrix):
        """
        Offer one Hermitian matrix (ndarray).

        Returns:
            tuple: ``(accepted, residual_norm)``.
        """
        vector = hermitian_to_real(matrix)
        scale = np.linalg.norm(vector)
        if scale == 0:
            return False, 0.0
        residual = self._orthogonalise(vector)
        norm = float(np.linalg.norm(residual))
        if norm > self.rel_tol * scale:
            self._append(residual, norm)
            return True, norm
        return False, norm

    def extend_many(self, stack):
        """
        Offer a batch of Hermitian matrices at once. The batch is projected
        against the current frame in one product; survivors are inserted one by
        one in order.

        Returns:
            list: indices (into ``stack``) of the accepted matrices.
        """
        vectors = hermitian_to_real(stack)
        if len(vectors) == 0:
            return []
        scales = np.linalg.norm(vectors, axis=1)
        frame = self.frame
        residuals = vectors - (vectors @ frame.T) @ frame
        norms = np.linalg.norm(residuals, axis=1)

        accepted = []
        start = self.size
        for idx in np.flatnonzero(norms > self.rel_tol * scales):
            residual = residuals[idx]
            if self.size > start:
                fresh = self._frame[start:self.size]
                residual = residual - fresh.T @ (fresh @ residual)
            # second pass against the whole frame
            residual = residual - self.frame.T @ (self.frame @ residual)
            norm = float(np.linalg.norm(residual))
            if norm > self.rel_tol * scales[idx]:
                self._append(residual, norm)
                accepted.append(int(idx))
        return accepted

    def to_subspace(self):
        return OperatorSubspace(self.dim_matrix, self.stack)


@dataclass(frozen=True, eq=False)
class OperatorSubspace:
    """
    Real span of Hermitian matrices, stored as an HS-orthonormal basis
    ``stack`` of shape ``(k, dim_matrix, dim_matrix)``.
    """
    dim_matrix: int
    stack: np.ndarray

    def __post_init__(self):
        stack = np.array(self.stack, dtype=complex).reshape(-1, self.dim_matrix, self.dim_matrix)
        stack.setflags(write=False)
        object.__setattr__(self, 'stack', stack)
        if len(stack):
            gram = self.frame @ self.frame.T
            defect = np.max(np.abs(gram - np.eye(len(stack))))
            if defect > 1e-9:
                raise ValueError(f"OperatorSubspace basis is not HS-orthonormal (defect {defect:.2e}).")

    @classmethod
    def empty(cls, dim_matrix):
        return cls(dim_matrix, np.zeros((0, dim_matrix, dim_matrix), dtype=complex))

    @classmethod
    def span(cls, matrices, dim_matrix, rel_tol=REL_TOL):
        """Orthonormalised span of any iterable of Hermitian arrays/operators."""
        builder = SpanBuilder(dim_matrix, rel_tol)
        for m in matrices:
            m = as_array(m)
            if m.shape != (dim_matrix, dim_matrix):
                raise DimensionMismatchError(f"Expected {dim_matrix}x{dim_matrix} matrices, got {m.shape}.")
            builder.extend(m)
        return builder.to_subspace()

    @property
    def dim(self):
        return len(self.stack)

    @property
    def basis(self):
        return [HermitianOperator(m) for m in self.stack]

    @cached_property
    def frame(self):
        return hermitian_to_real(self.stack)

    def project(self, matrix):
        """Orthogonal projection (ndarray) of a Hermitian matrix onto the span."""
        if self.dim == 0:
            return np.zeros((self.dim_matrix, self.dim_matrix), dtype=complex)
        coords = self.frame @ hermitian_to_real(matrix)
        return real_to_hermitian(coords @ self.frame, self.dim_matrix)

    def residual(self, matrix):
        """``||X - P X||_F / ||X||_F`` (0 for X = 0)."""
        vector = hermitian_to_real(matrix)
        scale = np.linalg.norm(vector)
        if scale == 0:
            return 0.0
        if self.dim:
            vector = vector - (self.frame @ vector) @ self.frame
        return float(np.linalg.norm(vector) / scale)

    def json(self):
        return {
            "dim_matrix": self.dim_matrix,
            "dimension": self.dim,
            "basis": [matrix_to_json(m) for m in self.stack],
        }

    @classmethod
    def from_json(cls, data):
        return cls(int(data["dim_matrix"]), np.array([matrix_from_json(m) for m in data["basis"]]))


def orthonormal_extend(space, x, rel_tol=REL_TOL):
    """
    Gram-Schmidt step: project ``x`` off ``span(space)`` and append the
    normalised residual when it exceeds ``rel_tol * ||x||_F``.

    Returns:
        tuple: ``(OperatorSubspace, accepted, residual_norm)``.
    """
    if x.dim != space.dim_matrix:
        raise DimensionMismatchError(f"Operator of dim {x.dim} offered to a subspace of {space.dim_matrix}x{space.dim_matrix} matrices.")
    builder = SpanBuilder.from_subspace(space, rel_tol)
    accepted, norm = builder.extend(x.matrix)
    if not accepted:
        return space, False, norm
    return builder.to_subspace(), True, norm
