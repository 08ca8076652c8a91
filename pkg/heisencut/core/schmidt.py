# core/schmidt.py
# Created On: Oct 19, 2026
#
"""
Operator-Schmidt decomposition of a bipartite Hamiltonian

    H = sum_j A_j (x) B_j + A (x) 1 + 1 (x) B + c 1

with traceless local factors, computed by realigning H over HS-orthonormal
local bases and taking the SVD of the traceless-traceless block.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg
from rich.console import Console
from rich.table import Table

from heisencut.core.operators import HermitianOperator, hermitian_basis
from heisencut.errors import DimensionMismatchError, FormatError
from heisencut.utils.io_utils import matrix_from_json

logger = logging.getLogger(__name__)

# Singular values below this fraction of the largest one are dropped
SV_CUTOFF = 1e-10


@dataclass(frozen=True, eq=False)
class BipartiteHamiltonian:
    dim_c: int
    dim_s: int
    full: HermitianOperator
    interaction_terms: tuple
    local_c: HermitianOperator
    local_s: HermitianOperator
    scalar: float
    singular_values: tuple = ()

    def __post_init__(self):
        if self.full.dim != self.dim_c * self.dim_s:
            raise DimensionMismatchError(
                f"Hamiltonian of dim {self.full.dim} does not act on {self.dim_c}x{self.dim_s}."
            )
        object.__setattr__(self, 'interaction_terms', tuple(tuple(t) for t in self.interaction_terms))

    @property
    def dim(self):
        return self.dim_c * self.dim_s

    @property
    def a_side(self):
        return [a for a, _ in self.interaction_terms]

    @property
    def b_side(self):
        return [b for _, b in self.interaction_terms]

    def rebuild(self):
        """Reassemble the full matrix from the decomposition (ndarray)."""
        n, m = self.dim_c, self.dim_s
        total = self.scalar * np.eye(n * m, dtype=complex)
        total += np.kron(self.local_c.matrix, np.eye(m))
        total += np.kron(np.eye(n), self.local_s.matrix)
        for a, b in self.interaction_terms:
            total += np.kron(a.matrix, b.matrix)
        return total

    def locals_norm(self):
        """Frobenius norm of the local and scalar part ``A(x)1 + 1(x)B + c 1``."""
        n, m = self.dim_c, self.dim_s
        return float(np.sqrt(
            m * self.local_c.norm() ** 2 + n * self.local_s.norm() ** 2 + n * m * self.scalar ** 2
        ))

    def is_stripped(self, tol=1e-9):
        return self.locals_norm() <= tol * max(1.0, self.full.norm())

    def json(self):
        return {
            "dim_c": self.dim_c,
            "dim_s": self.dim_s,
            "full": self.full.json(),
            "interaction_terms": [{"A": a.json(), "B": b.json()} for a, b in self.interaction_terms],
            "local_c": self.local_c.json(),
            "local_s": self.local_s.json(),
            "scalar": self.scalar,
            "singular_values": list(self.singular_values),
        }

    @classmethod
    def from_json(cls, data, dim_c=None, dim_s=None):
        """
        Read ``{"dim_c", "dim_s", "full"}`` (extra keys ignored) or a bare
        matrix object together with explicit ``dim_c``/``dim_s``, and decompose it.
        """
        if "full" in data:
            full = matrix_from_json(data["full"])
            dim_c = int(data.get("dim_c", dim_c or 0))
            dim_s = int(data.get("dim_s", dim_s or 0))
        else:
            full = matrix_from_json(data)
        if not dim_c or not dim_s:
            raise FormatError("Hamiltonian JSON needs dim_c and dim_s (in the file or as options).")
        return schmidt_decompose(HermitianOperator(full), dim_c, dim_s)

    def print_on_screen(self, console=None):
        console = console or Console()
        table = Table(title=f"Bipartite Hamiltonian on {self.dim_c} x {self.dim_s}")
        table.add_column("Component", style="cyan")
        table.add_column("Value", style="green")
        table.add_row("Interaction terms", str(len(self.interaction_terms)))
        table.add_row("Singular values", ", ".join(f"{s:.6g}" for s in self.singular_values) or "-")
        table.add_row("||A|| (controller local)", f"{self.local_c.norm():.3e}")
        table.add_row("||B|| (system local)", f"{self.local_s.norm():.3e}")
        table.add_row("Scalar", f"{self.scalar:.6g}")
        console.print(table)


def _realign(full, dim_c, dim_s):
    """Coefficients ``M[a, b] = tr((E_a (x) F_b) H)`` over the local Hermitian bases."""
    e = hermitian_basis(dim_c)
    f = hermitian_basis(dim_s)
    h4 = full.reshape(dim_c, dim_s, dim_c, dim_s)
    return e, f, np.einsum('aji,blk,ikjl->ab', e, f, h4, optimize=True).real


def _fix_sign(a_mat, b_mat):
    flat = a_mat.ravel()
    z = flat[np.argmax(np.abs(flat))]
    ref = z.real if abs(z.real) > 1e-12 * abs(z) else z.imag
    if ref < 0:
        return -a_mat, -b_mat
    return a_mat, b_mat


def schmidt_decompose(full, dim_c, dim_s):
    """
    Canonical decomposition of a Hermitian operator on ``H_c (x) H_s``.

    Args:
        full (HermitianOperator): operator of dimension ``dim_c * dim_s``.
        dim_c (int): controller dimension.
        dim_s (int): system dimension.

    Returns:
        BipartiteHamiltonian: terms ordered by decreasing singular value, each
        ``A_j`` and ``B_j`` scaled by ``sqrt(sigma_j)``; the sign is fixed so the
        largest-magnitude entry of ``A_j`` has positive real part.

    Raises:
        DimensionMismatchError: if ``full.dim != dim_c * dim_s``.
    """
    if not isinstance(full, HermitianOperator):
        full = HermitianOperator(full)
    if dim_c < 1 or dim_s < 1 or full.dim != dim_c * dim_s:
        raise DimensionMismatchError(f"Operator of dim {full.dim} cannot be split as {dim_c} x {dim_s}.")

    e, f, coeffs = _realign(full.matrix, dim_c, dim_s)

    scalar = float(coeffs[0, 0] / np.sqrt(dim_c * dim_s))
    local_s = np.einsum('b,bij->ij', coeffs[0, 1:], f[1:]) / np.sqrt(dim_c)
    local_c = np.einsum('a,aij->ij', coeffs[1:, 0], e[1:]) / np.sqrt(dim_s)

    terms, kept = [], []
    block = coeffs[1:, 1:]
    if block.size:
        u, sigma, vt = linalg.svd(block, full_matrices=False)
        if sigma.size and sigma[0] > 0:
            rank = int(np.sum(sigma > SV_CUTOFF * sigma[0]))
            for j in range(rank):
                root = np.sqrt(sigma[j])
                a_mat = root * np.einsum('a,aij->ij', u[:, j], e[1:])
                b_mat = root * np.einsum('b,bij->ij', vt[j], f[1:])
                a_mat, b_mat = _fix_sign(a_mat, b_mat)
                terms.append((HermitianOperator(a_mat), HermitianOperator(b_mat)))
                kept.append(float(sigma[j]))

    h = BipartiteHamiltonian(
        dim_c=dim_c,
        dim_s=dim_s,
        full=full,
        interaction_terms=tuple(terms),
        local_c=HermitianOperator(local_c),
        local_s=HermitianOperator(local_s),
        scalar=scalar,
        singular_values=tuple(kept),
    )
    logger.debug("Decomposed %dx%d Hamiltonian: %d interaction terms.", dim_c, dim_s, len(terms))
    return h


def strip_locals(h):
    """Drop ``A (x) 1``, ``1 (x) B`` and ``c 1``; the full matrix is recomputed."""
    full = np.zeros((h.dim, h.dim), dtype=complex)
    for a, b in h.interaction_terms:
        full += np.kron(a.matrix, b.matrix)
    return BipartiteHamiltonian(
        dim_c=h.dim_c,
        dim_s=h.dim_s,
        full=HermitianOperator(full),
        interaction_terms=h.interaction_terms,
        local_c=HermitianOperator.zeros(h.dim_c),
        local_s=HermitianOperator.zeros(h.dim_s),
        scalar=0.0,
        singular_values=h.singular_values,
    )


def from_terms(terms, dim_c, dim_s):
    """Decompose ``sum_j A_j (x) B_j`` given as pairs of arrays or operators."""
    full = np.zeros((dim_c * dim_s, dim_c * dim_s), dtype=complex)
    for a, b in terms:
        a = a.matrix if hasattr(a, 'matrix') else np.asarray(a)
        b = b.matrix if hasattr(b, 'matrix') else np.asarray(b)
        full += np.kron(a, b)
    return schmidt_decompose(HermitianOperator(full), dim_c, dim_s)
