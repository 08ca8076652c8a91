# core/synthesis.py
# Created On: Oct 19, 2026
#
"""
Control procedures and the product formulas used to synthesise effective
evolutions from them.

A procedure ``p = ((t_1, w_1), ..., (t_n, w_n))`` evaluates to

    u_p = (w_n (x) 1) e^{iH t_n} ... (w_1 (x) 1) e^{iH t_1},    t_p = sum t_i.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from heisencut.config import UNITARY_TOL
from heisencut.core.operators import (
    HermitianOperator, UnitaryOperator, expi_hermitian, commutator,
    phase_aligned_distance, spectral_norm
)
from heisencut.errors import DimensionMismatchError, PreconditionError
from heisencut.utils.general_utils import make_rng, random_hermitian
from heisencut.utils.io_utils import matrix_from_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ControlProcedure:
    dim_c: int
    dim_s: int
    steps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        steps = tuple((float(t), w) for t, w in self.steps)
        for k, (t, w) in enumerate(steps):
            if t < 0:
                raise PreconditionError(f"Step {k}: wait time must be nonnegative, got {t}.")
            if w.dim != self.dim_c:
                raise DimensionMismatchError(f"Step {k}: controller unitary of dim {w.dim}, expected {self.dim_c}.")
        object.__setattr__(self, 'steps', steps)

    @property
    def t_p(self):
        return sum(t for t, _ in self.steps)

    def __len__(self):
        return len(self.steps)

    def then(self, other):
        """Run ``self`` first and ``other`` afterwards."""
        if (other.dim_c, other.dim_s) != (self.dim_c, self.dim_s):
            raise DimensionMismatchError("Procedures act on different spaces.")
        return ControlProcedure(self.dim_c, self.dim_s, self.steps + other.steps)

    def json(self):
        return {
            "dim_c": self.dim_c,
            "dim_s": self.dim_s,
            "t_p": self.t_p,
            "steps": [{"t": t, "w": w.json()} for t, w in self.steps],
        }

    @classmethod
    def from_json(cls, data):
        steps = [(s["t"], UnitaryOperator(matrix_from_json(s["w"]))) for s in data["steps"]]
        return cls(int(data["dim_c"]), int(data["dim_s"]), tuple(steps))


class _Propagator:
    """``e^{iHt}`` from one eigendecomposition, memoised per ``t``."""

    def __init__(self, matrix):
        self.w, self.v = np.linalg.eigh(matrix)
        self._cache = {}

    def __call__(self, t):
        if t not in self._cache:
            self._cache[t] = (self.v * np.exp(1j * t * self.w)) @ self.v.conj().T
        return self._cache[t]


def evaluate_procedure(p, h):
    """
    Evaluate a procedure against a bipartite Hamiltonian.

    Returns:
        tuple: ``(UnitaryOperator u_p, float t_p)``.
    """
    if (p.dim_c, p.dim_s) != (h.dim_c, h.dim_s):
        raise DimensionMismatchError(
            f"Procedure on {p.dim_c}x{p.dim_s} evaluated against a {h.dim_c}x{h.dim_s} Hamiltonian."
        )
    propagate = _Propagator(h.full.matrix)
    eye_s = np.eye(h.dim_s)
    u = np.eye(h.dim, dtype=complex)
    for t, w in p.steps:
        if t:
            u = propagate(t) @ u
        u = np.kron(w.matrix, eye_s) @ u
    return UnitaryOperator(u), p.t_p


@dataclass(frozen=True, eq=False)
class IrreducibleGroup:
    """Finite irreducible set of controller unitaries, closed up to phase."""
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, 'elements', tuple(self.elements))
        if not self.elements:
            raise PreconditionError("An irreducible group needs at least one element.")

    @property
    def dim(self):
        return self.elements[0].dim

    def __len__(self):
        return len(self.elements)

    def average(self, x):
        """Schur average ``sum_s s X s^dagger`` of a ``dim x dim`` array."""
        return sum(s.matrix @ x @ s.matrix.conj().T for s in self.elements)

    def closure_defect(self):
        """Largest distance of a product ``s t`` to the nearest element up to phase."""
        stack = np.array([s.matrix for s in self.elements])
        worst = 0.0
        for s in stack:
            for t in stack:
                st = s @ t
                # |tr(g^dagger st)| = dim exactly when st = phase * g
                overlaps = np.abs(np.einsum('kji,ji->k', stack.conj(), st))
                worst = max(worst, 1.0 - overlaps.max() / self.dim)
        return worst

    def schur_defect(self, seed=0):
        """``||avg(X) - |S| tr(X)/dim 1||_F`` for a random Hermitian ``X``."""
        x = random_hermitian(self.dim, make_rng(seed))
        target = len(self) * np.trace(x) / self.dim * np.eye(self.dim)
        return float(np.linalg.norm(self.average(x) - target))


def weyl_group(dim):
    """
    The ``dim^2`` Weyl-Heisenberg operators ``X^a Z^b`` (cyclic shift and clock).

    Returns:
        IrreducibleGroup: element ``a * dim + b`` is ``X^a Z^b``; element 0 is the identity.
    """
    if dim < 2:
        raise PreconditionError(f"Weyl group needs dim >= 2, got {dim}.")
    shift = np.roll(np.eye(dim, dtype=complex), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(dim) / dim))
    elements = []
    for a in range(dim):
        xa = np.linalg.matrix_power(shift, a)
        for b in range(dim):
            elements.append(UnitaryOperator(xa @ np.linalg.matrix_power(clock, b)))
    return IrreducibleGroup(tuple(elements))


def group_average(h, s_group):
    """``sum_s (s (x) 1) H (s^dagger (x) 1)``; zero for stripped ``H``."""
    if s_group.dim != h.dim_c:
        raise DimensionMismatchError(f"Group acts on dim {s_group.dim}, controller has dim {h.dim_c}.")
    eye_s = np.eye(h.dim_s)
    total = np.zeros((h.dim, h.dim), dtype=complex)
    for s in s_group.elements:
        big = np.kron(s.matrix, eye_s)
        total += big @ h.full.matrix @ big.conj().T
    return HermitianOperator(total)


def inversion_sequence(h, s_group, eps):
    """
    Procedure evaluating to ``prod_{s != 1} s e^{iH eps} s^dagger``, which equals
    ``e^{-iH eps} + O(eps^2)`` for stripped ``H``.

    The conjugations are telescoped: ``w_0 = s_1^dagger``,
    ``w_i = s_{i+1}^dagger s_i`` after each wait and a final ``s_K``.
    """
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}.")
    if not h.is_stripped():
        raise PreconditionError("inversion_sequence needs a stripped Hamiltonian; run strip_locals first.")
    if s_group.dim != h.dim_c:
        raise DimensionMismatchError(f"Group acts on dim {s_group.dim}, controller has dim {h.dim_c}.")

    eye_c = np.eye(h.dim_c)
    conjugators = [s for s in s_group.elements if not np.allclose(s.matrix, eye_c)]
    steps = [(0.0, conjugators[0].dagger())]
    for previous, current in zip(conjugators, conjugators[1:]):
        steps.append((eps, current.dagger() @ previous))
    steps.append((eps, conjugators[-1]))
    return ControlProcedure(h.dim_c, h.dim_s, tuple(steps))


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    unitary: UnitaryOperator
    target: UnitaryOperator
    error: float
    t_p: Optional[float] = None
    error_bound: Optional[float] = None
    procedure: Optional[ControlProcedure] = None

    def json(self):
        return {
            "error": self.error,
            "error_bound": self.error_bound,
            "t_p": self.t_p,
            "unitary": self.unitary.json(),
            "target": self.target.json(),
            "procedure": self.procedure.json() if self.procedure is not None else None,
        }


def _checked_unitary(u):
    """Wrap a long product, re-unitarising by polar decomposition if it drifted."""
    if np.linalg.norm(u.conj().T @ u - np.eye(len(u))) > UNITARY_TOL * np.sqrt(len(u)):
        left, _, right = np.linalg.svd(u)
        u = left @ right
    return UnitaryOperator(u)


def synthesize_inversion(h, s_group, eps):
    """Evaluate ``inversion_sequence`` and compare with ``e^{-iH eps}``."""
    procedure = inversion_sequence(h, s_group, eps)
    u, t_p = evaluate_procedure(procedure, h)
    target = UnitaryOperator(expi_hermitian(h.full.matrix, -eps))
    error = phase_aligned_distance(u, target)
    logger.debug("Inversion sequence, eps = %g: %d steps, error %.3e.", eps, len(procedure), error)
    return SynthesisResult(u, target, error, t_p=t_p, procedure=procedure)


def _as_terms(terms):
    mats = []
    for g, c in terms:
        g = g.matrix if hasattr(g, 'matrix') else np.asarray(g, dtype=complex)
        mats.append((g, float(c)))
    dims = {g.shape for g, _ in mats}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Trotter terms of different shapes: {sorted(dims)}.")
    return mats


def _strang_bound(scaled):
    """Second-order commutator bound for one unit of time."""
    total = 0.0
    for k, hk in enumerate(scaled):
        rest = sum(scaled[k + 1:], np.zeros_like(hk))
        total += spectral_norm(commutator(rest, commutator(rest, hk))) / 12
        total += spectral_norm(commutator(hk, commutator(hk, rest))) / 24
    return total


def trotter_procedure(terms, m, order=1):
    """
    Product formula for ``e^{i sum_k c_k G_k}``.

    Args:
        terms (list): pairs ``(G_k, c_k)`` of Hermitian generators and real coefficients.
        m (int): number of Trotter steps.
        order (int): 1 for ``(prod_k e^{i c_k G_k/m})^m``, 2 for the symmetric product.

    Returns:
        SynthesisResult: with the commutator error bound of the chosen order.
    """
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}.")
    if order not in (1, 2):
        raise PreconditionError(f"Trotter order must be 1 or 2, got {order}.")
    mats = _as_terms(terms)
    dim = mats[0][0].shape[0]
    scaled = [c * g for g, c in mats]

    if order == 1:
        step = np.eye(dim, dtype=complex)
        for g in scaled:
            step = step @ expi_hermitian(g, 1.0 / m)
        bound = sum(
            spectral_norm(commutator(scaled[j], scaled[k]))
            for j in range(len(scaled)) for k in range(j + 1, len(scaled))
        ) / (2 * m)
    else:
        half = [expi_hermitian(g, 0.5 / m) for g in scaled]
        step = np.eye(dim, dtype=complex)
        for u in half:
            step = step @ u
        for u in reversed(half):
            step = step @ u
        bound = _strang_bound(scaled) / m ** 2

    u = _checked_unitary(np.linalg.matrix_power(step, m))
    target = UnitaryOperator(expi_hermitian(sum(scaled), 1.0))
    error = phase_aligned_distance(u, target)
    logger.debug("Trotter order %d, m = %d: error %.3e (bound %.3e).", order, m, error, bound)
    return SynthesisResult(u, target, error, error_bound=bound)


def group_commutator(a, b):
    """``e^{iA} e^{iB} e^{-iA} e^{-iB}`` for Hermitian arrays."""
    ea, eb = expi_hermitian(a), expi_hermitian(b)
    return ea @ eb @ ea.conj().T @ eb.conj().T


def _commutator_step(a, b, m, order, weight=1.0):
    """One step approximating ``e^{-weight [A, B] / m^2}``."""
    if order == 1:
        scale = np.sqrt(weight) / m
        return group_commutator(scale * a, scale * b)
    scale = np.sqrt(weight / 2) / m
    return group_commutator(scale * a, scale * b) @ group_commutator(-scale * a, -scale * b)


def _commutator_target(pairs):
    # e^{-sum [A, B]} = e^{i sum i[A, B]}
    generator = sum(1j * commutator(a, b) for a, b in pairs)
    generator = (generator + generator.conj().T) / 2
    return UnitaryOperator(expi_hermitian(generator, 1.0))


def _pair(a, b):
    a = a.matrix if hasattr(a, 'matrix') else np.asarray(a, dtype=complex)
    b = b.matrix if hasattr(b, 'matrix') else np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Commutator operands of shapes {a.shape} and {b.shape}.")
    return a, b


def commutator_procedure(a, b, m, order=1):
    """
    Group-commutator approximation of ``e^{-[A, B]}``.

    Order 1 is ``(e^{iA/m} e^{iB/m} e^{-iA/m} e^{-iB/m})^{m^2}``. Order 2 multiplies
    each step by the group commutator of ``(-A, -B)`` at scale ``1/(m sqrt 2)``,
    which cancels the third-order term.

    Returns:
        SynthesisResult
    """
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}.")
    if order not in (1, 2):
        raise PreconditionError(f"Commutator order must be 1 or 2, got {order}.")
    a, b = _pair(a, b)
    step = _commutator_step(a, b, m, order)
    u = _checked_unitary(np.linalg.matrix_power(step, m * m))
    target = _commutator_target([(a, b)])
    error = phase_aligned_distance(u, target)
    logger.debug("Group commutator order %d, m = %d: error %.3e.", order, m, error)
    return SynthesisResult(u, target, error)


def commutator_sum_procedure(pairs, m):
    """
    Approximate ``e^{-sum_k [X_k, Y_k]}`` by the symmetric product of second
    order group commutators, ``m^2`` repetitions.
    """
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}.")
    pairs = [_pair(x, y) for x, y in pairs]
    halves = [_commutator_step(x, y, m, order=2, weight=0.5) for x, y in pairs]
    step = np.eye(pairs[0][0].shape[0], dtype=complex)
    for v in halves:
        step = step @ v
    for v in reversed(halves):
        step = step @ v
    u = _checked_unitary(np.linalg.matrix_power(step, m * m))
    target = _commutator_target(pairs)
    error = phase_aligned_distance(u, target)
    logger.debug("Commutator sum of %d pairs, m = %d: error %.3e.", len(pairs), m, error)
    return SynthesisResult(u, target, error)


def fit_loglog_slope(xs, ys):
    """Least-squares slope of ``log y`` against ``log x``."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
