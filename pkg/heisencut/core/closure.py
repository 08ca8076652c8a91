# core/closure.py
# Created On: Oct 19, 2026
#
"""
Closure engines over real spans of Hermitian matrices.

``lie_closure`` closes under the bracket ``(X, Y) -> i[X, Y]``;
``star_closure`` closes the self-adjoint part of the unital associative
algebra, which is the same as closing under the Jordan product together
with the bracket. Both sweep breadth-first: every element accepted in one
generation is bracketed against the whole current basis and the survivors
form the next generation.
"""
import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from heisencut.config import REL_TOL, MEMBER_TOL
from heisencut.core.operators import OperatorSubspace, SpanBuilder, as_array
from heisencut.errors import DimensionMismatchError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ClosureReport:
    result: OperatorSubspace
    generations: int
    saturated: bool

    @property
    def dim(self):
        return self.result.dim

    def json(self):
        return {
            "dimension": self.result.dim,
            "generations": self.generations,
            "saturated": self.saturated,
            "subspace": self.result.json(),
        }


def bracket_batch(x, stack):
    """``i[X, Y_k]`` for every ``Y_k`` in ``stack``."""
    return 1j * (x @ stack - stack @ x)


def jordan_batch(x, stack):
    """``(X Y_k + Y_k X) / 2`` for every ``Y_k`` in ``stack``."""
    return (x @ stack + stack @ x) / 2


def _collect(generators):
    mats = [as_array(g) for g in generators]
    if not mats:
        return mats, None
    dim = mats[0].shape[0]
    for m in mats:
        if m.shape != (dim, dim):
            raise DimensionMismatchError(f"Generators of different dimensions: {m.shape} vs {(dim, dim)}.")
    return mats, dim


def _close(builder, products, target_dim, max_generations):
    """
    Run the sweep on a builder already seeded with generation zero.

    Returns:
        tuple: ``(generations, saturated)``.
    """
    queue = deque((idx, 0) for idx in range(builder.size))
    generations = 0
    while queue and builder.size < target_dim:
        idx, gen = queue.popleft()
        if gen >= max_generations:
            logger.warning("Closure stopped at the generation cap (%d) with span dimension %d.", max_generations, builder.size)
            return generations, False
        basis = builder.stack
        x = basis[idx]
        batch = np.concatenate([op(x, basis) for op in products])
        start = builder.size
        builder.extend_many(batch)
        queue.extend((k, gen + 1) for k in range(start, builder.size))
        if builder.size > start and gen + 1 > generations:
            generations = gen + 1
            logger.debug("Closure generation %d: span dimension %d.", generations, builder.size)
    return generations, True


def lie_closure(generators, rel_tol=REL_TOL, traceless_tol=1e-10):
    """
    Smallest real span containing ``generators`` and closed under ``i[.,.]``.

    Args:
        generators (list): traceless Hermitian operators (or arrays) of one dimension.
        rel_tol (float): acceptance threshold of the Gram-Schmidt step.

    Returns:
        ClosureReport

    Raises:
        PreconditionError: if a generator has a trace component.
    """
    mats, dim = _collect(generators)
    if dim is None:
        raise PreconditionError("lie_closure needs at least one generator.")
    for k, m in enumerate(mats):
        if abs(np.trace(m)) > traceless_tol * max(1.0, np.linalg.norm(m)):
            raise PreconditionError(
                f"Generator {k} is not traceless (trace {np.trace(m).real:.3e}); remove its identity component first."
            )

    builder = SpanBuilder(dim, rel_tol)
    builder.extend_many(np.array(mats))
    generations, saturated = _close(builder, [bracket_batch], dim * dim - 1, dim * dim)
    report = ClosureReport(builder.to_subspace(), generations, saturated)
    logger.info("Lie closure in %dx%d matrices: dimension %d after %d generations.", dim, dim, report.dim, generations)
    return report


def star_closure(generators, dim=None, rel_tol=REL_TOL):
    """
    Self-adjoint part of the unital *-algebra generated by ``generators``.

    The identity is always included, so ``star_closure([], dim)`` is ``span{1}``.

    Returns:
        OperatorSubspace
    """
    mats, found = _collect(generators)
    dim = dim or found
    if dim is None:
        raise PreconditionError("star_closure needs a generator or an explicit dimension.")
    if found is not None and found != dim:
        raise DimensionMismatchError(f"Generators are {found}x{found}, expected {dim}x{dim}.")

    builder = SpanBuilder(dim, rel_tol)
    builder.extend(np.eye(dim, dtype=complex))
    if mats:
        builder.extend_many(np.array(mats))
    generations, _ = _close(builder, [jordan_batch, bracket_batch], dim * dim, dim * dim)
    logger.debug("Star closure in %dx%d matrices: dimension %d after %d generations.", dim, dim, builder.size, generations)
    return builder.to_subspace()


def member(x, space, member_tol=MEMBER_TOL):
    """
    Membership test by projection.

    Returns:
        tuple: ``(residual <= member_tol, residual)`` with the relative residual
        ``||X - P X||_F / ||X||_F``.
    """
    m = as_array(x)
    if m.shape != (space.dim_matrix, space.dim_matrix):
        raise DimensionMismatchError(f"Operator of shape {m.shape} tested against {space.dim_matrix}x{space.dim_matrix} subspace.")
    residual = space.residual(m)
    return residual <= member_tol, residual


def commutator_span(space_a, space_b, rel_tol=REL_TOL):
    """Real span of ``i[X, Y]`` over the bases of the two subspaces."""
    if space_a.dim_matrix != space_b.dim_matrix:
        raise DimensionMismatchError(f"Subspaces of {space_a.dim_matrix} and {space_b.dim_matrix} matrices.")
    builder = SpanBuilder(space_a.dim_matrix, rel_tol)
    if space_b.dim:
        for x in space_a.stack:
            builder.extend_many(bracket_batch(x, space_b.stack))
    return builder.to_subspace()


def max_bracket_residual(space, jordan=False):
    """
    Largest membership residual of ``i[X, Y]`` (and of the Jordan product when
    ``jordan``) over all basis pairs; zero for a closed subspace.
    """
    worst = 0.0
    for x in space.stack:
        batch = bracket_batch(x, space.stack)
        if jordan:
            batch = np.concatenate([batch, jordan_batch(x, space.stack)])
        for y in batch:
            worst = max(worst, space.residual(y))
    return worst


def subspaces_equal(space_a, space_b, member_tol=MEMBER_TOL):
    """
    Equal dimension and mutual membership of the bases.

    Returns:
        tuple: ``(equal, worst_residual)``.
    """
    if space_a.dim_matrix != space_b.dim_matrix:
        raise DimensionMismatchError(f"Subspaces of {space_a.dim_matrix} and {space_b.dim_matrix} matrices.")
    worst = 0.0
    for x in space_a.stack:
        worst = max(worst, space_b.residual(x))
    for y in space_b.stack:
        worst = max(worst, space_a.residual(y))
    return space_a.dim == space_b.dim and worst <= member_tol, worst
