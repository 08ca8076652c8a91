# core/interface.py
# Created On: Oct 19, 2026
#
"""
Interface algebra of a controller/system coupling.

The brute-force route closes ``{W (x) 1 : W traceless on H_c} U {H}`` under
``i[.,.]``. The structural route builds ``W (x) B + 1 (x) L`` from the system
side alone, where ``B`` is the self-adjoint part of the *-algebra generated by
the ``B_j`` and ``L`` is the span of ``i[X, Y]`` over ``B``. The two agree
whenever ``dim_c >= 3``; at ``dim_c = 2`` they may not (the xy coupling on
two qubits gives 10 against the structural 15).
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from rich.console import Console
from rich.table import Table

from heisencut.config import DIM_CAP, REL_TOL, MEMBER_TOL
from heisencut.core.operators import HermitianOperator, OperatorSubspace, gell_mann_basis
from heisencut.core.closure import lie_closure, star_closure, commutator_span, member, subspaces_equal
from heisencut.core.schmidt import schmidt_decompose
from heisencut.errors import CapExceededError, DimensionMismatchError, PreconditionError

logger = logging.getLogger(__name__)

MIN_CONTROLLER_DIM = 3


@dataclass(frozen=True, eq=False)
class InterfaceAnalysis:
    h: object
    structural: OperatorSubspace
    algebra_b: OperatorSubspace
    space_l: OperatorSubspace
    brute: Optional[OperatorSubspace] = None
    agree: Optional[bool] = None
    agreement_residual: Optional[float] = None

    @property
    def verified(self):
        return self.brute is not None

    @property
    def expected_dim(self):
        return (self.h.dim_c ** 2 - 1) * self.algebra_b.dim + self.space_l.dim

    def json(self):
        return {
            "dim_c": self.h.dim_c,
            "dim_s": self.h.dim_s,
            "dim_B": self.algebra_b.dim,
            "dim_L": self.space_l.dim,
            "structural_dimension": self.structural.dim,
            "brute_force_dimension": self.brute.dim if self.brute is not None else None,
            "agree": self.agree,
            "agreement_residual": self.agreement_residual,
            "verified": self.verified,
            "universal_control": self.algebra_b.dim == self.h.dim_s ** 2,
            "algebra_B": self.algebra_b.json(),
            "space_L": self.space_l.json(),
        }

    def print_on_screen(self, console=None):
        console = console or Console()
        table = Table(title="Interface algebra")
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", style="green")
        table.add_row("Controller x system", f"{self.h.dim_c} x {self.h.dim_s}")
        table.add_row("dim B", str(self.algebra_b.dim))
        table.add_row("dim L", str(self.space_l.dim))
        table.add_row("Structural dimension", str(self.structural.dim))
        if self.verified:
            table.add_row("Brute-force dimension", str(self.brute.dim))
            table.add_row("Agree", "[bold green]yes[/bold green]" if self.agree else "[bold red]no[/bold red]")
            table.add_row("Worst mutual residual", f"{self.agreement_residual:.2e}")
        else:
            table.add_row("Brute force", "[yellow]skipped (asserted, not verified)[/yellow]")
        console.print(table)


def controller_generators(dim_c, dim_s):
    """HS-orthonormal basis of ``W (x) 1`` as a stack of joint matrices."""
    eye = np.eye(dim_s, dtype=complex) / np.sqrt(dim_s)
    return np.array([np.kron(w, eye) for w in gell_mann_basis(dim_c)])


def _require_stripped(h):
    if not h.is_stripped():
        raise PreconditionError(
            f"Hamiltonian carries local terms (norm {h.locals_norm():.3e}); run strip_locals first."
        )


def interface_bruteforce(h, dim_cap=DIM_CAP, rel_tol=REL_TOL):
    """
    Lie closure of ``{W_i (x) 1} U {H}``.

    Raises:
        PreconditionError: if ``h`` still carries locals or a scalar part.
        CapExceededError: if ``dim_c * dim_s > dim_cap``.
    """
    _require_stripped(h)
    if h.dim > dim_cap:
        raise CapExceededError(f"Joint dimension {h.dim} exceeds the brute-force cap {dim_cap}.")

    generators = list(controller_generators(h.dim_c, h.dim_s))
    if h.full.norm() > 0:
        generators.append(h.full.matrix)
    report = lie_closure(generators, rel_tol=rel_tol)
    if not report.saturated:
        logger.warning("Brute-force interface closure did not saturate; result is a lower bound.")
    return report.result


def system_algebra(h, rel_tol=REL_TOL):
    """``B``: star closure of the system-side factors (always contains 1)."""
    return star_closure(h.b_side, dim=h.dim_s, rel_tol=rel_tol)


def interface_structural(h, dim_cap=DIM_CAP, brute_force=True, rel_tol=REL_TOL, member_tol=MEMBER_TOL):
    """
    Structural interface algebra ``W (x) B + 1 (x) L``, cross-checked against
    the brute-force closure when the joint dimension is within ``dim_cap``.

    Args:
        h (BipartiteHamiltonian): stripped Hamiltonian with ``dim_c >= 3``.
        brute_force (bool): compute and compare the brute-force closure when allowed.

    Returns:
        InterfaceAnalysis

    Raises:
        PreconditionError: for ``dim_c < 3`` or unstripped input.
    """
    if h.dim_c < MIN_CONTROLLER_DIM:
        raise PreconditionError(
            f"Structural formula requires a controller of dimension >= {MIN_CONTROLLER_DIM} "
            f"(got dim_c = {h.dim_c}); the assumption dim(H_c) >= 3 cannot be dropped. "
            "Use the brute-force closure or extend the controller with an ancilla."
        )
    _require_stripped(h)

    algebra_b = system_algebra(h, rel_tol)
    space_l = commutator_span(algebra_b, algebra_b, rel_tol)

    n, m = h.dim_c, h.dim_s
    blocks = [np.kron(w, b) for w in gell_mann_basis(n) for b in algebra_b.stack]
    blocks += [np.kron(np.eye(n), l) / np.sqrt(n) for l in space_l.stack]
    structural = OperatorSubspace(n * m, np.array(blocks).reshape(len(blocks), n * m, n * m))
    logger.info("Structural interface: dim B = %d, dim L = %d, total %d.", algebra_b.dim, space_l.dim, structural.dim)

    brute = agree = residual = None
    if brute_force and h.dim <= dim_cap:
        brute = interface_bruteforce(h, dim_cap, rel_tol)
        agree, residual = subspaces_equal(brute, structural, member_tol)
        logger.info("Brute-force interface: dimension %d, agree = %s (worst residual %.2e).", brute.dim, agree, residual)
    elif brute_force:
        logger.warning(
            "Joint dimension %d exceeds cap %d: structure theorem asserted, not verified by closure.", h.dim, dim_cap
        )

    return InterfaceAnalysis(
        h=h,
        structural=structural,
        algebra_b=algebra_b,
        space_l=space_l,
        brute=brute,
        agree=agree,
        agreement_residual=residual,
    )


def _warn_small_controller(h):
    if h.dim_c < MIN_CONTROLLER_DIM:
        logger.warning(
            "dim_c = %d < %d: the verdict refers to the ancilla-extended controller "
            "(the extension leaves B unchanged).", h.dim_c, MIN_CONTROLLER_DIM
        )


def check_universal_control(h, rel_tol=REL_TOL):
    """True iff the ``B_j`` generate every operator on the system, ``dim B = dim_s^2``."""
    _warn_small_controller(h)
    algebra_b = system_algebra(h, rel_tol)
    verdict = algebra_b.dim == h.dim_s ** 2
    logger.info("dim B = %d of %d: universal control %s.", algebra_b.dim, h.dim_s ** 2, verdict)
    return verdict


def check_implementable(observable, h, rel_tol=REL_TOL, member_tol=MEMBER_TOL):
    """
    Whether ``e^{iAs}`` is implementable (equivalently whether ``A`` admits a
    CQND measurement): membership of ``A`` in the unital algebra ``B``.

    Returns:
        tuple: ``(verdict, residual)``.
    """
    if observable.dim != h.dim_s:
        raise DimensionMismatchError(f"Observable of dim {observable.dim} does not act on the {h.dim_s}-dim system.")
    _warn_small_controller(h)
    return member(observable, system_algebra(h, rel_tol), member_tol)


def extend_controller(h, ancilla_dim):
    """
    Ancilla extension ``1_a (x) H`` on ``(H_a (x) H_c) (x) H_s``.

    Returns:
        BipartiteHamiltonian: decomposed with controller dimension ``ancilla_dim * dim_c``.
    """
    if ancilla_dim < 1:
        raise PreconditionError(f"Ancilla dimension must be positive, got {ancilla_dim}.")
    full = np.kron(np.eye(ancilla_dim), h.full.matrix)
    return schmidt_decompose(HermitianOperator(full), ancilla_dim * h.dim_c, h.dim_s)


def conjugate_controller(h, w):
    """``(w (x) 1) H (w^dagger (x) 1)`` for a controller unitary ``w``."""
    if w.dim != h.dim_c:
        raise DimensionMismatchError(f"Controller unitary of dim {w.dim}, controller has dim {h.dim_c}.")
    big = np.kron(w.matrix, np.eye(h.dim_s))
    return schmidt_decompose(HermitianOperator(big @ h.full.matrix @ big.conj().T), h.dim_c, h.dim_s)
