# core/spin_chain.py
# Created On: Oct 19, 2026
#
"""
Nearest-neighbour chains ``H = sum_j sum_k A_k^(j) (x) B_k^(j+1)`` and the
question whether the first ``m`` sites, used as a controller, reach every
traceless Hermitian operator of the whole chain.
"""
import logging
from dataclasses import dataclass

import numpy as np
from rich.console import Console
from rich.table import Table

from heisencut.config import DIM_CAP, REL_TOL
from heisencut.core.operators import HermitianOperator, embed, gell_mann_basis, as_array
from heisencut.core.closure import lie_closure, star_closure
from heisencut.errors import CapExceededError, DimensionMismatchError, FormatError, PreconditionError
from heisencut.utils.io_utils import matrix_from_json

logger = logging.getLogger(__name__)

MIN_SITE_DIM = 3


@dataclass(frozen=True, eq=False)
class ChainSpec:
    site_dims: tuple
    couplings: tuple

    def __post_init__(self):
        site_dims = tuple(int(d) for d in self.site_dims)
        if not site_dims or min(site_dims) < 1:
            raise PreconditionError(f"site_dims must be a non-empty list of positive integers, got {site_dims}.")
        couplings = tuple(
            tuple((HermitianOperator(as_array(a)), HermitianOperator(as_array(b))) for a, b in link)
            for link in self.couplings
        )
        if len(couplings) != len(site_dims) - 1:
            raise PreconditionError(
                f"A chain of {len(site_dims)} sites needs {len(site_dims) - 1} couplings, got {len(couplings)}."
            )
        for j, link in enumerate(couplings):
            for a, b in link:
                if a.dim != site_dims[j] or b.dim != site_dims[j + 1]:
                    raise DimensionMismatchError(
                        f"Coupling {j}: operators of dims ({a.dim}, {b.dim}) between sites of dims "
                        f"({site_dims[j]}, {site_dims[j + 1]})."
                    )
        object.__setattr__(self, 'site_dims', site_dims)
        object.__setattr__(self, 'couplings', couplings)

    @property
    def n_sites(self):
        return len(self.site_dims)

    @property
    def dim(self):
        return int(np.prod(self.site_dims))

    def json(self):
        return {
            "site_dims": list(self.site_dims),
            "couplings": [[{"A": a.json(), "B": b.json()} for a, b in link] for link in self.couplings],
        }

    @classmethod
    def from_json(cls, data):
        try:
            couplings = [
                [(matrix_from_json(term["A"]), matrix_from_json(term["B"])) for term in link]
                for link in data["couplings"]
            ]
            return cls(tuple(data["site_dims"]), tuple(couplings))
        except (KeyError, TypeError) as e:
            raise FormatError(f"Malformed chain JSON: {e}") from e


def build_chain_hamiltonian(spec, dim_cap=DIM_CAP):
    """
    Sum of the embedded couplings ``A_k^(j) (x) B_k^(j+1)``.

    Raises:
        CapExceededError: if the chain dimension is above ``dim_cap``.
    """
    if spec.dim > dim_cap:
        raise CapExceededError(f"Chain dimension {spec.dim} exceeds the cap {dim_cap}; use a shorter chain.")
    total = np.zeros((spec.dim, spec.dim), dtype=complex)
    for j, link in enumerate(spec.couplings):
        for a, b in link:
            total += embed(a.matrix, j, spec.site_dims) @ embed(b.matrix, j + 1, spec.site_dims)
    return HermitianOperator(total)


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    where: str
    passed: bool
    value: float
    detail: str = ""


@dataclass(frozen=True)
class ChainHypothesisReport:
    checks: tuple

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def json(self):
        return {
            "all_passed": self.all_passed,
            "checks": [
                {"name": c.name, "where": c.where, "passed": c.passed, "value": c.value, "detail": c.detail}
                for c in self.checks
            ],
        }

    def print_on_screen(self, console=None):
        console = console or Console()
        table = Table(title="Chain hypotheses")
        table.add_column("Check", style="cyan")
        table.add_column("Where", style="magenta")
        table.add_column("Value", justify="right")
        table.add_column("Result")
        for c in self.checks:
            verdict = "[bold green]PASS[/bold green]" if c.passed else "[bold red]FAIL[/bold red]"
            table.add_row(c.name, c.where, f"{c.value:.3g}", verdict)
        console.print(table)


def _gram_ratio(mats):
    """Smallest over largest Gram eigenvalue of a family (0 when dependent)."""
    if not mats:
        return 1.0
    stack = np.array([m.ravel() for m in mats])
    eig = np.linalg.eigvalsh(stack.conj() @ stack.T)
    return float(eig[0] / eig[-1]) if eig[-1] > 0 else 0.0


def verify_chain_hypotheses(spec, rel_tol=REL_TOL):
    """
    Check the hypotheses under which the first sites control the chain: every
    site has dimension >= 3; on every coupling the controller-side factors are
    traceless and linearly independent and the far-side factors generate the
    full operator algebra of their site.

    Returns:
        ChainHypothesisReport
    """
    checks = []
    for j, d in enumerate(spec.site_dims):
        checks.append(HypothesisCheck("site dimension >= 3", f"site {j}", d >= MIN_SITE_DIM, float(d)))

    for j, link in enumerate(spec.couplings):
        where = f"coupling {j}-{j + 1}"
        a_side = [a.matrix for a, _ in link]
        b_side = [b.matrix for _, b in link]

        worst_trace = max((abs(np.trace(a)) / max(1.0, np.linalg.norm(a)) for a in a_side), default=0.0)
        checks.append(HypothesisCheck("A-side traceless", where, bool(worst_trace <= 1e-12), float(worst_trace)))

        ratio = _gram_ratio(a_side)
        checks.append(HypothesisCheck("A-side independent", where, bool(ratio > 1e-9), ratio))

        d = spec.site_dims[j + 1]
        closure_dim = star_closure(b_side, dim=d, rel_tol=rel_tol).dim
        checks.append(HypothesisCheck(
            "B-side generates full algebra", where, closure_dim == d * d, float(closure_dim),
            detail=f"{closure_dim} of {d * d}",
        ))

    report = ChainHypothesisReport(tuple(checks))
    logger.info("Chain hypotheses: %d checks, all passed = %s.", len(checks), report.all_passed)
    return report


@dataclass(frozen=True)
class CutReport:
    controllable: bool
    closure_dim: int
    target_dim: int
    cut: int
    generations: int

    def json(self):
        return {
            "controllable": self.controllable,
            "closure_dim": self.closure_dim,
            "target_dim": self.target_dim,
            "cut": self.cut,
            "generations": self.generations,
        }


def check_cut(spec, m, dim_cap=DIM_CAP, rel_tol=REL_TOL):
    """
    Use the first ``m`` sites as the controller: close the traceless operators
    of those sites (embedded) together with the chain Hamiltonian.

    Returns:
        CutReport: ``controllable`` iff the closure is all of ``su(D)``.
    """
    if not 1 <= m <= spec.n_sites:
        raise PreconditionError(f"Cut must satisfy 1 <= m <= {spec.n_sites}, got {m}.")
    h = build_chain_hamiltonian(spec, dim_cap).matrix
    # identity part only contributes a global phase
    h = h - np.trace(h) / spec.dim * np.eye(spec.dim)

    dim_head = int(np.prod(spec.site_dims[:m]))
    eye_tail = np.eye(spec.dim // dim_head, dtype=complex)
    generators = [np.kron(w, eye_tail) for w in gell_mann_basis(dim_head)] if dim_head > 1 else []
    if np.linalg.norm(h) > 0:
        generators.append(h)
    if not generators:
        return CutReport(spec.dim == 1, 0, spec.dim ** 2 - 1, m, 0)

    report = lie_closure(generators, rel_tol=rel_tol)
    target = spec.dim ** 2 - 1
    result = CutReport(report.dim == target, report.dim, target, m, report.generations)
    logger.info("Cut after site %d: closure dimension %d of %d.", m, report.dim, target)
    return result
