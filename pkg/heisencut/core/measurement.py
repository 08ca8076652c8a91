# core/measurement.py
# Created On: Oct 19, 2026
#
"""
CQND measurement schemes.

A scheme evolves ``|phi> (x) |psi>`` under ``e^{i s D (x) C}`` with
``D = diag(1..n) - (n+1)/2`` on the controller and ``|phi>`` the uniform
superposition. Writing ``C = sum_j mu_j P_j`` the result is
``sum_j e^{i mu_j s D}|phi> (x) P_j|psi>``; the controller factors are the
pointer states. Every ``1 (x) P_j`` commutes with the generator, so
eigenstates of the measured observable are never disturbed along the way.

Composite observables ``a + b``, ``i[a, b]`` and ``ab + ba`` are reached by
product formulas over measurement Hamiltonians of ``a`` and ``b`` alone.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import linalg
from rich.console import Console
from rich.table import Table

from heisencut.core.operators import (
    HermitianOperator, UnitaryOperator, expi_hermitian, commutator, anticommutator, as_array
)
from heisencut.core.synthesis import trotter_procedure, commutator_procedure, commutator_sum_procedure
from heisencut.errors import DimensionMismatchError, PreconditionError
from heisencut.utils.io_utils import matrix_to_json, matrix_from_json, vector_to_json, vector_from_json

logger = logging.getLogger(__name__)

# Eigenvalues closer than this (relative to the spectral radius) share a projection
EIGEN_GROUP_TOL = 1e-9
POINTER_TOL = 1e-9
NORM_TOL = 1e-9
# Outcome probabilities above one mean the pointer states overlap
PROBABILITY_SUM_TOL = 1e-9
LABEL_COEFF_TOL = 1e-10


def pointer_generator(dim_c):
    """``D = diag(1, ..., n) - (n + 1)/2``, traceless with unit spacing."""
    return np.diag(np.arange(1, dim_c + 1) - (dim_c + 1) / 2).astype(complex)


def uniform_state(dim_c):
    return np.ones(dim_c, dtype=complex) / np.sqrt(dim_c)


def spectral_projections(observable, tol=EIGEN_GROUP_TOL):
    """
    Group the spectrum of a Hermitian matrix into distinct eigenvalues.

    Returns:
        tuple: ``(eigenvalues, projections, eigenvectors)`` with eigenvalues ascending.
    """
    w, v = linalg.eigh(as_array(observable))
    scale = max(1.0, float(np.max(np.abs(w))))
    groups = [[0]]
    for k in range(1, len(w)):
        if w[k] - w[groups[-1][0]] > tol * scale:
            groups.append([k])
        else:
            groups[-1].append(k)
    eigenvalues = [float(np.mean(w[g])) for g in groups]
    projections = [v[:, g] @ v[:, g].conj().T for g in groups]
    return eigenvalues, projections, v


@dataclass(frozen=True, eq=False)
class MeasurementScheme:
    """
    Measurement of ``observable`` with ``len(projections)`` outcomes.

    ``labels`` are the values ``mu_j`` entering the generator ``D (x) sum mu_j P_j``;
    ``unitary``, when set, replaces ``e^{i s effective_h}`` by a synthesised
    approximation of it.
    """
    effective_h: HermitianOperator
    controller_init: np.ndarray
    evolution_time: float
    pointer_states: tuple
    projections: tuple
    eigenvalues: tuple
    labels: tuple
    dim_c: int
    dim_s: int
    kind: str = "cqnd"
    unitary: Optional[UnitaryOperator] = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.effective_h.dim != self.dim_c * self.dim_s:
            raise DimensionMismatchError(
                f"Effective Hamiltonian of dim {self.effective_h.dim} does not act on {self.dim_c}x{self.dim_s}."
            )
        phi = np.asarray(self.controller_init, dtype=complex)
        if phi.shape != (self.dim_c,) or abs(np.linalg.norm(phi) - 1) > 1e-12:
            raise PreconditionError("controller_init must be a unit vector on the controller.")
        projections = np.array([as_array(p) for p in self.projections])
        for j, p in enumerate(projections):
            for k, q in enumerate(projections):
                expected = p if j == k else 0
                if np.max(np.abs(p @ q - expected)) > 1e-10:
                    raise PreconditionError(f"Projections {j} and {k} are not orthogonal idempotents.")
        if np.max(np.abs(projections.sum(axis=0) - np.eye(self.dim_s))) > 1e-10:
            raise PreconditionError("Projections do not sum to the identity.")
        object.__setattr__(self, 'controller_init', phi)
        object.__setattr__(self, 'projections', tuple(projections))
        object.__setattr__(self, 'pointer_states', tuple(np.asarray(x, dtype=complex) for x in self.pointer_states))

    @property
    def observable(self):
        return sum(mu * p for mu, p in zip(self.eigenvalues, self.projections))

    def evolution(self, t=None):
        """Joint unitary after time ``t`` (default: the full evolution time)."""
        if t is None and self.unitary is not None:
            return self.unitary.matrix
        return expi_hermitian(self.effective_h.matrix, self.evolution_time if t is None else t)

    def json(self):
        return {
            "kind": self.kind,
            "dim_c": self.dim_c,
            "dim_s": self.dim_s,
            "effective_h": self.effective_h.json(),
            "controller_init": vector_to_json(self.controller_init),
            "evolution_time": self.evolution_time,
            "pointer_states": [vector_to_json(x) for x in self.pointer_states],
            "projections": [matrix_to_json(p) for p in self.projections],
            "eigenvalues": list(self.eigenvalues),
            "labels": list(self.labels),
            "unitary": self.unitary.json() if self.unitary is not None else None,
            "max_pointer_overlap": max_pointer_overlap(self),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data):
        unitary = data.get("unitary")
        return cls(
            effective_h=HermitianOperator(matrix_from_json(data["effective_h"])),
            controller_init=vector_from_json(data["controller_init"]),
            evolution_time=float(data["evolution_time"]),
            pointer_states=tuple(vector_from_json(x) for x in data["pointer_states"]),
            projections=tuple(matrix_from_json(p) for p in data["projections"]),
            eigenvalues=tuple(float(x) for x in data["eigenvalues"]),
            labels=tuple(float(x) for x in data.get("labels", data["eigenvalues"])),
            dim_c=int(data["dim_c"]),
            dim_s=int(data["dim_s"]),
            kind=data.get("kind", "cqnd"),
            unitary=UnitaryOperator(matrix_from_json(unitary)) if unitary else None,
            provenance=data.get("provenance", {}),
        )


def pointer_overlaps(scheme):
    """Gram matrix ``<pointer_j | pointer_k>``."""
    pointers = np.array(scheme.pointer_states)
    return pointers.conj() @ pointers.T


def max_pointer_overlap(scheme):
    gram = np.abs(pointer_overlaps(scheme))
    if len(gram) < 2:
        return 0.0
    return float(np.max(gram - np.diag(np.diag(gram))))


def _pointers(labels, dim_c, s):
    d = np.diag(pointer_generator(dim_c)).real
    phi = uniform_state(dim_c)
    return tuple(np.exp(1j * mu * s * d) * phi for mu in labels)


def _worst_overlap(labels, dim_c, s):
    d = np.diag(pointer_generator(dim_c)).real
    worst = 0.0
    for j in range(len(labels)):
        for k in range(j + 1, len(labels)):
            worst = max(worst, abs(np.mean(np.exp(1j * (labels[k] - labels[j]) * s * d))))
    return worst


def pointer_time(labels, dim_c, n_grid=4000):
    """
    Evolution time separating the pointer states.

    Equidistant labels with gap ``g`` give exactly orthogonal pointers at
    ``s = 2 pi / (n g)``. Otherwise ``s`` is picked on a grid minimising the
    largest overlap.

    Returns:
        tuple: ``(s, worst_overlap)``.
    """
    labels = sorted(labels)
    if len(labels) < 2:
        return 2 * np.pi / dim_c, 0.0
    gaps = np.diff(labels)
    gap = float(gaps.min())
    if np.allclose(gaps, gap, rtol=1e-9, atol=0):
        s = 2 * np.pi / (dim_c * gap)
        return s, _worst_overlap(labels, dim_c, s)

    grid = np.linspace(0, 4 * np.pi / gap, n_grid + 1)[1:]
    scores = [_worst_overlap(labels, dim_c, s) for s in grid]
    best = int(np.argmin(scores))
    logger.warning(
        "Spectrum is not equidistant: pointer states are only approximately orthogonal (overlap %.3e).", scores[best]
    )
    return float(grid[best]), float(scores[best])


def _check_outcomes(k, dim_c):
    if k > dim_c:
        raise PreconditionError(
            f"Observable has {k} distinct eigenvalues but the controller only {dim_c} levels; need k <= dim_c."
        )


def _scheme(projections, eigenvalues, labels, dim_c, kind, synthesise=None, provenance=None):
    dim_s = projections[0].shape[0]
    _check_outcomes(len(projections), dim_c)
    s, overlap = pointer_time(labels, dim_c)
    # a single outcome needs no evolution at all
    unitary = synthesise(s) if synthesise is not None and len(projections) > 1 else None
    observable_c = sum(mu * p for mu, p in zip(labels, projections))
    effective_h = HermitianOperator(np.kron(pointer_generator(dim_c), observable_c))
    scheme = MeasurementScheme(
        effective_h=effective_h,
        controller_init=uniform_state(dim_c),
        evolution_time=float(s),
        pointer_states=_pointers(labels, dim_c, s),
        projections=tuple(projections),
        eigenvalues=tuple(eigenvalues),
        labels=tuple(float(mu) for mu in labels),
        dim_c=dim_c,
        dim_s=dim_s,
        kind=kind,
        unitary=unitary,
        provenance=provenance or {},
    )
    if overlap > POINTER_TOL:
        logger.warning("Pointer states overlap up to %.3e.", overlap)
    logger.info("%s scheme: %d outcomes on a %d-level controller, s = %.6g.", kind, len(projections), dim_c, s)
    return scheme


def build_cqnd_scheme(a, dim_c):
    """
    Exact CQND measurement of ``a`` through ``sum_j j D (x) P_j`` for
    ``s = 2 pi / n``.

    Raises:
        PreconditionError: if ``a`` has more distinct eigenvalues than ``dim_c``.
    """
    eigenvalues, projections, _ = spectral_projections(a)
    _check_outcomes(len(eigenvalues), dim_c)
    labels = list(range(1, len(eigenvalues) + 1))
    return _scheme(projections, eigenvalues, labels, dim_c, kind="cqnd")


@dataclass(frozen=True, eq=False)
class MeasurementResult:
    probabilities: np.ndarray
    post_states: tuple
    born: np.ndarray
    leakage: float
    distance: float

    def json(self):
        return {
            "probabilities": self.probabilities.tolist(),
            "born_probabilities": self.born.tolist(),
            "leakage": self.leakage,
            "total_variation": self.distance,
            "post_states": [vector_to_json(x) if x is not None else None for x in self.post_states],
        }

    def print_on_screen(self, eigenvalues=None, console=None):
        console = console or Console()
        table = Table(title="Measurement outcomes")
        table.add_column("Outcome", style="cyan")
        table.add_column("Eigenvalue", style="magenta")
        table.add_column("Simulated", style="green")
        table.add_column("Born", style="green")
        for j, (p, q) in enumerate(zip(self.probabilities, self.born)):
            mu = f"{eigenvalues[j]:+.6g}" if eigenvalues is not None else "-"
            table.add_row(str(j), mu, f"{p:.9f}", f"{q:.9f}")
        console.print(table)
        console.print(f"Leakage: {self.leakage:.3e}   Total variation: {self.distance:.3e}")


def total_variation(p, q):
    return 0.5 * float(np.sum(np.abs(np.asarray(p) - np.asarray(q))))


def _check_state(psi, dim_s):
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.shape != (dim_s,):
        raise DimensionMismatchError(f"State of length {psi.size} on a {dim_s}-dim system.")
    if abs(np.linalg.norm(psi) - 1) > NORM_TOL:
        raise PreconditionError(f"State is not normalised (norm {np.linalg.norm(psi):.12f}).")
    return psi


def simulate_measurement(scheme, psi):
    """
    Run the scheme on ``|phi> (x) |psi>`` and read the pointers.

    Returns:
        MeasurementResult: outcome probabilities ``||<pointer_j| Psi||^2``,
        normalised post-measurement system states (None for zero-probability
        outcomes), the Born distribution, the weight outside the pointer span
        and the total-variation distance including it.

    Raises:
        PreconditionError: if the probabilities sum above one, i.e. the
        scheme's pointer states overlap.
    """
    psi = _check_state(psi, scheme.dim_s)
    joint = scheme.evolution() @ np.kron(scheme.controller_init, psi)
    amplitudes = joint.reshape(scheme.dim_c, scheme.dim_s)

    chis = [x.conj() @ amplitudes for x in scheme.pointer_states]
    probabilities = np.array([float(np.vdot(chi, chi).real) for chi in chis])
    post_states = tuple(chi / np.sqrt(p) if p > 1e-15 else None for chi, p in zip(chis, probabilities))
    born = np.array([float(np.vdot(psi, proj @ psi).real) for proj in scheme.projections])
    total = float(probabilities.sum())
    if total > 1.0 + PROBABILITY_SUM_TOL:
        raise PreconditionError(
            f"Outcome probabilities sum to {total:.12f} > 1: the pointer states are not orthogonal "
            f"(largest overlap {max_pointer_overlap(scheme):.3e})."
        )
    leakage = max(0.0, 1.0 - total)
    distance = total_variation(probabilities, born) + 0.5 * leakage
    return MeasurementResult(probabilities, post_states, born, leakage, distance)


def cqnd_check(scheme, a, n_times=20):
    """
    Largest disturbance ``1 - ||(1 (x) |psi><psi|) state(r)||^2`` over the
    eigenvectors ``psi`` of ``a`` and the times ``r = s i / n_times``.
    """
    a = as_array(a)
    if a.shape != (scheme.dim_s, scheme.dim_s):
        raise DimensionMismatchError(f"Observable of shape {a.shape} on a {scheme.dim_s}-dim system.")
    _, vectors = linalg.eigh(a)
    w, v = linalg.eigh(scheme.effective_h.matrix)
    worst = 0.0
    for i in range(1, n_times + 1):
        r = scheme.evolution_time * i / n_times
        u = (v * np.exp(1j * r * w)) @ v.conj().T
        for psi in vectors.T:
            state = (u @ np.kron(scheme.controller_init, psi)).reshape(scheme.dim_c, scheme.dim_s)
            kept = state @ psi.conj()
            worst = max(worst, 1.0 - float(np.vdot(kept, kept).real))
    return worst


@dataclass(frozen=True, eq=False)
class OneParameterResult:
    system_unitary: UnitaryOperator
    joint_unitary: UnitaryOperator
    residual: float


def implement_one_parameter_group(a, dim_c, s, level):
    """
    Run ``e^{i s D (x) A}`` with the controller in the ``level``-th eigenvector
    of ``D``: the system sees ``e^{i d_level s A}`` and the joint state stays a
    product.

    Returns:
        OneParameterResult: ``residual`` is the spectral norm of
        ``U (|l><l| (x) 1) - |l><l| (x) V``.
    """
    a = as_array(a)
    if not 0 <= level < dim_c:
        raise PreconditionError(f"level must lie in [0, {dim_c}), got {level}.")
    d = pointer_generator(dim_c)
    joint = expi_hermitian(np.kron(d, a), s)
    v = expi_hermitian(a, d[level, level].real * s)
    ket = np.zeros((dim_c, dim_c), dtype=complex)
    ket[level, level] = 1
    residual = float(linalg.norm(joint @ np.kron(ket, np.eye(len(a))) - np.kron(ket, v), 2))
    return OneParameterResult(UnitaryOperator(v), UnitaryOperator(joint), residual)


def _label_polynomial(eigenvalues):
    """
    Coefficients ``c_r`` (ascending powers) of the polynomial with
    ``p(mu_j) = j`` on the distinct eigenvalues. Negligible coefficients are
    zeroed, so an equidistant spectrum gives a degree one polynomial.
    """
    k = len(eigenvalues)
    if k == 1:
        return np.array([1.0])
    coeffs = np.polynomial.polynomial.polyfit(np.asarray(eigenvalues), np.arange(1, k + 1, dtype=float), k - 1)
    coeffs[np.abs(coeffs) <= LABEL_COEFF_TOL * np.max(np.abs(coeffs))] = 0.0
    return coeffs


def _signed_roots(t):
    """``(sign(t) sqrt|t|, sqrt|t|)``: scales whose bracket carries the factor ``t``."""
    root = np.sqrt(abs(t))
    return np.copysign(root, t), root


def _power_step(c, r, t, dim_c, m):
    """
    ``e^{i t D (x) c^r}`` for ``r >= 2`` from the ladder pair:
    ``i[E' (x) c^(r-1), F' (x) c] = i[E', F'] (x) c^r = D (x) c^r``.
    """
    ep, fp = ladder_pair(dim_c)
    x, y = _signed_roots(t)
    lower = np.linalg.matrix_power(c, r - 1)
    return commutator_procedure(x * np.kron(ep, lower), y * np.kron(fp, c), m, order=2).unitary.matrix


def _composite(c, dim_c, kind, linear_step, m, provenance):
    """
    Scheme for the composite observable ``c`` read out through
    ``D (x) sum_j j P_j`` exactly as ``build_cqnd_scheme`` does.

    ``sum_j j P_j = p(c)`` for the label polynomial ``p``. Its monomials commute,
    so ``e^{i s D (x) p(c)}`` is the exact product of the monomial evolutions:
    ``c_0`` is a controller rotation, ``c_1`` is synthesised by
    ``linear_step(t) ~ e^{i t D (x) c}`` and higher powers by ladder-pair group
    commutators.

    The controller operators of the supplied measurement Hamiltonians are not
    used beyond the caller's precondition checks: every evolution runs on the
    retargeted operators ``D``, ``G1, G2`` or ``E', F'``.
    """
    eigenvalues, projections, _ = spectral_projections(c)
    _check_outcomes(len(eigenvalues), dim_c)
    coeffs = _label_polynomial(eigenvalues)
    dim_s = len(c)

    def synthesise(s):
        u = np.kron(expi_hermitian(pointer_generator(dim_c), s * coeffs[0]), np.eye(dim_s))
        for r, coeff in enumerate(coeffs[1:], start=1):
            if coeff == 0.0:
                continue
            if r == 1:
                u = u @ linear_step(s * coeff)
            else:
                u = u @ _power_step(c, r, s * coeff, dim_c, m)
        # polar factor; the product of a few synthesised factors drifts slightly
        left, _, right = np.linalg.svd(u)
        return UnitaryOperator(left @ right)

    provenance = dict(
        provenance, m=m, controller_retargeting="effective-Hamiltonian level",
        label_polynomial=[float(x) for x in coeffs],
    )
    labels = list(range(1, len(eigenvalues) + 1))
    return _scheme(projections, eigenvalues, labels, dim_c, kind, synthesise=synthesise, provenance=provenance)


def _unpack(h_x):
    e, x = h_x
    return as_array(e), as_array(x)


def _unpack_pair(h_a, h_b):
    e, a = _unpack(h_a)
    f, b = _unpack(h_b)
    if e.shape != f.shape or a.shape != b.shape:
        raise DimensionMismatchError("Measurement Hamiltonians act on different spaces.")
    return e, a, f, b


def scheme_sum(h_a, h_b, m):
    """
    Measure ``a + b`` from the measurement Hamiltonians ``E (x) a`` and ``F (x) b``:
    both are retargeted to ``D (x) a``, ``D (x) b`` and combined by the second
    order Trotter formula with ``m`` steps. With ``b = 0`` the scheme is the
    one ``build_cqnd_scheme`` returns for ``a``.
    """
    e, a, _, b = _unpack_pair(h_a, h_b)
    dim_c = len(e)
    d = pointer_generator(dim_c)

    def linear_step(t):
        return trotter_procedure([(np.kron(d, a), t), (np.kron(d, b), t)], m, order=2).unitary.matrix

    return _composite(a + b, dim_c, "sum", linear_step, m, {"formula": "trotter-2"})


def commuting_factors(dim_c):
    """
    Commuting traceless diagonals ``G1, G2`` with ``G1 G2 = D``.

    ``G1`` is mirror symmetric; for odd ``n`` it is ``1`` off the middle and
    ``-(n - 1)`` in the middle, for even ``n = 2h`` each half reads
    ``(1, ..., 1, -(h - 1))``. Needs ``n >= 3``.
    """
    if dim_c < 3:
        raise PreconditionError(
            f"Commutator scheme needs a controller of dimension >= 3, got {dim_c}: "
            "for n = 2 every product of commuting traceless diagonals is proportional to 1."
        )
    half = dim_c // 2
    if dim_c % 2:
        g1 = np.ones(dim_c)
        g1[half] = -2 * half
    else:
        first = np.ones(half)
        first[-1] = -(half - 1)
        g1 = np.concatenate([first, first[::-1]])
    d = np.diag(pointer_generator(dim_c)).real
    g2 = np.divide(d, g1, out=np.zeros(dim_c), where=d != 0)
    return np.diag(g1).astype(complex), np.diag(g2).astype(complex)


def scheme_commutator(h_a, h_b, m):
    """
    Measure ``i[a, b]`` through ``i[G1 (x) a, G2 (x) b] = D (x) i[a, b]`` with a
    second order group commutator (``m^2`` steps).
    """
    e, a, _, b = _unpack_pair(h_a, h_b)
    dim_c = len(e)
    g1, g2 = commuting_factors(dim_c)
    c = 1j * commutator(a, b)
    c = (c + c.conj().T) / 2

    def linear_step(t):
        x, y = _signed_roots(t)
        return commutator_procedure(x * np.kron(g1, a), y * np.kron(g2, b), m, order=2).unitary.matrix

    return _composite(c, dim_c, "commutator", linear_step, m, {"formula": "group-commutator-2"})


def ladder_pair(dim_c):
    """
    Tridiagonal ``E', F'`` (spin ``y`` and ``x`` components) with ``i[E', F'] = D``.
    Link ``l -- l+1`` carries weight ``sqrt((l + 1)(n - 1 - l)) / 2``.
    """
    links = np.sqrt(np.arange(1, dim_c) * np.arange(dim_c - 1, 0, -1)) / 2
    jx = np.diag(links, 1) + np.diag(links, -1)
    jy = np.diag(1j * links, 1) + np.diag(-1j * links, -1)
    return jy.astype(complex), jx.astype(complex)


def scheme_jordan(h_a, h_b, m):
    """
    Measure ``ab + ba`` using
    ``i[E' (x) a, F' (x) b] + i[E' (x) b, F' (x) a] = i[E', F'] (x) (ab + ba)``
    with the ladder pair ``i[E', F'] = D``.

    Raises:
        PreconditionError: if the given ``E`` and ``F`` commute.
    """
    e, a, f, b = _unpack_pair(h_a, h_b)
    if np.linalg.norm(commutator(e, f)) <= 1e-12 * max(1.0, np.linalg.norm(e) * np.linalg.norm(f)):
        raise PreconditionError("Jordan scheme needs non-commuting controller operators E and F.")
    dim_c = len(e)
    ep, fp = ladder_pair(dim_c)
    c = anticommutator(a, b)
    c = (c + c.conj().T) / 2

    def linear_step(t):
        x, y = _signed_roots(t)
        pairs = [
            (x * np.kron(ep, a), y * np.kron(fp, b)),
            (x * np.kron(ep, b), y * np.kron(fp, a)),
        ]
        return commutator_sum_procedure(pairs, m).unitary.matrix

    return _composite(c, dim_c, "jordan", linear_step, m, {"formula": "symmetric-commutator-sum"})
