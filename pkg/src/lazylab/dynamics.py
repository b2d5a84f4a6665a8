"""Closed-form unitary evolution, Hamiltonian decomposition and rate oracles.

Evolution uses the spectral decomposition of the (time-independent)
total Hamiltonian, so rates extracted by finite differences are limited
only by the O(h^2) truncation of the stencil, not by integrator error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .laziness import (
    RankDeficientStateError,
    default_lazy_tolerance,
    laziness_commutator,
    moments,
    rate_bounds,
    von_neumann_entropy,
)
from .states import BipartiteState

FD_STEP = 1e-5


@dataclass(frozen=True)
class HamiltonianTriple:
    """H_tot = h_s (x) I + I (x) h_e + h_int with partial-traceless h_int.

    ``shift_split`` records how the scalar trace part was apportioned
    between the two local terms (c/2 each); no observable depends on it.
    """

    h_s: np.ndarray
    h_e: np.ndarray
    h_int: np.ndarray
    shift_split: float

    def reassemble(self) -> np.ndarray:
        ds = self.h_s.shape[0]
        de = self.h_e.shape[0]
        return (
            linalg.kron(self.h_s, np.eye(de))
            + linalg.kron(np.eye(ds), self.h_e)
            + self.h_int
        )


@dataclass(frozen=True)
class TrajectoryRecord:
    """Observables of the reduced system at one sample time."""

    entropy: float
    purity: float
    moment_values: dict[int, float]
    comm_trace_norm: float
    entropy_rate: float
    entropy_bound: float
    purity_rate: float
    purity_bound: float


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    records: tuple[TrajectoryRecord, ...]


def decompose_hamiltonian(h_tot, ds: int, de: int) -> HamiltonianTriple:
    """Split H_tot into local parts and an interaction with vanishing partial traces.

    With A = tr_E(H)/de, B = tr_S(H)/ds and c = tr(H)/(ds*de):
    h_int = H - A (x) I - I (x) B + c I, h_s = A - (c/2) I, h_e = B - (c/2) I.
    Both partial traces of h_int vanish and the triple reassembles H exactly.
    """
    h = linalg.require_hermitian(h_tot, name="h_tot")
    dim = ds * de
    if h.shape != (dim, dim):
        raise ValueError(f"h_tot shape {h.shape} does not match dims ({ds}, {de})")
    a = linalg.partial_trace(h, ds, de, keep="system") / de
    b = linalg.partial_trace(h, ds, de, keep="environment") / ds
    c = float(np.trace(h).real) / dim
    h_int = (
        h
        - linalg.kron(a, np.eye(de))
        - linalg.kron(np.eye(ds), b)
        + c * np.eye(dim)
    )
    return HamiltonianTriple(
        h_s=a - (c / 2.0) * np.eye(ds),
        h_e=b - (c / 2.0) * np.eye(de),
        h_int=h_int,
        shift_split=c / 2.0,
    )


def evolve_exact(rho: BipartiteState, h_tot, t: float) -> BipartiteState:
    """rho(t) = e^{-i H t} rho e^{i H t} (hbar = 1)."""
    u = linalg.unitary_from_hamiltonian(h_tot, t)
    mat = u @ rho.matrix @ linalg.dagger(u)
    mat = (mat + linalg.dagger(mat)) / 2
    return BipartiteState(ds=rho.ds, de=rho.de, matrix=mat)


def _observable_of_reduced(rho: BipartiteState, observable: str, n: int) -> float:
    if observable == "entropy":
        return von_neumann_entropy(rho.rho_s)
    if observable == "moment":
        return moments(rho.rho_s, [n])[n]
    raise ValueError(f"observable must be 'entropy' or 'moment', got {observable!r}")


def finite_difference_rate(
    rho: BipartiteState,
    h_tot,
    observable: str = "entropy",
    *,
    n: int = 2,
    h: float = FD_STEP,
    richardson: bool = False,
) -> float:
    """Central-difference rate of a reduced-system observable at t = 0.

    ``observable`` is "entropy" or "moment" (power ``n``). Independent of
    the analytic rate formulas: it only evolves the state to +-h and
    differences the observable, converging as O(h^2).
    ``richardson=True`` combines the h and h/2 stencils into the
    extrapolated (4 f(h/2) - f(h)) / 3 estimate, removing the leading
    truncation term.
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    if observable not in ("entropy", "moment"):
        raise ValueError(f"observable must be 'entropy' or 'moment', got {observable!r}")
    if richardson:
        coarse = finite_difference_rate(rho, h_tot, observable, n=n, h=h)
        fine = finite_difference_rate(rho, h_tot, observable, n=n, h=h / 2.0)
        return (4.0 * fine - coarse) / 3.0
    plus = evolve_exact(rho, h_tot, h)
    minus = evolve_exact(rho, h_tot, -h)
    if observable == "entropy":
        # near a zero eigenvalue the entropy difference quotient is a poor
        # approximant of a derivative that may not even exist
        for st in (plus, minus):
            lam_min = float(np.linalg.eigvalsh(st.rho_s)[0])
            if lam_min < linalg.LOG_EIGENVALUE_FLOOR:
                raise RankDeficientStateError(
                    f"rho_S at t = +-{h:g} has eigenvalue {lam_min:.3e}; use a "
                    f"smaller step or regularize the state first"
                )
    lhs = _observable_of_reduced(plus, observable, n)
    rhs = _observable_of_reduced(minus, observable, n)
    return (lhs - rhs) / (2.0 * h)


def record_trajectory(
    rho0: BipartiteState,
    h_tot,
    times,
    ns: tuple[int, ...] = (),
    regularize: float | None = None,
) -> Trajectory:
    """Evolve rho0 under H_tot and record rates and bounds at each time.

    Rates use the interaction part of the decomposed Hamiltonian; the
    local parts provably contribute nothing. Entropy-rate evaluation
    requires full-rank rho_S at every sample (or ``regularize``).
    """
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    if np.any(np.diff(ts) < 0):
        raise ValueError("times must be sorted ascending")

    triple = decompose_hamiltonian(h_tot, rho0.ds, rho0.de)
    spec = linalg.hermitian_eig(triple.reassemble(), name="h_tot")

    records = []
    for t in ts:
        u = (spec.eigenvectors * np.exp(-1j * spec.eigenvalues * t)) @ linalg.dagger(
            spec.eigenvectors
        )
        mat = u @ rho0.matrix @ linalg.dagger(u)
        state = BipartiteState(ds=rho0.ds, de=rho0.de, matrix=(mat + linalg.dagger(mat)) / 2)
        comm = laziness_commutator(state)
        report = rate_bounds(state, triple.h_int, ns=tuple(ns), regularize=regularize)
        records.append(
            TrajectoryRecord(
                entropy=von_neumann_entropy(state.rho_s),
                purity=float(np.linalg.norm(state.rho_s) ** 2),
                moment_values=moments(state.rho_s, ns) if ns else {},
                comm_trace_norm=comm.trace_norm,
                entropy_rate=report.entropy_rate,
                entropy_bound=report.entropy_bound,
                purity_rate=report.purity_rate,
                purity_bound=report.purity_bound,
            )
        )
    return Trajectory(times=ts, records=tuple(records))


def lazy_rate_ceiling(rho: BipartiteState, h_int) -> float:
    """10 * lazy_tol * ||h_int||: the rate scale a lazy verdict permits."""
    return 10.0 * default_lazy_tolerance(rho) * linalg.operator_norm(h_int)
