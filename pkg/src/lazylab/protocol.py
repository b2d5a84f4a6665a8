"""Discord detection, sparsity scans and bound-tightness sweeps.

These are the batch experiments the CLI fronts. All of them derive
per-trial generators from one seed, so results are reproducible and
independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .dynamics import decompose_hamiltonian, finite_difference_rate
from .laziness import laziness_commutator, moment_rate, rate_bounds
from .states import BipartiteState, derive_rng, ginibre_mixed, haar_random_pure, pure_state, random_hermitian

DEFAULT_DETECT_THRESHOLD = 1e-8
DEFAULT_LAZY_TOL = 1e-10


@dataclass(frozen=True)
class ProtocolVerdict:
    """Outcome of the purity-monitoring discord test.

    One-sided by construction: a detection implies nonzero discord, but
    silence implies nothing (maximally entangled states are lazy yet
    discordant).
    """

    samples: int
    max_abs_purity_rate: float
    threshold: float
    discord_detected: bool
    per_sample_rates: tuple[float, ...]


@dataclass(frozen=True)
class SparsitySummary:
    samples: int
    lazy_tol: float
    count_below_tol: int
    median_trace_norm: float
    min_trace_norm: float
    max_trace_norm: float
    histogram_edges: tuple[float, ...]
    histogram_counts: tuple[int, ...]


@dataclass(frozen=True)
class SweepRow:
    sample: int
    pure: bool
    entropy_rate: float
    entropy_bound: float
    entropy_slack: float
    purity_rate: float
    purity_bound: float
    purity_slack: float
    mi_purity_bound: float | None


def random_interaction(dim: int, ds: int, de: int, rng) -> np.ndarray:
    """GUE coupling reduced to traceless-partial-trace form, operator norm 1."""
    h = random_hermitian(dim, rng)
    h_int = decompose_hamiltonian(h, ds, de).h_int
    nrm = linalg.operator_norm(h_int)
    if nrm == 0.0:
        raise ValueError("sampled interaction collapsed to zero")
    return h_int / nrm


def detect_discord(
    rho: BipartiteState,
    samples: int,
    seed: int,
    threshold: float = DEFAULT_DETECT_THRESHOLD,
    use_fd: bool = False,
    fd_step: float = 1e-5,
) -> ProtocolVerdict:
    """Probe the state with random unit-norm couplings and watch the purity.

    Any nonzero purity rate certifies that the state is not lazy, hence
    not classically correlated: discord is detected from the reduced
    dynamics alone. ``use_fd`` replaces the exact rate with a central
    finite difference of the purity, mimicking an experiment that can
    only measure purity at nearby times.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rates = []
    for trial in range(samples):
        rng = derive_rng(seed, trial)
        h_int = random_interaction(rho.dim, rho.ds, rho.de, rng)
        if use_fd:
            rate = finite_difference_rate(rho, h_int, "moment", n=2, h=fd_step)
        else:
            rate = moment_rate(rho, h_int, 2)
        rates.append(rate)
    max_abs = max(abs(r) for r in rates)
    return ProtocolVerdict(
        samples=samples,
        max_abs_purity_rate=max_abs,
        threshold=threshold,
        discord_detected=bool(max_abs > threshold),
        per_sample_rates=tuple(rates),
    )


def sparsity_scan(
    ds: int,
    de: int,
    samples: int,
    rank: int,
    seed: int,
    lazy_tol: float = DEFAULT_LAZY_TOL,
    include: BipartiteState | None = None,
    bins: int = 20,
) -> SparsitySummary:
    """Ginibre-sample states and histogram the commutator trace norm.

    ``include`` injects one given state as sample 0 (a plumbing hook for
    checking that genuinely lazy inputs are counted). The count below
    lazy_tol is the headline number; lazy states occupy measure zero
    under this sampling, so the expected count is zero.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    norms = []
    for trial in range(samples):
        if include is not None and trial == 0:
            state = include
        else:
            rho = ginibre_mixed(ds * de, rank, derive_rng(seed, trial))
            state = BipartiteState(ds=ds, de=de, matrix=rho)
        norms.append(laziness_commutator(state).trace_norm)
    arr = np.asarray(norms)
    hi = float(arr.max())
    edges = np.linspace(0.0, hi if hi > 0 else 1.0, bins + 1)
    counts, _ = np.histogram(arr, bins=edges)
    return SparsitySummary(
        samples=samples,
        lazy_tol=lazy_tol,
        count_below_tol=int((arr < lazy_tol).sum()),
        median_trace_norm=float(np.median(arr)),
        min_trace_norm=float(arr.min()),
        max_trace_norm=hi,
        histogram_edges=tuple(float(e) for e in edges),
        histogram_counts=tuple(int(c) for c in counts),
    )


def bound_sweep(ds: int, de: int, samples: int, seed: int) -> list[SweepRow]:
    """Random (state, coupling) pairs with the slack of every rate bound.

    Even trials draw full-rank Ginibre mixed states; odd trials draw Haar
    pure states when ds <= de (their reduced state is then full rank
    almost surely), so the pure-only mutual-information bound is
    exercised. For ds > de a pure state's rho_S is structurally rank
    deficient, so only mixed states are sampled.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rows = []
    for trial in range(samples):
        rng = derive_rng(seed, trial)
        if trial % 2 == 1 and ds <= de:
            rho = pure_state(haar_random_pure(ds * de, rng), ds, de)
        else:
            rho = BipartiteState(ds=ds, de=de, matrix=ginibre_mixed(ds * de, ds * de, rng))
        h_int = random_interaction(ds * de, ds, de, rng)
        report = rate_bounds(rho, h_int)
        rows.append(
            SweepRow(
                sample=trial,
                pure=rho.is_pure(),
                entropy_rate=report.entropy_rate,
                entropy_bound=report.entropy_bound,
                entropy_slack=report.entropy_bound - abs(report.entropy_rate),
                purity_rate=report.purity_rate,
                purity_bound=report.purity_bound,
                purity_slack=report.purity_bound - abs(report.purity_rate),
                mi_purity_bound=report.mi_purity_bound,
            )
        )
    return rows
