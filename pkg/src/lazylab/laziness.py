"""Laziness commutator, exact rate formulas, rate bounds and correlation measures.

A bipartite state is lazy when [rho_S (x) I, rho_SE] = 0; equivalently
its system entropy rate vanishes for every interaction Hamiltonian, and
it is invariant under the spectral pinching of rho_S. The functions here
evaluate the commutator, the exact entropy/moment rates (hbar = 1, nats),
the universal bounds on those rates, and the correlation quantities the
bounds are made of.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .states import BipartiteState, SpectralProjection, schmidt_decompose, spectral_projection

# lazy <=> trace norm of the commutator below tol; scaled with the total
# dimension because the commutator entries accumulate O(dim) roundoff.
LAZY_TOL_PER_DIM = 1e-10

# Gate for treating rho_SE as pure (purity above 1 - PURITY_TOL).
PURITY_TOL = 1e-10

IMAG_TOL = 1e-10


class RankDeficientStateError(ValueError):
    """rho_S has an eigenvalue too small for ln(rho_S) to be meaningful."""


@dataclass(frozen=True)
class CommutatorReport:
    """[rho_S (x) I, rho_SE] together with its norms and the lazy verdict."""

    commutator: np.ndarray
    trace_norm: float
    frobenius_norm: float
    lazy: bool
    tolerance: float


@dataclass(frozen=True)
class RateReport:
    """Exact rates and their universal bounds for one (state, H_int) pair.

    Rates are nats (entropy) or purity units per unit time; bounds come
    from the Schatten inequality |tr(A sigma)| <= ||A|| * ||sigma||_1 with
    ||H_int|| the operator norm (recorded in h_int_norm_kind).
    mi_purity_bound is populated only when the total state is pure.
    """

    entropy_rate: float
    purity_rate: float
    moment_rates: dict[int, float]
    entropy_bound: float
    purity_bound: float
    mi_purity_bound: float | None
    h_int_operator_norm: float
    ln_commutator_trace_norm: float
    h_int_norm_kind: str = field(default="operator")


@dataclass(frozen=True)
class CorrelationReport:
    """Entropies and correlation measures of a bipartite state.

    The pure-only fields (entanglement entropy, discord, robustness) are
    None for mixed input; negativity is defined for any state via the
    partial transpose.
    """

    mutual_information: float
    negativity: float
    system_entropy: float
    environment_entropy: float
    total_entropy: float
    entanglement_entropy: float | None
    pure_discord: float | None
    robustness_pure: float | None


@dataclass(frozen=True)
class PureStateAnalytics:
    """Closed-form laziness quantities from a Schmidt spectrum alone."""

    is_lazy: bool
    commutator_trace_norm: float
    entrywise_bound: float
    robustness: float


def von_neumann_entropy(rho) -> float:
    """S(rho) = -tr(rho ln rho) in nats, with 0 ln 0 = 0."""
    mat = linalg.require_hermitian(rho, name="rho")
    lam = np.linalg.eigvalsh(mat)
    lam = np.clip(lam, 0.0, 1.0)
    nz = lam[lam > 0.0]
    return float(-(nz * np.log(nz)).sum()) + 0.0  # normalize -0.0


def purity(rho) -> float:
    """tr(rho^2) = the N=2 moment."""
    mat = linalg.as_complex_matrix(rho)
    return float(np.linalg.norm(mat) ** 2)


def moments(rho, ns) -> dict[int, float]:
    """tr(rho^N) for each requested power N >= 1."""
    mat = linalg.require_hermitian(rho, name="rho")
    lam = np.linalg.eigvalsh(mat)
    out: dict[int, float] = {}
    for n in ns:
        n = int(n)
        if n < 1:
            raise ValueError(f"moment order must be >= 1, got {n}")
        out[n] = float((lam**n).sum())
    return out


def default_lazy_tolerance(rho: BipartiteState) -> float:
    return LAZY_TOL_PER_DIM * rho.ds * rho.de


def laziness_commutator(rho: BipartiteState, tol: float | None = None) -> CommutatorReport:
    """[rho_S (x) I, rho_SE] with trace norm and lazy verdict."""
    if tol is None:
        tol = default_lazy_tolerance(rho)
    comm = linalg.commutator(linalg.kron(rho.rho_s, np.eye(rho.de)), rho.matrix)
    tn = linalg.trace_norm(comm)
    return CommutatorReport(
        commutator=comm,
        trace_norm=tn,
        frobenius_norm=float(np.linalg.norm(comm)),
        lazy=bool(tn <= tol),
        tolerance=float(tol),
    )


def spectral_pinch(rho: BipartiteState, proj: SpectralProjection) -> BipartiteState:
    """sum_j (Pi_j (x) I) rho (Pi_j (x) I) for system-space projectors."""
    total = np.zeros((rho.ds, rho.ds), dtype=complex)
    for p in proj.projectors:
        if p.shape != (rho.ds, rho.ds):
            raise ValueError(
                f"projector shape {p.shape} does not span the system space "
                f"(dimension {rho.ds})"
            )
        total += p
    if np.linalg.norm(total - np.eye(rho.ds)) > 1e-8:
        raise ValueError("projectors do not resolve the identity on the system")
    eye_e = np.eye(rho.de)
    out = np.zeros_like(rho.matrix)
    for p in proj.projectors:
        lifted = linalg.kron(p, eye_e)
        out += lifted @ rho.matrix @ lifted
    return BipartiteState(ds=rho.ds, de=rho.de, matrix=out)


def pinching_residual(rho: BipartiteState, cluster_tol: float = 1e-8) -> float:
    """||rho - pinch(rho)||_1 with projectors from rho_S's own spectrum.

    Zero exactly on lazy states; both sides of that equivalence use the
    same clustering tolerance for degenerate system spectra.
    """
    proj = spectral_projection(rho.rho_s, cluster_tol=cluster_tol)
    pinched = spectral_pinch(rho, proj)
    return linalg.trace_norm(rho.matrix - pinched.matrix)


def regularize_state(rho: BipartiteState, delta: float) -> BipartiteState:
    """(1 - delta) rho + delta I/dim, pushing rho_S away from rank deficiency."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"regularization weight must be in (0, 1), got {delta}")
    dim = rho.dim
    mat = (1.0 - delta) * rho.matrix + delta * np.eye(dim) / dim
    return BipartiteState(ds=rho.ds, de=rho.de, matrix=mat)


def _require_real(value: complex, *, what: str) -> float:
    if abs(value.imag) > IMAG_TOL:
        raise ValueError(f"{what} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def _check_h_int(rho: BipartiteState, h_int) -> np.ndarray:
    h = linalg.require_hermitian(h_int, name="h_int")
    if h.shape != (rho.dim, rho.dim):
        raise ValueError(
            f"h_int shape {h.shape} does not match the state dimension {rho.dim}"
        )
    return h


def _log_commutator(rho: BipartiteState) -> np.ndarray:
    """K = [ln(rho_S) (x) I, rho_SE]; anti-Hermitian, zero iff lazy."""
    lam_min = float(np.linalg.eigvalsh(rho.rho_s)[0])
    if lam_min < linalg.LOG_EIGENVALUE_FLOOR:
        raise RankDeficientStateError(
            f"rho_S has eigenvalue {lam_min:.3e} below "
            f"{linalg.LOG_EIGENVALUE_FLOOR:.1e}; pass regularize=delta to mix "
            f"with the maximally mixed state first"
        )
    log_s = linalg.matrix_log(rho.rho_s, name="rho_S")
    return linalg.commutator(linalg.kron(log_s, np.eye(rho.de)), rho.matrix)


def _prepared(rho: BipartiteState, regularize: float | None) -> BipartiteState:
    return rho if regularize is None else regularize_state(rho, regularize)


def entropy_rate(rho: BipartiteState, h_int, regularize: float | None = None) -> float:
    """Exact dS/dt of the system under H_int: -i tr{H_int [ln(rho_S) (x) I, rho_SE]}.

    Requires rho_S to be full rank; with ``regularize=delta`` the state is
    first mixed as (1-delta) rho + delta I/dim. The result is exact for
    arbitrary coupling strength and needs no Markovian assumption.
    """
    h = _check_h_int(rho, h_int)
    state = _prepared(rho, regularize)
    k = _log_commutator(state)
    val = -1j * np.trace(h @ k)
    return _require_real(complex(val), what="entropy rate")


def moment_rate(rho: BipartiteState, h_int, n: int) -> float:
    """Exact d/dt tr(rho_S^N) = i N tr{H_int [rho_S^{N-1} (x) I, rho_SE]}.

    N = 1 returns zero identically (trace preservation); N = 2 is the
    purity rate. Well-defined for rank-deficient rho_S, unlike the
    entropy rate.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"moment order must be >= 1, got {n}")
    h = _check_h_int(rho, h_int)
    power = np.linalg.matrix_power(rho.rho_s, n - 1)
    k = linalg.commutator(linalg.kron(power, np.eye(rho.de)), rho.matrix)
    val = 1j * n * np.trace(h @ k)
    return _require_real(complex(val), what=f"moment-{n} rate")


def purity_rate(rho: BipartiteState, h_int) -> float:
    return moment_rate(rho, h_int, 2)


def rate_bounds(
    rho: BipartiteState,
    h_int,
    ns: tuple[int, ...] = (),
    regularize: float | None = None,
) -> RateReport:
    """Exact rates plus their universal bounds for one (state, H_int) pair.

    entropy_bound = ||H_int|| ||[ln(rho_S) (x) I, rho_SE]||_1,
    purity_bound = 2 ||H_int|| ||C||_1, and for pure total states also
    mi_purity_bound = 4 ||H_int|| sqrt(2 I).
    """
    h = _check_h_int(rho, h_int)
    state = _prepared(rho, regularize)
    h_norm = linalg.operator_norm(h)

    k = _log_commutator(state)
    ln_comm_tn = linalg.trace_norm(k)
    s_rate = _require_real(complex(-1j * np.trace(h @ k)), what="entropy rate")

    comm = laziness_commutator(state)
    p_rate = moment_rate(state, h, 2)
    rates = {n: moment_rate(state, h, n) for n in ns}

    mi_bound = None
    if rho.is_pure(tol=PURITY_TOL):
        mi = correlation_measures(rho).mutual_information
        mi_bound = 4.0 * h_norm * np.sqrt(2.0 * max(mi, 0.0))

    return RateReport(
        entropy_rate=s_rate,
        purity_rate=p_rate,
        moment_rates=rates,
        entropy_bound=h_norm * ln_comm_tn,
        purity_bound=2.0 * h_norm * comm.trace_norm,
        mi_purity_bound=mi_bound,
        h_int_operator_norm=h_norm,
        ln_commutator_trace_norm=ln_comm_tn,
    )


def witness_hamiltonian(
    rho: BipartiteState, regularize: float | None = None
) -> tuple[np.ndarray, float]:
    """Interaction H_int = i [ln(rho_S) (x) I, rho_SE] and its entropy rate.

    The construction makes the entropy rate equal -||K||_F^2, strictly
    negative for every non-lazy state and zero exactly on lazy ones. Both
    partial traces of the returned H_int vanish, so it is a valid
    interaction term without local components. With ``regularize`` the
    witness and prediction refer to the regularized state.
    """
    state = _prepared(rho, regularize)
    k = _log_commutator(state)
    h_int = 1j * k
    h_int = (h_int + linalg.dagger(h_int)) / 2
    predicted = -float(np.linalg.norm(k) ** 2)
    return h_int, predicted


def negativity(rho: BipartiteState) -> float:
    """(||rho^{T_S}||_1 - 1) / 2, non-negative."""
    pt = linalg.partial_transpose_system(rho.matrix, rho.ds, rho.de)
    return max(0.0, (linalg.trace_norm(pt) - 1.0) / 2.0)


def _pure_vector(rho: BipartiteState) -> np.ndarray:
    spec = linalg.hermitian_eig(rho.matrix, name="rho")
    return spec.eigenvectors[:, -1]


def correlation_measures(rho: BipartiteState) -> CorrelationReport:
    """Mutual information, negativity and the pure-state correlation set.

    For pure total states the mutual information equals twice the
    entanglement entropy, which also equals twice the (system-to-
    environment) discord, and the robustness equals twice the negativity.
    """
    s_sys = von_neumann_entropy(rho.rho_s)
    s_env = von_neumann_entropy(rho.rho_e)
    s_tot = von_neumann_entropy(rho.matrix)
    mi = s_sys + s_env - s_tot

    ent = disc = rob = None
    if rho.is_pure(tol=PURITY_TOL):
        ent = s_sys
        disc = s_sys
        chi = _pure_vector(rho)
        sd = schmidt_decompose(chi, rho.ds, rho.de)
        rob = float(sd.coefficients.sum() ** 2 - 1.0)

    return CorrelationReport(
        mutual_information=mi,
        negativity=negativity(rho),
        system_entropy=s_sys,
        environment_entropy=s_env,
        total_entropy=s_tot,
        entanglement_entropy=ent,
        pure_discord=disc,
        robustness_pure=rob,
    )


def pure_state_analytics(schmidt) -> PureStateAnalytics:
    """Laziness quantities of a pure state from its Schmidt spectrum.

    The commutator of |chi><chi| lives on the span of the Schmidt product
    vectors, where it acts as the antisymmetric matrix
    M_ik = sqrt(p_i p_k)(p_i - p_k); its trace norm, the entrywise
    triangle bound sum_{i != k} |M_ik|, and the robustness
    (sum_i sqrt(p_i))^2 - 1 form an increasing chain. A pure state is
    lazy exactly when the spectrum is uniform, p_i = 1/rank.
    """
    p = np.asarray(schmidt.coefficients, dtype=float) ** 2
    s = int(schmidt.rank)
    is_lazy = bool(np.max(np.abs(p - 1.0 / s)) <= 1e-10)

    m = np.sqrt(np.outer(p, p)) * (p[:, None] - p[None, :])
    tn = float(np.linalg.svd(m, compute_uv=False).sum())
    entrywise = float(np.abs(m).sum())
    robustness = float(np.sqrt(p).sum() ** 2 - 1.0)
    return PureStateAnalytics(
        is_lazy=is_lazy,
        commutator_trace_norm=tn,
        entrywise_bound=entrywise,
        robustness=robustness,
    )
