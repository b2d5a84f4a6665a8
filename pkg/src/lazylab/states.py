"""Construction, sampling and decomposition of density matrices and pure states.

Every sampler takes an explicit seed and derives independent streams
through numpy's SeedSequence, so batch runs are reproducible trial by
trial. Density matrices are plain complex arrays validated at the
construction sites; bipartite states carry their subsystem dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg

DENSITY_TOL = 1e-10
SCHMIDT_CUTOFF = 1e-12
CLUSTER_TOL = 1e-8


def derive_rng(seed, *path: int) -> np.random.Generator:
    """Deterministic generator for (seed, trial, ...) tuples.

    Distinct paths give statistically independent streams, so Monte Carlo
    trials can be generated out of order or in parallel with identical
    results.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence((int(seed), *path)))


def validate_density_matrix(rho, *, tol: float = DENSITY_TOL, name: str = "rho") -> np.ndarray:
    """Check Hermiticity, unit trace and positivity (up to -tol)."""
    mat = linalg.as_complex_matrix(rho)
    if mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{name} must be square, got shape {mat.shape}")
    defect = np.linalg.norm(mat - linalg.dagger(mat))
    if defect > tol * (1.0 + np.linalg.norm(mat)):
        raise ValueError(f"{name} is not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(mat))
    if abs(tr - 1.0) > tol:
        raise ValueError(f"{name} has trace {tr:.12g}, expected 1")
    lam_min = float(np.linalg.eigvalsh((mat + linalg.dagger(mat)) / 2)[0])
    if lam_min < -tol:
        raise ValueError(f"{name} has negative eigenvalue {lam_min:.3e}")
    return mat


@dataclass(frozen=True)
class BipartiteState:
    """A density matrix on a system (x) environment tensor space.

    ``matrix`` is (ds*de) x (ds*de) with row index i_s * de + i_e.
    Construction validates the density-matrix invariants.
    """

    ds: int
    de: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.ds < 1 or self.de < 1:
            raise ValueError("subsystem dimensions must be positive")
        mat = validate_density_matrix(self.matrix, name="bipartite state")
        if mat.shape != (self.dim, self.dim):
            raise ValueError(
                f"matrix shape {mat.shape} does not match dims ({self.ds}, {self.de})"
            )
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.ds * self.de

    @cached_property
    def rho_s(self) -> np.ndarray:
        return linalg.partial_trace(self.matrix, self.ds, self.de, keep="system")

    @cached_property
    def rho_e(self) -> np.ndarray:
        return linalg.partial_trace(self.matrix, self.ds, self.de, keep="environment")

    def purity(self) -> float:
        return float(np.linalg.norm(self.matrix) ** 2)

    def is_pure(self, *, tol: float = 1e-10) -> bool:
        return self.purity() > 1.0 - tol


@dataclass(frozen=True)
class SchmidtDecomposition:
    """chi = sum_i coefficients[i] * left[:, i] (x) right[:, i].

    Coefficients are the positive Schmidt weights sqrt(p_i), descending;
    their squares sum to one. ``rank`` counts coefficients above the cutoff.
    """

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int

    def probabilities(self) -> np.ndarray:
        return self.coefficients**2

    def reconstruct(self) -> np.ndarray:
        ds = self.left_vectors.shape[0]
        de = self.right_vectors.shape[0]
        chi = np.zeros(ds * de, dtype=complex)
        for k in range(self.rank):
            chi += self.coefficients[k] * np.kron(
                self.left_vectors[:, k], self.right_vectors[:, k]
            )
        return chi


@dataclass(frozen=True)
class SpectralProjection:
    """Spectral projectors of a Hermitian operator, degenerate values merged.

    ``values`` are the distinct (clustered) eigenvalues, descending;
    ``projectors[j]`` projects onto the eigenspace of values[j] and has
    rank ``multiplicities[j]``.
    """

    projectors: tuple[np.ndarray, ...]
    values: np.ndarray
    multiplicities: tuple[int, ...]

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.projectors[0])
        for val, proj in zip(self.values, self.projectors):
            out = out + val * proj
        return out


def pure_state(chi, ds: int, de: int) -> BipartiteState:
    """|chi><chi| as a BipartiteState for a unit vector chi."""
    vec = np.asarray(chi, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"state vector has norm {nrm:.12g}, expected 1")
    if vec.size != ds * de:
        raise ValueError(f"vector length {vec.size} does not match dims ({ds}, {de})")
    return BipartiteState(ds=ds, de=de, matrix=np.outer(vec, vec.conj()))


def product_state(rho_s, rho_e) -> BipartiteState:
    """rho_s (x) rho_e; the reduced states reproduce the factors."""
    s = validate_density_matrix(rho_s, name="system factor")
    e = validate_density_matrix(rho_e, name="environment factor")
    return BipartiteState(ds=s.shape[0], de=e.shape[0], matrix=linalg.kron(s, e))


def haar_random_pure(d: int, seed) -> np.ndarray:
    """Unit vector drawn from the Haar-invariant distribution on C^d."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = derive_rng(seed)
    vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return vec / np.linalg.norm(vec)


def haar_random_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed unitary via QR with phase-fixed diagonal."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = derive_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def ginibre_mixed(d: int, rank: int, seed) -> np.ndarray:
    """Random density matrix rho = G G† / tr(G G†), G complex Gaussian d x rank."""
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    rng = derive_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ linalg.dagger(g)
    rho /= np.trace(rho).real
    return (rho + linalg.dagger(rho)) / 2


def random_hermitian(d: int, seed) -> np.ndarray:
    """GUE matrix H = (A + A†)/2 with A standard complex Gaussian.

    Off-diagonal entries have E|H_ij|^2 = 1, so the spectral radius is
    about 2*sqrt(d) for large d.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = derive_rng(seed)
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (a + linalg.dagger(a)) / 2


def maximally_entangled(d: int) -> BipartiteState:
    """(1/sqrt(d)) sum_i |ii> as a density matrix; rho_s = I/d."""
    if d < 2:
        raise ValueError("maximally entangled states need dimension >= 2")
    mat = np.zeros((d * d, d * d), dtype=complex)
    diag = [i * d + i for i in range(d)]
    for i in diag:
        for j in diag:
            mat[i, j] = 1.0 / d
    return BipartiteState(ds=d, de=d, matrix=mat)


def zero_discord_state(
    probs: Sequence[float],
    basis: Sequence[np.ndarray],
    env_states: Sequence[np.ndarray],
) -> BipartiteState:
    """Classically correlated state sum_j p_j |b_j><b_j| (x) rho_j.

    ``basis`` must be orthonormal vectors on the system space, one per
    probability; ``env_states`` are density matrices on a common
    environment space.
    """
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("probs must be a non-empty 1-D sequence")
    if np.any(p < -1e-12):
        raise ValueError("probs must be non-negative")
    if abs(p.sum() - 1.0) > 1e-10:
        raise ValueError(f"probs sum to {p.sum():.12g}, expected 1")
    if len(basis) != p.size or len(env_states) != p.size:
        raise ValueError("probs, basis and env_states must have matching lengths")

    vecs = [np.asarray(b, dtype=complex).reshape(-1) for b in basis]
    ds = vecs[0].size
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            overlap = np.vdot(u, v)
            expected = 1.0 if i == j else 0.0
            if abs(overlap - expected) > 1e-10:
                raise ValueError(f"basis vectors {i}, {j} are not orthonormal")

    envs = [validate_density_matrix(e, name=f"env_states[{j}]") for j, e in enumerate(env_states)]
    de = envs[0].shape[0]
    if any(e.shape != (de, de) for e in envs):
        raise ValueError("env_states must share one dimension")

    mat = np.zeros((ds * de, ds * de), dtype=complex)
    for pj, bj, ej in zip(p, vecs, envs):
        mat += pj * linalg.kron(np.outer(bj, bj.conj()), ej)
    return BipartiteState(ds=ds, de=de, matrix=mat)


def schmidt_decompose(chi, ds: int, de: int, cutoff: float = SCHMIDT_CUTOFF) -> SchmidtDecomposition:
    """Schmidt decomposition of a unit vector on C^ds (x) C^de."""
    vec = np.asarray(chi, dtype=complex).reshape(-1)
    if vec.size != ds * de:
        raise ValueError(f"vector length {vec.size} does not match dims ({ds}, {de})")
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"state vector has norm {nrm:.12g}, expected 1")
    u, s, vh = np.linalg.svd(vec.reshape(ds, de), full_matrices=False)
    rank = int(np.count_nonzero(s > cutoff))
    if rank == 0:
        raise ValueError("all Schmidt coefficients fell below the cutoff")
    coeffs = s[:rank]
    coeffs = coeffs / np.linalg.norm(coeffs)  # re-normalize after truncation
    return SchmidtDecomposition(
        coefficients=coeffs,
        left_vectors=u[:, :rank],
        right_vectors=vh[:rank, :].T,
        rank=rank,
    )


def purify(rho, ancilla_basis: np.ndarray | None = None) -> tuple[np.ndarray, int, int]:
    """Purify a density matrix into (chi, d_system, d_ancilla).

    chi = sum_i sqrt(lam_i) v_i (x) a_i over the spectral pairs of rho,
    with the ancilla dimension equal to rank(rho). Tracing the ancilla
    out of |chi><chi| recovers rho.
    """
    mat = validate_density_matrix(rho)
    spec = linalg.hermitian_eig(mat, name="rho")
    keep = spec.eigenvalues > SCHMIDT_CUTOFF
    lams = spec.eigenvalues[keep][::-1]
    vecs = spec.eigenvectors[:, keep][:, ::-1]
    d = mat.shape[0]
    da = int(lams.size)
    if ancilla_basis is None:
        ancilla = np.eye(da, dtype=complex)
    else:
        ancilla = linalg.as_complex_matrix(ancilla_basis)
        if ancilla.shape != (da, da):
            raise ValueError(f"ancilla basis must be {da} x {da}")
    chi = np.zeros(d * da, dtype=complex)
    for k in range(da):
        chi += np.sqrt(lams[k]) * np.kron(vecs[:, k], ancilla[:, k])
    chi /= np.linalg.norm(chi)
    return chi, d, da


def spectral_projection(rho, cluster_tol: float = CLUSTER_TOL) -> SpectralProjection:
    """Spectral projectors of rho with near-degenerate eigenvalues merged.

    Eigenvalues whose gap is below cluster_tol (relative to the largest
    magnitude) share one projector; the surviving values are therefore
    pairwise separated by more than the tolerance.
    """
    mat = linalg.require_hermitian(rho, name="rho")
    spec = linalg.hermitian_eig(mat)
    w = spec.eigenvalues[::-1]
    v = spec.eigenvectors[:, ::-1]
    scale = max(float(np.abs(w).max()), 1e-300)
    tol_abs = cluster_tol * scale

    projectors: list[np.ndarray] = []
    values: list[float] = []
    mults: list[int] = []
    start = 0
    for i in range(1, w.size + 1):
        if i == w.size or (w[i - 1] - w[i]) > tol_abs:
            block = v[:, start:i]
            projectors.append(block @ linalg.dagger(block))
            values.append(float(w[start:i].mean()))
            mults.append(i - start)
            start = i
    return SpectralProjection(
        projectors=tuple(projectors),
        values=np.asarray(values),
        multiplicities=tuple(mults),
    )
