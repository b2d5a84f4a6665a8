"""Dense complex linear algebra for desk-scale Hilbert spaces.

Plain complex numpy arrays are the carrier for every operator; all
routines are pure functions of their inputs. The bipartite index
convention is row = i_system * d_env + i_env throughout the package,
which is exactly the ordering produced by ``numpy.kron(sys_op, env_op)``.
Dimensions are expected to stay below ~100, so everything is dense O(d^3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

# Relative tolerance for accepting a matrix as Hermitian. Chains of
# kron / partial_trace calls accumulate roundoff, hence relative.
HERMITICITY_RTOL = 1e-10

# Below this floor ln(rho) is numerically meaningless; callers must
# regularize explicitly rather than have values clamped silently.
LOG_EIGENVALUE_FLOOR = 1e-12


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def require_hermitian(m, *, name: str = "matrix") -> np.ndarray:
    """Validate Hermiticity within HERMITICITY_RTOL and return (m + m†)/2.

    The symmetrized matrix is returned so downstream eigensolves are not
    polluted by the roundoff the tolerance was meant to absorb.
    """
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    defect = np.linalg.norm(arr - dagger(arr))
    if defect > HERMITICITY_RTOL * (1.0 + np.linalg.norm(arr)):
        raise ValueError(
            f"{name} is not Hermitian: ||m - m†||_F = {defect:.3e} "
            f"exceeds tolerance"
        )
    return (arr + dagger(arr)) / 2.0


def kron(a, b) -> np.ndarray:
    """Tensor product with the system-major index convention."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def partial_trace(m, d_system: int, d_env: int, keep: str = "system") -> np.ndarray:
    """Trace out one tensor factor of a (d_system*d_env)-dimensional operator.

    ``keep="system"`` returns the d_system x d_system matrix tr_E(m);
    ``keep="environment"`` returns tr_S(m). The global trace is preserved.
    """
    mat = as_complex_matrix(m)
    dim = d_system * d_env
    if mat.shape != (dim, dim):
        raise ValueError(
            f"matrix shape {mat.shape} does not match dims "
            f"({d_system}, {d_env}) -> ({dim}, {dim})"
        )
    t = mat.reshape(d_system, d_env, d_system, d_env)
    if keep == "system":
        return np.einsum("iaja->ij", t)
    if keep == "environment":
        return np.einsum("aiaj->ij", t)
    raise ValueError(f"keep must be 'system' or 'environment', got {keep!r}")


def partial_transpose_system(m, d_system: int, d_env: int) -> np.ndarray:
    """Transpose the system indices only (used for negativity)."""
    mat = as_complex_matrix(m)
    dim = d_system * d_env
    if mat.shape != (dim, dim):
        raise ValueError(f"matrix shape {mat.shape} does not match dims")
    t = mat.reshape(d_system, d_env, d_system, d_env)
    return t.transpose(2, 1, 0, 3).reshape(dim, dim)


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; column k of ``eigenvectors``
    belongs to ``eigenvalues[k]`` and the columns are orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermitian_eig(h, *, name: str = "matrix") -> HermitianSpectrum:
    """Eigendecompose a Hermitian matrix (ascending eigenvalues)."""
    sym = require_hermitian(h, name=name)
    w, v = np.linalg.eigh(sym)
    return HermitianSpectrum(eigenvalues=w, eigenvectors=v)


def singular_values(m) -> np.ndarray:
    """Singular values, descending (sqrt of eigenvalues of m†m)."""
    return np.linalg.svd(as_complex_matrix(m), compute_uv=False)


def norm(m, kind: str = "frobenius") -> float:
    """Matrix norm: "trace" (sum of singular values), "operator"
    (largest singular value) or "frobenius".
    """
    mat = as_complex_matrix(m)
    if kind == "frobenius":
        return float(np.linalg.norm(mat))
    if kind == "trace":
        return float(singular_values(mat).sum())
    if kind == "operator":
        sv = singular_values(mat)
        return float(sv[0]) if sv.size else 0.0
    raise ValueError(f"kind must be 'trace', 'operator' or 'frobenius', got {kind!r}")


def trace_norm(m) -> float:
    return norm(m, "trace")


def operator_norm(m) -> float:
    return norm(m, "operator")


def commutator(a, b) -> np.ndarray:
    """[a, b] = ab - ba for equal-dimension square matrices."""
    ma = as_complex_matrix(a)
    mb = as_complex_matrix(b)
    if ma.shape != mb.shape or ma.shape[0] != ma.shape[1]:
        raise ValueError(f"incompatible shapes {ma.shape} and {mb.shape}")
    return ma @ mb - mb @ ma


def matrix_function(h, f: Callable[[float], float], *, name: str = "matrix") -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix spectrally.

    Raises if f is undefined (non-finite) at any eigenvalue, identifying
    the offending one.
    """
    spec = hermitian_eig(h, name=name)
    with np.errstate(all="ignore"):
        fw = np.array([f(x) for x in spec.eigenvalues], dtype=float)
    bad = np.flatnonzero(~np.isfinite(fw))
    if bad.size:
        raise ValueError(
            f"function undefined at eigenvalue {spec.eigenvalues[bad[0]]!r} "
            f"of {name}"
        )
    v = spec.eigenvectors
    return (v * fw) @ dagger(v)


def matrix_log(h, *, floor: float = LOG_EIGENVALUE_FLOOR, name: str = "matrix") -> np.ndarray:
    """Spectral ln of a positive Hermitian matrix.

    Eigenvalues at or below ``floor`` are an error, never clamped; callers
    that need a rank-deficient log must regularize the operator first.
    """
    spec = hermitian_eig(h, name=name)
    lam_min = float(spec.eigenvalues[0])
    if lam_min < floor:
        raise ValueError(
            f"ln undefined: {name} has eigenvalue {lam_min:.3e} below "
            f"floor {floor:.1e}"
        )
    v = spec.eigenvectors
    return (v * np.log(spec.eigenvalues)) @ dagger(v)


def unitary_from_hamiltonian(h, t: float) -> np.ndarray:
    """U = exp(-i h t) via the spectral decomposition (hbar = 1)."""
    spec = hermitian_eig(h, name="hamiltonian")
    v = spec.eigenvectors
    phases = np.exp(-1j * spec.eigenvalues * t)
    return (v * phases) @ dagger(v)
