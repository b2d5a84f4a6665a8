import numpy as np
import pytest

from lazylab import (
    BipartiteState,
    decompose_hamiltonian,
    derive_rng,
    ginibre_mixed,
    haar_random_pure,
    haar_random_unitary,
    pure_state,
    random_hermitian,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_full_rank_state(ds, de, seed):
    return BipartiteState(ds=ds, de=de, matrix=ginibre_mixed(ds * de, ds * de, seed))


def random_pure_bipartite(ds, de, seed):
    return pure_state(haar_random_pure(ds * de, seed), ds, de)


def random_interaction(ds, de, seed):
    """Traceless-partial-trace coupling from a GUE draw."""
    return decompose_hamiltonian(random_hermitian(ds * de, seed), ds, de).h_int


def schmidt_pure_vector(probs, seed=None):
    """Unit vector with the given Schmidt spectrum on C^s (x) C^s.

    With seed=None the Schmidt bases are computational; otherwise Haar
    random local bases are used.
    """
    p = np.asarray(probs, dtype=float)
    s = p.size
    if seed is None:
        left = np.eye(s, dtype=complex)
        right = np.eye(s, dtype=complex)
    else:
        left = haar_random_unitary(s, derive_rng(seed, 0))
        right = haar_random_unitary(s, derive_rng(seed, 1))
    chi = np.zeros(s * s, dtype=complex)
    for k in range(s):
        chi += np.sqrt(p[k]) * np.kron(left[:, k], right[:, k])
    return chi / np.linalg.norm(chi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
