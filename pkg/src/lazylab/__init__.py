"""Lazy-state analysis for bipartite system-environment density matrices.

Exact entropy/purity rates under unitary system-environment dynamics,
the laziness commutator [rho_S (x) I, rho_SE] with its pinching
characterization, universal decoherence-rate bounds, and a
purity-monitoring discord-detection protocol.
"""

from .dynamics import (
    HamiltonianTriple,
    Trajectory,
    TrajectoryRecord,
    decompose_hamiltonian,
    evolve_exact,
    finite_difference_rate,
    record_trajectory,
)
from .laziness import (
    CommutatorReport,
    CorrelationReport,
    PureStateAnalytics,
    RankDeficientStateError,
    RateReport,
    correlation_measures,
    entropy_rate,
    laziness_commutator,
    moment_rate,
    moments,
    negativity,
    pinching_residual,
    pure_state_analytics,
    purity,
    purity_rate,
    rate_bounds,
    regularize_state,
    spectral_pinch,
    von_neumann_entropy,
    witness_hamiltonian,
)
from .linalg import (
    HermitianSpectrum,
    commutator,
    dagger,
    hermitian_eig,
    kron,
    matrix_function,
    matrix_log,
    norm,
    operator_norm,
    partial_trace,
    partial_transpose_system,
    singular_values,
    trace_norm,
    unitary_from_hamiltonian,
)
from .protocol import (
    ProtocolVerdict,
    SparsitySummary,
    SweepRow,
    bound_sweep,
    detect_discord,
    sparsity_scan,
)
from .statefile import StateFile, StateFileError
from .states import (
    BipartiteState,
    SchmidtDecomposition,
    SpectralProjection,
    derive_rng,
    ginibre_mixed,
    haar_random_pure,
    haar_random_unitary,
    maximally_entangled,
    product_state,
    pure_state,
    purify,
    random_hermitian,
    schmidt_decompose,
    spectral_projection,
    validate_density_matrix,
    zero_discord_state,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteState",
    "CommutatorReport",
    "CorrelationReport",
    "HamiltonianTriple",
    "HermitianSpectrum",
    "ProtocolVerdict",
    "PureStateAnalytics",
    "RankDeficientStateError",
    "RateReport",
    "SchmidtDecomposition",
    "SparsitySummary",
    "SpectralProjection",
    "StateFile",
    "StateFileError",
    "SweepRow",
    "Trajectory",
    "TrajectoryRecord",
    "bound_sweep",
    "commutator",
    "correlation_measures",
    "dagger",
    "decompose_hamiltonian",
    "derive_rng",
    "detect_discord",
    "entropy_rate",
    "evolve_exact",
    "finite_difference_rate",
    "ginibre_mixed",
    "haar_random_pure",
    "haar_random_unitary",
    "hermitian_eig",
    "kron",
    "laziness_commutator",
    "matrix_function",
    "matrix_log",
    "maximally_entangled",
    "moment_rate",
    "moments",
    "negativity",
    "norm",
    "operator_norm",
    "partial_trace",
    "partial_transpose_system",
    "pinching_residual",
    "product_state",
    "pure_state",
    "pure_state_analytics",
    "purify",
    "purity",
    "purity_rate",
    "random_hermitian",
    "rate_bounds",
    "record_trajectory",
    "regularize_state",
    "schmidt_decompose",
    "singular_values",
    "sparsity_scan",
    "spectral_pinch",
    "spectral_projection",
    "trace_norm",
    "unitary_from_hamiltonian",
    "validate_density_matrix",
    "von_neumann_entropy",
    "witness_hamiltonian",
    "zero_discord_state",
]
