"""Robinson/Toeplitz matrix structure, spectral seriation, and QAP solving.

The library recognizes Robinson and Toeplitz structure in symmetric
matrices, reorders Robinsonian similarities through the Fiedler vector of
the Laplacian, and solves the quadratic assignment problem in closed form
when one of the reordered matrices is Toeplitz.  An exact brute-force
enumerator backs every claim at small sizes.
"""

from .core import (
    SYMMETRY_EPS,
    Permutation,
    SymMatrix,
    apply_permutation,
    compose,
    identity,
    inner_product,
    invert,
    reversal,
)
from .errors import (
    AsymmetricInput,
    DegenerateSpectrum,
    DimensionMismatch,
    InstanceTooLarge,
    NonzeroDiagonal,
    NotRobinsonianDetected,
    NotToeplitzAfterReordering,
    ParseError,
    PredicateFailed,
    RangeError,
    ReducibleMatrix,
    RepeatedFiedlerEntries,
    RobqapError,
)
from .qap import (
    DEFAULT_BRUTE_CAP,
    ClosedFormCertificate,
    QapInstance,
    QapSolution,
    brute_force,
    build_distance,
    counterexample_instance,
    qap_value,
    solve_robinsonian,
    spectral_heuristic_2sum,
    verify_theorem1,
)
from .seriation import SeriationResult, fiedler, laplacian, seriate
from .structure import (
    PREDICATE_EPS,
    BDeltaCombination,
    CutWeights,
    KalmansonViolation,
    MetricViolation,
    MonotonicityViolation,
    RobinsonViolation,
    ToeplitzProfile,
    ToeplitzWitness,
    build_b_delta,
    cut_matrix,
    decompose_cuts,
    decompose_toeplitz,
    gen_robinson_similarity,
    gen_toeplitz_dissimilarity,
    is_kalmanson,
    is_metric,
    is_robinson_dissimilarity,
    is_robinson_similarity,
    is_strongly_monotone,
    is_toeplitz,
)

__version__ = "0.1.0"

__all__ = [
    "SYMMETRY_EPS",
    "PREDICATE_EPS",
    "DEFAULT_BRUTE_CAP",
    "SymMatrix",
    "Permutation",
    "identity",
    "reversal",
    "compose",
    "invert",
    "apply_permutation",
    "inner_product",
    "RobinsonViolation",
    "ToeplitzWitness",
    "ToeplitzProfile",
    "BDeltaCombination",
    "CutWeights",
    "KalmansonViolation",
    "MetricViolation",
    "MonotonicityViolation",
    "is_robinson_similarity",
    "is_robinson_dissimilarity",
    "is_toeplitz",
    "build_b_delta",
    "decompose_toeplitz",
    "cut_matrix",
    "decompose_cuts",
    "is_kalmanson",
    "is_metric",
    "is_strongly_monotone",
    "gen_robinson_similarity",
    "gen_toeplitz_dissimilarity",
    "SeriationResult",
    "laplacian",
    "fiedler",
    "seriate",
    "QapInstance",
    "QapSolution",
    "ClosedFormCertificate",
    "qap_value",
    "brute_force",
    "solve_robinsonian",
    "build_distance",
    "spectral_heuristic_2sum",
    "counterexample_instance",
    "verify_theorem1",
    "RobqapError",
    "DimensionMismatch",
    "RangeError",
    "AsymmetricInput",
    "NonzeroDiagonal",
    "ReducibleMatrix",
    "DegenerateSpectrum",
    "RepeatedFiedlerEntries",
    "NotRobinsonianDetected",
    "NotToeplitzAfterReordering",
    "InstanceTooLarge",
    "PredicateFailed",
    "ParseError",
]
