"""The QAP objective, exact brute-force oracle, and the closed-form solver
for Robinsonian instances with Toeplitz structure.

The objective minimized throughout is
``value(sigma) = sum_ij A[i][j] * B[sigma(i)][sigma(j)]``, identical to
``inner_product(A, apply_permutation(B, sigma))``.  Integer instances are
evaluated in exact integer arithmetic end to end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
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
    DegenerateSpectrum,
    DimensionMismatch,
    InstanceTooLarge,
    NotRobinsonianDetected,
    NotToeplitzAfterReordering,
    PredicateFailed,
    RangeError,
    ReducibleMatrix,
    RepeatedFiedlerEntries,
)
from .seriation import seriate
from .structure import (
    build_b_delta,
    is_robinson_dissimilarity,
    is_robinson_similarity,
    is_toeplitz,
)

#: Default cap on exhaustive enumeration (n! permutations).
DEFAULT_BRUTE_CAP = 10
#: Hard cap for the exhaustive inequality verifier.
VERIFY_CAP = 9

_CHUNK = 40320  # permutations per vectorized batch


@dataclass(frozen=True)
class QapInstance:
    """A flow/similarity matrix paired with a distance/dissimilarity matrix."""

    a: SymMatrix
    b: SymMatrix

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise DimensionMismatch(
                f"matrix sizes {self.a.n} and {self.b.n} differ"
            )

    @property
    def n(self) -> int:
        return self.a.n


@dataclass(frozen=True)
class ClosedFormCertificate:
    """Orderings backing a closed-form solution: ``pi`` reorders A to a
    Robinson similarity, ``tau`` reorders B to a Robinson dissimilarity, and
    ``toeplitz_side`` names which reordered matrix ("A" or "B") is Toeplitz."""

    pi: Permutation
    tau: Permutation
    toeplitz_side: str


@dataclass(frozen=True)
class QapSolution:
    permutation: Permutation
    value: float
    method: str
    certificate: ClosedFormCertificate | None = None


def qap_value(A: SymMatrix, B: SymMatrix, sigma: Permutation):
    """``sum_ij A[i][j] * B[sigma(i)][sigma(j)]``; exact for integer input."""
    if A.n != B.n:
        raise DimensionMismatch(f"matrix sizes {A.n} and {B.n} differ")
    if sigma.n != A.n:
        raise DimensionMismatch(
            f"permutation size {sigma.n} vs matrix size {A.n}"
        )
    s = sigma.zero_based()
    return (A.entries * B.entries[np.ix_(s, s)]).sum().item()


def _permutation_batches(n: int):
    """All permutations of range(n) in lexicographic order, as index-array
    batches."""
    stream = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(stream, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def brute_force(A: SymMatrix, B: SymMatrix, cap: int = DEFAULT_BRUTE_CAP) -> QapSolution:
    """Exact minimum by enumerating all ``n!`` assignments.

    Returns the lexicographically smallest optimal permutation.  Refuses
    instances with ``n > cap``.
    """
    if A.n != B.n:
        raise DimensionMismatch(f"matrix sizes {A.n} and {B.n} differ")
    n = A.n
    if n > cap:
        raise InstanceTooLarge(f"n = {n} exceeds the brute-force cap {cap}")
    EA = A.entries
    EB = B.entries
    best_val = None
    best_row = None
    for P in _permutation_batches(n):
        gathered = EB[P[:, :, None], P[:, None, :]]
        vals = np.einsum("kij,ij->k", gathered, EA)
        k = int(np.argmin(vals))
        if best_val is None or vals[k] < best_val:
            best_val = vals[k]
            best_row = P[k].copy()
    return QapSolution(
        permutation=Permutation((best_row + 1).tolist()),
        value=best_val.item(),
        method="brute-force",
    )


def _similarity_ordering(A: SymMatrix, known: Permutation | None) -> Permutation:
    if known is not None:
        if known.n != A.n:
            raise DimensionMismatch(
                f"permutation size {known.n} vs matrix size {A.n}"
            )
        if is_robinson_similarity(apply_permutation(A, known)) is not True:
            raise NotRobinsonianDetected(
                "the supplied ordering does not make A a Robinson similarity"
            )
        return known
    if is_robinson_similarity(A) is True:
        return identity(A.n)
    try:
        result = seriate(A)
    except (ReducibleMatrix, DegenerateSpectrum, RepeatedFiedlerEntries) as exc:
        raise NotRobinsonianDetected(f"seriation of A failed: {exc}") from exc
    if is_robinson_similarity(apply_permutation(A, result.permutation)) is not True:
        raise NotRobinsonianDetected(
            "A is not Robinsonian: its spectral ordering is not Robinson"
        )
    return result.permutation


def _dissimilarity_ordering(B: SymMatrix, known: Permutation | None) -> Permutation:
    if known is not None:
        if known.n != B.n:
            raise DimensionMismatch(
                f"permutation size {known.n} vs matrix size {B.n}"
            )
        if is_robinson_dissimilarity(apply_permutation(B, known)) is not True:
            raise NotRobinsonianDetected(
                "the supplied ordering does not make B a Robinson dissimilarity"
            )
        return known
    if is_robinson_dissimilarity(B) is True:
        return identity(B.n)
    # Seriate the complementary similarity max(B) * J - B.
    flipped = SymMatrix(B.entries.max() - B.entries)
    try:
        result = seriate(flipped)
    except (ReducibleMatrix, DegenerateSpectrum, RepeatedFiedlerEntries) as exc:
        raise NotRobinsonianDetected(f"seriation of B failed: {exc}") from exc
    if is_robinson_dissimilarity(apply_permutation(B, result.permutation)) is not True:
        raise NotRobinsonianDetected(
            "B is not Robinsonian: its spectral ordering is not Robinson"
        )
    return result.permutation


def solve_robinsonian(
    A: SymMatrix,
    B: SymMatrix,
    known_pi: Permutation | None = None,
    known_tau: Permutation | None = None,
) -> QapSolution:
    """Closed-form optimum for Robinsonian instances with Toeplitz structure.

    Finds (or validates) ``pi`` with ``A_pi`` a Robinson similarity and
    ``tau`` with ``B_tau`` a Robinson dissimilarity, requires one of the
    reordered matrices to be Toeplitz, and returns the minimizer
    ``sigma = compose(tau, invert(pi))`` together with a certificate.

    Matrices already in Robinson form are accepted as-is (identity
    ordering); otherwise the spectral ordering is computed and re-checked
    against the predicate, so a failure means the assumptions could not be
    verified, not that no optimum exists.
    """
    if A.n != B.n:
        raise DimensionMismatch(f"matrix sizes {A.n} and {B.n} differ")
    pi = _similarity_ordering(A, known_pi)
    tau = _dissimilarity_ordering(B, known_tau)
    b_profile = is_toeplitz(apply_permutation(B, tau))
    if b_profile:
        side = "B"
    elif is_toeplitz(apply_permutation(A, pi)):
        side = "A"
    else:
        raise NotToeplitzAfterReordering(
            "neither reordered matrix is Toeplitz; the closed form needs "
            "Toeplitz structure on one side"
        )
    sigma = compose(tau, invert(pi))
    return QapSolution(
        permutation=sigma,
        value=qap_value(A, B, sigma),
        method="closed-form",
        certificate=ClosedFormCertificate(pi=pi, tau=tau, toeplitz_side=side),
    )


def build_distance(kind: str, n: int, p: float | None = None, delta: int | None = None) -> SymMatrix:
    """Canonical Toeplitz Robinson dissimilarity matrices.

    kind "two-sum" gives ``((i - j)^2)``, "p-sum" gives ``(|i - j|^p)`` for
    ``p >= 1``, "linear-arrangement" gives ``(|i - j|)``, and "bandwidth"
    gives the 0/1 band matrix of :func:`~robqap.structure.build_b_delta`.
    """
    idx = np.arange(n)
    dist = np.abs(np.subtract.outer(idx, idx))
    if kind == "two-sum":
        return SymMatrix(dist**2)
    if kind == "linear-arrangement":
        return SymMatrix(dist)
    if kind == "p-sum":
        if p is None:
            raise RangeError("p-sum requires the exponent p")
        if p < 1:
            raise RangeError(f"p must be at least 1, got {p}")
        if float(p).is_integer():
            return SymMatrix(dist ** int(p))
        return SymMatrix(dist.astype(np.float64) ** p)
    if kind == "bandwidth":
        if delta is None:
            raise RangeError("bandwidth requires delta")
        if not 1 <= delta <= n - 1:
            raise RangeError(f"delta must be in 1..{n - 1}, got {delta}")
        return build_b_delta(n, delta)
    raise ValueError(f"unknown distance kind: {kind!r}")


def spectral_heuristic_2sum(A: SymMatrix) -> QapSolution:
    """Spectral-ordering heuristic for the 2-SUM instance ``(A, ((i-j)^2))``.

    Seriates A and evaluates the assignments induced by the sorted order and
    its reversal (their inverses, in this package's composition convention),
    returning the better of the two.  Seriation errors propagate.
    """
    result = seriate(A)
    n = A.n
    B = build_distance("two-sum", n)
    candidates = [
        invert(result.permutation),
        compose(reversal(n), invert(result.permutation)),
    ]
    values = [qap_value(A, B, sigma) for sigma in candidates]
    best = 0 if values[0] <= values[1] else 1
    return QapSolution(
        permutation=candidates[best],
        value=values[best],
        method="spectral-heuristic",
    )


def counterexample_instance() -> QapInstance:
    """The 5x5 Robinson pair without Toeplitz structure on which the identity
    assignment is beaten (value 8 at the identity, 4 at (4,5,1,2,3))."""
    A = SymMatrix(
        [
            [1, 1, 1, 0, 0],
            [1, 1, 1, 1, 0],
            [1, 1, 1, 1, 0],
            [0, 1, 1, 1, 0],
            [0, 0, 0, 0, 1],
        ]
    )
    B = SymMatrix(
        [
            [0, 1, 1, 1, 1],
            [1, 0, 1, 1, 1],
            [1, 1, 0, 0, 0],
            [1, 1, 0, 0, 0],
            [1, 1, 0, 0, 0],
        ]
    )
    return QapInstance(a=A, b=B)


def verify_theorem1(A: SymMatrix, delta: int):
    """Exhaustively check that no assignment beats the identity against the
    band distance matrix ``build_b_delta(n, delta)``.

    Requires A to be a Robinson similarity.  Returns ``True``, or the first
    (lexicographic) counterexample permutation, which for a correct
    implementation of a Robinson similarity should never exist.
    """
    verdict = is_robinson_similarity(A)
    if verdict is not True:
        raise PredicateFailed(f"not a Robinson similarity: {verdict}")
    n = A.n
    if not 1 <= delta <= n - 1:
        raise RangeError(f"delta must be in 1..{n - 1}, got {delta}")
    if n > VERIFY_CAP:
        raise InstanceTooLarge(f"n = {n} exceeds the exhaustive cap {VERIFY_CAP}")
    D = build_b_delta(n, delta).entries
    EA = A.entries
    base = (EA * D).sum()
    for P in _permutation_batches(n):
        gathered = EA[P[:, :, None], P[:, None, :]]
        vals = np.einsum("kij,ij->k", gathered, D)
        bad = vals < base
        if bad.any():
            k = int(np.argmax(bad))
            return Permutation((P[k] + 1).tolist())
    return True
