"""Structural predicates and exact decompositions for symmetric matrices.

Predicates return ``True`` or a falsy witness object describing the first
violation in lexicographic index order, so results work directly in boolean
context while keeping the evidence.  All reported indices are one-based.

Comparisons use the absolute tolerance ``PREDICATE_EPS``; integer matrices
are unaffected by it, since any integer violation exceeds the tolerance, so
integer verdicts are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SymMatrix
from .errors import NonzeroDiagonal, RangeError

#: Absolute tolerance used by every predicate in this module.
PREDICATE_EPS = 1e-9

# Fixed stream tags so the two generators draw from distinct substreams of
# the (n, seed)-keyed source.
_ROBINSON_STREAM = 1
_TOEPLITZ_STREAM = 2


@dataclass(frozen=True)
class RobinsonViolation:
    """First triple ``i <= j <= k`` breaking the Robinson condition.

    ``lhs > rhs`` holds at the witness; for a similarity ``lhs`` is the
    far entry and ``rhs`` the bound it must stay below, for a dissimilarity
    the roles are stated in the dissimilarity's own sign convention.
    """

    i: int
    j: int
    k: int
    lhs: float
    rhs: float

    def __bool__(self):
        return False

    def __str__(self):
        return (
            f"Robinson violation at triple ({self.i}, {self.j}, {self.k}): "
            f"{self.lhs} > {self.rhs}"
        )


@dataclass(frozen=True)
class ToeplitzWitness:
    """Two positions on one diagonal holding different values."""

    first: tuple[int, int]
    second: tuple[int, int]
    value_first: float
    value_second: float

    def __bool__(self):
        return False

    def __str__(self):
        return (
            f"diagonal mismatch: entry {self.first} = {self.value_first} "
            f"vs entry {self.second} = {self.value_second}"
        )


@dataclass(frozen=True)
class KalmansonViolation:
    i: int
    j: int
    k: int
    l: int
    lhs: float
    rhs: float

    def __bool__(self):
        return False

    def __str__(self):
        return (
            f"Kalmanson violation at ({self.i}, {self.j}, {self.k}, {self.l}): "
            f"{self.lhs} > {self.rhs}"
        )


@dataclass(frozen=True)
class MetricViolation:
    i: int
    j: int
    k: int
    lhs: float
    rhs: float

    def __bool__(self):
        return False

    def __str__(self):
        return (
            f"triangle violation at ({self.i}, {self.j}, {self.k}): "
            f"{self.lhs} > {self.rhs}"
        )


@dataclass(frozen=True)
class MonotonicityViolation:
    """A strong-monotonicity implication whose premise holds but whose
    conclusion fails; ``implication`` is 1 or 2 in the order the two
    implications are defined."""

    i: int
    j: int
    k: int
    l: int
    implication: int
    lhs: float
    rhs: float

    def __bool__(self):
        return False

    def __str__(self):
        return (
            f"strong-monotonicity violation at ({self.i}, {self.j}, {self.k}, "
            f"{self.l}), implication {self.implication}: {self.lhs} != {self.rhs}"
        )


@dataclass(frozen=True)
class ToeplitzProfile:
    """Diagonal values ``beta[k]`` = common entry at distance ``|i - j| = k``."""

    beta: tuple

    @property
    def n(self) -> int:
        return len(self.beta)

    def matrix(self) -> SymMatrix:
        """The Toeplitz matrix this profile describes."""
        b = np.asarray(self.beta)
        idx = np.arange(self.n)
        return SymMatrix(b[np.abs(np.subtract.outer(idx, idx))])


@dataclass(frozen=True)
class BDeltaCombination:
    """Expansion of a Toeplitz matrix over the banded 0/1 matrices.

    ``c[delta - 1]`` weights the 0/1 matrix with support ``|i - j| >= n -
    delta`` (see :func:`build_b_delta`); ``j_coefficient`` weights the
    all-ones matrix.  Reconstruction is exact for integer profiles.
    """

    n: int
    j_coefficient: float
    c: tuple

    def coefficient(self, delta: int):
        if not 1 <= delta <= self.n - 1:
            raise RangeError(f"delta must be in 1..{self.n - 1}, got {delta}")
        return self.c[delta - 1]

    def is_conic(self, eps: float = 0.0) -> bool:
        """Whether all banded-matrix weights are nonnegative (within eps)."""
        return all(v >= -eps for v in self.c)

    def reconstruct(self) -> SymMatrix:
        total = self.j_coefficient * np.ones((self.n, self.n), dtype=np.int64)
        for delta, coeff in enumerate(self.c, start=1):
            if coeff != 0:
                total = total + coeff * build_b_delta(self.n, delta).entries
        return SymMatrix(total)


class CutWeights:
    """The unique expansion of a symmetric matrix over interval cut matrices.

    The cut matrices form a basis of the symmetric matrices, so the weights
    are determined by second differences of the input; membership in the cut
    cone is simply nonnegativity of all weights.
    """

    __slots__ = ("_lam",)

    def __init__(self, lam):
        lam = np.asarray(lam)
        lam.setflags(write=False)
        self._lam = lam

    @property
    def n(self) -> int:
        return self._lam.shape[0]

    def weight(self, u: int, v: int):
        """Weight of the cut matrix on the interval ``[u, v]`` (one-based)."""
        if not 1 <= u <= v <= self.n:
            raise RangeError(f"interval ({u}, {v}) outside 1 <= u <= v <= {self.n}")
        return self._lam[u - 1, v - 1].item()

    def nonzero(self) -> dict:
        """Map ``(u, v) -> weight`` restricted to nonzero weights."""
        out = {}
        for a, b in zip(*np.nonzero(self._lam)):
            out[(int(a) + 1, int(b) + 1)] = self._lam[a, b].item()
        return out

    def in_cut_cone(self, eps: float = PREDICATE_EPS) -> bool:
        return bool((self._lam >= -eps).all())

    def reconstruct(self) -> SymMatrix:
        n = self.n
        total = np.zeros((n, n), dtype=self._lam.dtype)
        for a, b in zip(*np.nonzero(self._lam)):
            total[a : b + 1, a : b + 1] += self._lam[a, b]
        return SymMatrix(total)

    def __repr__(self):
        return f"CutWeights(n={self.n}, nonzero={len(self.nonzero())})"


def _first_robinson_violation(E, ignore_diagonal, eps):
    """Lexicographically first triple i <= j <= k with E[i,k] > min(E[i,j],
    E[j,k]) + eps, zero-based, or None.  With ``ignore_diagonal`` only strict
    triples i < j < k are examined."""
    n = E.shape[0]
    strict = 1 if ignore_diagonal else 0
    upper = np.triu(np.ones((n, n), dtype=bool), k=strict)
    for i in range(n):
        j0 = i + strict
        if j0 >= n:
            break
        rhs = np.minimum(E[i, :, None], E)  # rhs[j, k] = min(E[i,j], E[j,k])
        bad = (E[i, None, :] > rhs + eps) & upper
        if j0 > 0:
            bad[:j0, :] = False
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return int(i), int(j), int(k)
    return None


def is_robinson_similarity(A: SymMatrix, ignore_diagonal: bool = False):
    """Entries decrease monotonically along rows and columns moving away
    from the diagonal.

    Returns ``True`` or the first :class:`RobinsonViolation`.  The default
    check covers all triples ``i <= j <= k``, which also forces each row's
    off-diagonal entries to stay below both diagonal entries involved;
    ``ignore_diagonal`` restricts to strict triples ``i < j < k``.
    """
    E = A.entries
    hit = _first_robinson_violation(E, ignore_diagonal, PREDICATE_EPS)
    if hit is None:
        return True
    i, j, k = hit
    lhs = E[i, k].item()
    rhs = min(E[i, j].item(), E[j, k].item())
    return RobinsonViolation(i + 1, j + 1, k + 1, lhs, rhs)


def is_robinson_dissimilarity(B: SymMatrix, ignore_diagonal: bool = False):
    """Entries increase away from the diagonal: the negated matrix must be a
    Robinson similarity.  The witness is reported in B's own sign
    convention."""
    E = B.entries
    hit = _first_robinson_violation(-E, ignore_diagonal, PREDICATE_EPS)
    if hit is None:
        return True
    i, j, k = hit
    lhs = max(E[i, j].item(), E[j, k].item())
    rhs = E[i, k].item()
    return RobinsonViolation(i + 1, j + 1, k + 1, lhs, rhs)


def is_toeplitz(A: SymMatrix):
    """Check for constant diagonals.

    Returns the :class:`ToeplitzProfile` on success, else a falsy
    :class:`ToeplitzWitness` naming the first adjacent mismatch along a
    diagonal (diagonals scanned by increasing distance).
    """
    E = A.entries
    n = A.n
    for k in range(1, n):
        d = np.diagonal(E, offset=k)
        step = np.abs(np.diff(d)) > PREDICATE_EPS
        if step.any():
            t = int(np.argmax(step))
            return ToeplitzWitness(
                (t + 1, t + 1 + k),
                (t + 2, t + 2 + k),
                d[t].item(),
                d[t + 1].item(),
            )
    return ToeplitzProfile(tuple(v.item() for v in E[0, :]))


def build_b_delta(n: int, delta: int) -> SymMatrix:
    """The 0/1 Toeplitz matrix with ones exactly where ``|i - j| >= n - delta``.

    ``delta = n`` gives the all-ones matrix.
    """
    if not 1 <= delta <= n:
        raise RangeError(f"delta must be in 1..{n}, got {delta}")
    idx = np.arange(n)
    return SymMatrix(
        (np.abs(np.subtract.outer(idx, idx)) >= n - delta).astype(np.int64)
    )


def decompose_toeplitz(profile: ToeplitzProfile) -> BDeltaCombination:
    """Expand a Toeplitz matrix over the all-ones matrix and the banded 0/1
    matrices of :func:`build_b_delta`.

    The weight on the band with support ``|i - j| >= k`` is
    ``beta[k] - beta[k - 1]``, which telescopes to reconstruct the profile
    exactly; for a dissimilarity profile (``0 = beta[0] <= beta[1] <= ...``)
    all weights are nonnegative.
    """
    beta = np.asarray(profile.beta)
    diffs = beta[1:] - beta[:-1]  # index k-1 for k = 1..n-1
    c = tuple(v.item() for v in diffs[::-1])  # delta = n - k
    return BDeltaCombination(n=profile.n, j_coefficient=beta[0].item(), c=c)


def cut_matrix(n: int, u: int, v: int) -> SymMatrix:
    """0/1 matrix with ones exactly on the block ``[u, v] x [u, v]``."""
    if not 1 <= u <= v <= n:
        raise RangeError(f"interval ({u}, {v}) outside 1 <= u <= v <= {n}")
    M = np.zeros((n, n), dtype=np.int64)
    M[u - 1 : v, u - 1 : v] = 1
    return SymMatrix(M)


def decompose_cuts(A: SymMatrix) -> CutWeights:
    """Expand a symmetric matrix over cut matrices.

    The weight on the interval ``[u, v]`` is the second difference
    ``A[u][v] - A[u-1][v] - A[u][v+1] + A[u-1][v+1]`` with out-of-range
    entries read as zero; this inverts the cumulative structure of the cut
    matrices, so reconstruction is exact and the expansion unique.
    """
    E = A.entries
    n = A.n
    P = np.zeros((n + 2, n + 2), dtype=E.dtype)
    P[1 : n + 1, 1 : n + 1] = E
    lam = (
        P[1 : n + 1, 1 : n + 1]
        - P[0:n, 1 : n + 1]
        - P[1 : n + 1, 2 : n + 2]
        + P[0:n, 2 : n + 2]
    )
    return CutWeights(np.triu(lam))


def is_kalmanson(A: SymMatrix):
    """``max(A_ij + A_kl, A_il + A_jk) <= A_ik + A_jl`` for all quadruples
    ``i < j < k < l``.  Vacuously true for n < 4."""
    E = A.entries
    n = A.n
    strict_upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            first = E[i, j] + E  # (k, l) plane: A_ij + A_kl
            second = np.add.outer(E[j, :], E[i, :])  # A_jk + A_il
            rhs = np.add.outer(E[i, :], E[j, :])  # A_ik + A_jl
            bad = (np.maximum(first, second) > rhs + PREDICATE_EPS) & strict_upper
            bad[: j + 1, :] = False
            if bad.any():
                k, l = np.argwhere(bad)[0]
                lhs = max(
                    E[i, j].item() + E[k, l].item(),
                    E[i, l].item() + E[j, k].item(),
                )
                return KalmansonViolation(
                    i + 1, j + 1, int(k) + 1, int(l) + 1,
                    lhs, E[i, k].item() + E[j, l].item(),
                )
    return True


def is_metric(B: SymMatrix):
    """Zero diagonal plus the triangle inequality over all index triples."""
    E = B.entries
    n = B.n
    diag = np.abs(np.diagonal(E))
    if (diag > PREDICATE_EPS).any():
        i = int(np.argmax(diag > PREDICATE_EPS))
        raise NonzeroDiagonal(f"entry ({i + 1}, {i + 1}) = {E[i, i].item()} is not zero")
    for i in range(n):
        rhs = E[i, :, None] + E  # rhs[j, k] = B_ij + B_jk
        bad = E[i, None, :] > rhs + PREDICATE_EPS
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return MetricViolation(
                i + 1, int(j) + 1, int(k) + 1,
                E[i, k].item(), E[i, j].item() + E[j, k].item(),
            )
    return True


def is_strongly_monotone(B: SymMatrix):
    """Equalities among entries propagate across rows: for ``i < j < k < l``,
    ``B_jk = B_jl`` forces ``B_ik = B_il`` and ``B_jk = B_ik`` forces
    ``B_jl = B_il`` (equality within tolerance)."""
    E = B.entries
    n = B.n
    strict_upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            same_j = np.abs(E[j, :, None] - E[j, None, :]) <= PREDICATE_EPS
            same_i = np.abs(E[i, :, None] - E[i, None, :]) <= PREDICATE_EPS
            viol1 = same_j & ~same_i
            cross = np.abs(E[j, :] - E[i, :]) <= PREDICATE_EPS
            viol2 = cross[:, None] & ~cross[None, :]
            bad = (viol1 | viol2) & strict_upper
            bad[: j + 1, :] = False
            if bad.any():
                k, l = np.argwhere(bad)[0]
                if viol1[k, l]:
                    return MonotonicityViolation(
                        i + 1, j + 1, int(k) + 1, int(l) + 1, 1,
                        E[i, k].item(), E[i, l].item(),
                    )
                return MonotonicityViolation(
                    i + 1, j + 1, int(k) + 1, int(l) + 1, 2,
                    E[j, l].item(), E[i, l].item(),
                )
    return True


def _stream(tag: int, n: int, seed: int) -> np.random.Generator:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    return np.random.default_rng(np.random.SeedSequence(entropy=(tag, n, seed)))


def gen_robinson_similarity(n: int, seed: int) -> SymMatrix:
    """Random integer Robinson similarity: a nonnegative-integer combination
    of ``2n`` random cut matrices.

    Deterministic for fixed ``(n, seed)``: the stream is numpy's PCG64
    seeded with ``SeedSequence((1, n, seed))``.
    """
    rng = _stream(_ROBINSON_STREAM, n, seed)
    m = 2 * n
    lo = rng.integers(1, n + 1, size=m)
    hi = rng.integers(1, n + 1, size=m)
    u = np.minimum(lo, hi)
    v = np.maximum(lo, hi)
    w = rng.integers(1, 6, size=m)
    E = np.zeros((n, n), dtype=np.int64)
    for t in range(m):
        E[u[t] - 1 : v[t], u[t] - 1 : v[t]] += w[t]
    return SymMatrix(E)


def gen_toeplitz_dissimilarity(n: int, seed: int) -> SymMatrix:
    """Random integer Toeplitz Robinson dissimilarity, built from a
    nondecreasing profile starting at zero.

    Deterministic for fixed ``(n, seed)``: the stream is numpy's PCG64
    seeded with ``SeedSequence((2, n, seed))``.
    """
    rng = _stream(_TOEPLITZ_STREAM, n, seed)
    steps = rng.integers(0, 4, size=n - 1)
    beta = np.concatenate([[0], np.cumsum(steps)])
    return ToeplitzProfile(tuple(int(b) for b in beta)).matrix()
