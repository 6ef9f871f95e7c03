"""Symmetric matrices, permutations, and the action of permutations on matrices.

Conventions fixed here and relied on by every other module:

* Permutations are bijections of ``{1, ..., n}``; construction and all I/O
  use the one-based image ``(pi(1), ..., pi(n))``.
* ``apply_permutation(A, pi)`` returns the matrix with entries
  ``A[pi(i)][pi(j)]``.
* ``compose(pi, tau)`` is function composition ``i -> pi(tau(i))``.  With
  this order, ``apply_permutation(apply_permutation(A, pi), tau)`` equals
  ``apply_permutation(A, compose(pi, tau))`` exactly.  Other modules state
  every composition in terms of this definition.

All values are immutable after construction and all operations are pure,
so they are safe to share across threads.
"""

from __future__ import annotations

import numpy as np

from .errors import AsymmetricInput, DimensionMismatch

#: Absolute tolerance for symmetry of raw input, applied only at construction.
SYMMETRY_EPS = 1e-9


class SymMatrix:
    """Dense real symmetric ``n x n`` matrix.

    Symmetry is exact in storage: the upper triangle is mirrored at
    construction.  Raw input whose asymmetry exceeds ``SYMMETRY_EPS`` is
    rejected with :class:`~robqap.errors.AsymmetricInput`.  Integer input
    keeps an integer dtype so that downstream arithmetic on it stays exact.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        a = np.asarray(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
        if np.issubdtype(a.dtype, np.integer) or a.dtype == bool:
            a = a.astype(np.int64)
        else:
            a = a.astype(np.float64)
            if not np.isfinite(a).all():
                raise ValueError("matrix entries must be finite")
        gap = np.abs(a - a.T)
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        if gap[i, j] > SYMMETRY_EPS:
            if i > j:
                i, j = j, i
            raise AsymmetricInput(i + 1, j + 1, a[i, j].item(), a[j, i].item())
        a = np.triu(a) + np.triu(a, 1).T
        a.setflags(write=False)
        self._entries = a

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """The underlying read-only ``(n, n)`` array."""
        return self._entries

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return bool(np.array_equal(self._entries, other._entries))

    def __repr__(self):
        return f"SymMatrix(n={self.n}, dtype={self._entries.dtype})"


class Permutation:
    """A bijection of ``{1, ..., n}``, stored by its one-based image."""

    __slots__ = ("_image", "_zero")

    def __init__(self, image):
        img = tuple(int(v) for v in image)
        n = len(img)
        if n == 0:
            raise ValueError("a permutation must have length at least 1")
        if sorted(img) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {img}")
        z = np.array(img, dtype=np.intp) - 1
        z.setflags(write=False)
        self._image = img
        self._zero = z

    @property
    def n(self) -> int:
        return len(self._image)

    @property
    def image(self) -> tuple[int, ...]:
        """The one-based image ``(pi(1), ..., pi(n))``."""
        return self._image

    def zero_based(self) -> np.ndarray:
        """Read-only zero-based index array, for internal numpy indexing."""
        return self._zero

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self._image):
            raise IndexError(f"index {i} outside 1..{len(self._image)}")
        return self._image[i - 1]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._image == other._image

    def __hash__(self):
        return hash(self._image)

    def __repr__(self):
        return f"Permutation({list(self._image)})"


def identity(n: int) -> Permutation:
    """The identity permutation of ``{1, ..., n}``."""
    return Permutation(range(1, n + 1))


def reversal(n: int) -> Permutation:
    """The order-reversing permutation ``i -> n + 1 - i``."""
    return Permutation(range(n, 0, -1))


def compose(pi: Permutation, tau: Permutation) -> Permutation:
    """Function composition: the permutation ``i -> pi(tau(i))``."""
    if pi.n != tau.n:
        raise DimensionMismatch(f"cannot compose sizes {pi.n} and {tau.n}")
    return Permutation(np.asarray(pi.image, dtype=np.intp)[tau.zero_based()])


def invert(pi: Permutation) -> Permutation:
    """The inverse permutation; ``compose(pi, invert(pi))`` is the identity."""
    inv = np.empty(pi.n, dtype=np.intp)
    inv[pi.zero_based()] = np.arange(1, pi.n + 1)
    return Permutation(inv)


def apply_permutation(A: SymMatrix, pi: Permutation) -> SymMatrix:
    """Simultaneously reorder rows and columns: entry ``(i, j)`` becomes
    ``A[pi(i)][pi(j)]``."""
    if A.n != pi.n:
        raise DimensionMismatch(f"matrix size {A.n} vs permutation size {pi.n}")
    p = pi.zero_based()
    return SymMatrix(A.entries[np.ix_(p, p)])


def inner_product(A: SymMatrix, B: SymMatrix):
    """Trace inner product ``sum_ij A[i][j] * B[i][j]``.

    Exact (Python int) when both matrices are integer.
    """
    if A.n != B.n:
        raise DimensionMismatch(f"matrix sizes {A.n} and {B.n} differ")
    return (A.entries * B.entries).sum().item()
