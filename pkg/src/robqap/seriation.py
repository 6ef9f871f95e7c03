"""Spectral seriation: Laplacian, Fiedler pair, and the sorting reorder.

Numerical contract
------------------
The eigensolver is numpy's ``eigh`` (LAPACK), which is deterministic for a
fixed platform and returns residuals far below the promised bound
``||L y - lambda y|| <= 1e-9 * ||L||_F``.  Outputs are made deterministic
across platforms by projecting out the all-ones component, renormalizing,
and fixing the sign so that the first entry larger than ``ENTRY_TIE_TOL``
in magnitude is negative.

Degenerate inputs fail loudly instead of guessing: a disconnected support
graph raises :class:`~robqap.errors.ReducibleMatrix` (with the component
lists), a non-simple second eigenvalue raises
:class:`~robqap.errors.DegenerateSpectrum`, and tied Fiedler entries raise
:class:`~robqap.errors.RepeatedFiedlerEntries`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Permutation, SymMatrix
from .errors import DegenerateSpectrum, ReducibleMatrix, RepeatedFiedlerEntries

#: Residual bound for the returned eigenpair, relative to ``||L||_F``.
RESIDUAL_TOL = 1e-9
#: Relative gap below which the second eigenvalue counts as repeated.
DEGENERACY_TOL = 1e-8
#: Absolute tolerance for ties between Fiedler entries (also sign fixing).
ENTRY_TIE_TOL = 1e-8


@dataclass(frozen=True)
class SeriationResult:
    """Sorting permutation plus the Fiedler data it was read off from.

    ``reversal_ambiguous`` is always True: sorting the Fiedler vector in
    descending order is an equally valid Robinson ordering.
    """

    permutation: Permutation
    fiedler_value: float
    fiedler_vector: np.ndarray
    reversal_ambiguous: bool


def laplacian(A: SymMatrix) -> SymMatrix:
    """``diag(row sums) - A``; every row sums to zero."""
    E = A.entries
    return SymMatrix(np.diag(E.sum(axis=1)) - E)


def _support_components(E) -> list[list[int]]:
    """Connected components (one-based) of the graph with an edge wherever an
    off-diagonal entry is nonzero."""
    n = E.shape[0]
    adj = E != 0
    np.fill_diagonal(adj, False)
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = np.zeros(n, dtype=bool)
        comp[s] = True
        frontier = comp.copy()
        while frontier.any():
            frontier = adj[frontier].any(axis=0) & ~comp
            comp |= frontier
        seen |= comp
        comps.append([int(i) + 1 for i in np.flatnonzero(comp)])
    return comps


def fiedler(A: SymMatrix) -> tuple[float, np.ndarray]:
    """Second-smallest Laplacian eigenvalue and its unit eigenvector.

    A matrix with negative entries is first shifted by a multiple of the
    all-ones matrix to be nonnegative; that leaves every eigenvector
    orthogonal to the all-ones vector unchanged and shifts the reported
    eigenvalue by ``-min * n``.  The returned vector is orthogonal to the
    all-ones vector and sign-fixed as described in the module docstring.
    """
    if A.n < 2:
        raise ValueError("Fiedler data requires n >= 2")
    E = A.entries.astype(np.float64)
    low = E.min()
    if low < 0:
        E = E - low
    comps = _support_components(E)
    if len(comps) > 1:
        raise ReducibleMatrix(comps)
    L = np.diag(E.sum(axis=1)) - E
    w, V = np.linalg.eigh(L)
    scale = float(np.linalg.norm(L))
    if A.n > 2 and w[2] - w[1] <= DEGENERACY_TOL * scale:
        raise DegenerateSpectrum(
            f"second eigenvalue {w[1]:.9g} is repeated "
            f"(gap to the next is {w[2] - w[1]:.3g})"
        )
    y = V[:, 1]
    y = y - y.mean()
    y = y / np.linalg.norm(y)
    for entry in y:
        if abs(entry) > ENTRY_TIE_TOL:
            if entry > 0:
                y = -y
            break
    y.setflags(write=False)
    return float(w[1]), y


def seriate(A: SymMatrix) -> SeriationResult:
    """Permutation that sorts the Fiedler vector ascending.

    For a similarity that is Robinson under some ordering (and whose Fiedler
    value is simple with distinct vector entries), the reordered matrix
    ``apply_permutation(A, result.permutation)`` is Robinson.  Callers with a
    dissimilarity D should seriate ``max(D) * J - D`` instead.
    """
    value, y = fiedler(A)
    order = np.argsort(y, kind="stable")
    ties = np.diff(y[order]) <= ENTRY_TIE_TOL
    if ties.any():
        t = int(np.argmax(ties))
        raise RepeatedFiedlerEntries(
            f"Fiedler entries {y[order[t]]:.9g} and {y[order[t + 1]]:.9g} "
            f"coincide within {ENTRY_TIE_TOL}"
        )
    return SeriationResult(
        permutation=Permutation((order + 1).tolist()),
        fiedler_value=value,
        fiedler_vector=y,
        reversal_ambiguous=True,
    )
