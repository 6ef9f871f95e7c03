import numpy as np

import robqap as rq
from robqap.errors import (
    DegenerateSpectrum,
    ReducibleMatrix,
    RepeatedFiedlerEntries,
)


def random_symmetric(rng, n, low=-5, high=9, integer=True):
    """Random exact-symmetric matrix (integer by default)."""
    if integer:
        raw = rng.integers(low, high, size=(n, n))
    else:
        raw = rng.uniform(low, high, size=(n, n))
    return rq.SymMatrix(np.triu(raw) + np.triu(raw, 1).T)


def random_permutation(rng, n):
    return rq.Permutation((rng.permutation(n) + 1).tolist())


def seriatable(A):
    """Whether the spectral ordering is defined for this matrix."""
    try:
        rq.seriate(A)
        return True
    except (ReducibleMatrix, DegenerateSpectrum, RepeatedFiedlerEntries):
        return False


def seriatable_robinson_instances(sizes, count, start_seed=0):
    """Yield ``count`` generated Robinson similarities that seriate cleanly,
    cycling through ``sizes``; deterministic."""
    produced = 0
    seed = start_seed
    while produced < count:
        n = sizes[produced % len(sizes)]
        A = rq.gen_robinson_similarity(n, seed)
        seed += 1
        if not seriatable(A):
            continue
        produced += 1
        yield n, A
