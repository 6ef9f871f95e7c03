import itertools

import numpy as np
import pytest

import robqap as rq
from conftest import random_permutation, random_symmetric, seriatable


def section4():
    inst = rq.counterexample_instance()
    return inst.a, inst.b


def enumerate_minimum(A, B):
    """Independent oracle: plain-Python enumeration of the objective."""
    n = A.n
    EA = A.entries.tolist()
    EB = B.entries.tolist()
    best = None
    for image in itertools.permutations(range(n)):
        total = 0
        for i in range(n):
            for j in range(n):
                total += EA[i][j] * EB[image[i]][image[j]]
        if best is None or total < best:
            best = total
    return best


def test_qap_value_section4():
    A, B = section4()
    assert rq.qap_value(A, B, rq.identity(5)) == 8
    # the displayed reordering achieves 4; as an assignment in the objective
    # sum it enters through its inverse
    pi = rq.Permutation([4, 5, 1, 2, 3])
    assert rq.inner_product(rq.apply_permutation(A, pi), B) == 4
    assert rq.qap_value(A, B, rq.invert(pi)) == 4


def test_qap_value_matches_inner_product_form():
    rng = np.random.default_rng(17)
    for n in (2, 4, 7):
        A = random_symmetric(rng, n)
        B = random_symmetric(rng, n)
        sigma = random_permutation(rng, n)
        assert rq.qap_value(A, B, sigma) == rq.inner_product(
            A, rq.apply_permutation(B, sigma)
        )


def test_qap_value_all_ones_flow_is_invariant():
    rng = np.random.default_rng(19)
    J = rq.SymMatrix(np.ones((5, 5), dtype=np.int64))
    B = random_symmetric(rng, 5)
    total = B.entries.sum()
    for _ in range(10):
        assert rq.qap_value(J, B, random_permutation(rng, 5)) == total


def test_brute_force_section4():
    A, B = section4()
    assert enumerate_minimum(A, B) == 4
    sol = rq.brute_force(A, B)
    assert sol.value == 4
    assert sol.method == "brute-force"
    assert sol.value == rq.qap_value(A, B, sol.permutation)


def test_brute_force_small_and_caps():
    one = rq.SymMatrix([[3]])
    sol = rq.brute_force(one, rq.SymMatrix([[5]]))
    assert sol.value == 15 and sol.permutation == rq.identity(1)
    A, B = section4()
    with pytest.raises(rq.InstanceTooLarge):
        rq.brute_force(A, B, cap=4)
    with pytest.raises(rq.DimensionMismatch):
        rq.brute_force(A, rq.SymMatrix([[1]]))


def test_brute_force_returns_lex_smallest_optimum():
    # all-ones flow makes every assignment optimal
    J = rq.SymMatrix(np.ones((4, 4), dtype=np.int64))
    B = rq.build_distance("two-sum", 4)
    assert rq.brute_force(J, B).permutation == rq.identity(4)


def test_brute_force_identity_on_structured_instances():
    for seed in range(12):
        n = 4 + seed % 4
        A = rq.gen_robinson_similarity(n, seed)
        B = rq.gen_toeplitz_dissimilarity(n, seed)
        assert rq.brute_force(A, B).value == rq.qap_value(A, B, rq.identity(n))


def test_solve_robinsonian_worked_instance():
    A = rq.SymMatrix([[1, 0, 1], [0, 1, 1], [1, 1, 1]])
    B = rq.SymMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    sol = rq.solve_robinsonian(A, B)
    assert sol.method == "closed-form"
    assert sol.value == 4
    assert sol.permutation in (rq.Permutation([1, 3, 2]), rq.Permutation([3, 1, 2]))
    assert sol.value == rq.brute_force(A, B).value
    cert = sol.certificate
    assert cert.toeplitz_side == "B"
    assert cert.tau == rq.identity(3)
    assert rq.is_robinson_similarity(rq.apply_permutation(A, cert.pi)) is True


def test_solve_robinsonian_on_already_sorted_instances():
    for seed in range(10):
        n = 5 + seed % 3
        A = rq.gen_robinson_similarity(n, seed)
        B = rq.gen_toeplitz_dissimilarity(n, seed)
        sol = rq.solve_robinsonian(A, B)
        assert sol.value == rq.qap_value(A, B, rq.identity(n))
        assert sol.certificate.pi == rq.identity(n)
        assert sol.certificate.tau == rq.identity(n)


def test_solve_robinsonian_counterexample_fails_toeplitz():
    A, B = section4()
    with pytest.raises(rq.NotToeplitzAfterReordering):
        rq.solve_robinsonian(A, B)


def test_solve_robinsonian_scrambled_matches_oracle():
    rng = np.random.default_rng(29)
    done = 0
    seed = 0
    while done < 12:
        n = 5 + seed % 4
        R = rq.gen_robinson_similarity(n, seed)
        D = rq.gen_toeplitz_dissimilarity(n, seed)
        seed += 1
        s1 = random_permutation(rng, n)
        s2 = random_permutation(rng, n)
        A = rq.apply_permutation(R, s1)
        B = rq.apply_permutation(D, s2)
        try:
            sol = rq.solve_robinsonian(A, B)
        except rq.NotRobinsonianDetected:
            continue
        oracle = rq.brute_force(A, B)
        assert sol.value == oracle.value
        assert sol.value == rq.qap_value(A, B, sol.permutation)
        done += 1


def test_solve_robinsonian_reversed_ordering_same_value():
    done = 0
    seed = 0
    rng = np.random.default_rng(31)
    while done < 6:
        n = 6
        R = rq.gen_robinson_similarity(n, seed)
        D = rq.gen_toeplitz_dissimilarity(n, seed)
        seed += 1
        A = rq.apply_permutation(R, random_permutation(rng, n))
        B = rq.apply_permutation(D, random_permutation(rng, n))
        try:
            sol = rq.solve_robinsonian(A, B)
        except rq.NotRobinsonianDetected:
            continue
        flipped = rq.compose(sol.certificate.pi, rq.reversal(n))
        again = rq.solve_robinsonian(A, B, known_pi=flipped)
        assert again.value == sol.value
        done += 1


def test_solve_robinsonian_validates_known_orderings():
    A, B = section4()
    with pytest.raises(rq.NotRobinsonianDetected):
        rq.solve_robinsonian(A, B, known_pi=rq.Permutation([2, 1, 3, 4, 5]))
    with pytest.raises(rq.DimensionMismatch):
        rq.solve_robinsonian(A, B, known_pi=rq.identity(3))


def test_solve_robinsonian_detects_non_robinsonian():
    # a 4-cycle adjacency is not Robinsonian; with unit diagonal it stays
    # connected and nondegenerate enough to reach the predicate re-check
    E = np.eye(4, dtype=np.int64)
    for i, j in [(1, 2), (2, 3), (3, 4), (1, 4)]:
        E[i - 1, j - 1] = E[j - 1, i - 1] = 1
    B = rq.gen_toeplitz_dissimilarity(4, 1)
    with pytest.raises(rq.NotRobinsonianDetected):
        rq.solve_robinsonian(rq.SymMatrix(E), B)


def test_build_distance():
    assert rq.build_distance("two-sum", 3).entries.tolist() == [
        [0, 1, 4],
        [1, 0, 1],
        [4, 1, 0],
    ]
    assert rq.build_distance("p-sum", 5, p=1) == rq.build_distance(
        "linear-arrangement", 5
    )
    assert rq.build_distance("bandwidth", 5, delta=2) == rq.build_b_delta(5, 2)
    frac = rq.build_distance("p-sum", 4, p=1.5)
    assert rq.is_robinson_dissimilarity(frac) is True
    assert rq.is_toeplitz(frac)
    with pytest.raises(rq.RangeError):
        rq.build_distance("p-sum", 4, p=0.5)
    with pytest.raises(rq.RangeError):
        rq.build_distance("p-sum", 4)
    with pytest.raises(rq.RangeError):
        rq.build_distance("bandwidth", 4, delta=4)
    with pytest.raises(ValueError):
        rq.build_distance("cubic", 4)


def test_spectral_heuristic_optimal_on_cut_cone_instances():
    done = 0
    seed = 0
    while done < 10:
        n = 5 + seed % 3
        A = rq.gen_robinson_similarity(n, seed)
        seed += 1
        if not seriatable(A):
            continue
        h = rq.spectral_heuristic_2sum(A)
        assert h.method == "spectral-heuristic"
        oracle = rq.brute_force(A, rq.build_distance("two-sum", n))
        assert h.value == oracle.value
        done += 1


def test_spectral_heuristic_is_an_upper_bound():
    # a fixed band cut folded into a connected generated instance
    E = 2 * rq.cut_matrix(5, 2, 4).entries + rq.gen_robinson_similarity(5, 0).entries
    A = rq.SymMatrix(E)
    h = rq.spectral_heuristic_2sum(A)
    oracle = rq.brute_force(A, rq.build_distance("two-sum", 5))
    assert h.value >= oracle.value
    assert h.value == rq.qap_value(A, rq.build_distance("two-sum", 5), h.permutation)


def test_spectral_heuristic_propagates_degeneracy():
    with pytest.raises(rq.DegenerateSpectrum):
        rq.spectral_heuristic_2sum(rq.SymMatrix(np.ones((4, 4), dtype=np.int64)))


def test_counterexample_instance_structure():
    inst = rq.counterexample_instance()
    assert inst.n == 5
    assert rq.is_robinson_similarity(inst.a) is True
    assert rq.is_robinson_dissimilarity(inst.b) is True
    assert not rq.is_toeplitz(inst.a)
    assert not rq.is_toeplitz(inst.b)


def test_verify_theorem1():
    for seed in range(5):
        for n in (2, 5, 7):
            A = rq.gen_robinson_similarity(n, seed)
            for delta in range(1, n):
                assert rq.verify_theorem1(A, delta) is True
    # n = 2: the single off-diagonal band value is permutation-invariant
    A = rq.gen_robinson_similarity(2, 0)
    D = rq.build_b_delta(2, 1)
    assert rq.qap_value(A, D, rq.identity(2)) == rq.qap_value(A, D, rq.reversal(2))

    with pytest.raises(rq.PredicateFailed):
        rq.verify_theorem1(rq.SymMatrix([[1, 0, 2], [0, 1, 0], [2, 0, 1]]), 1)
    big = rq.gen_robinson_similarity(10, 0)
    with pytest.raises(rq.InstanceTooLarge):
        rq.verify_theorem1(big, 1)
    with pytest.raises(rq.RangeError):
        rq.verify_theorem1(rq.gen_robinson_similarity(4, 0), 4)


def test_laplacian_quadratic_form_identity():
    rng = np.random.default_rng(43)
    for _ in range(20):
        n = int(rng.integers(2, 21))
        A = random_symmetric(rng, n, low=0, high=7)
        perm = random_permutation(rng, n)
        x = np.array(perm.image, dtype=np.int64)
        L = rq.laplacian(A).entries
        quad = sum(
            A.entries[i, j] * (perm(i + 1) - perm(j + 1)) ** 2
            for i in range(n)
            for j in range(n)
        )
        assert quad == 2 * (x @ L @ x)
