import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import invariant_factors_by_minors
from skeintl.errors import InvalidBlock, UnsupportedRing
from skeintl.forms import (
    CanonicalBlock, LambdaTrace, QPoly, block_matrix, block_stats, companion,
    forms_equivalent, invariant_factors, rational_canonical_form, similar, solve_blocks,
    solve_lambda,
)
from skeintl.matrix import Matrix
from skeintl.ring import GAUSSIAN, LAURENT, QuadraticNumber
from skeintl.rep import asymmetry, check_delta

G = CanonicalBlock.Gamma
H = CanonicalBlock.H


def signatures(sols):
    return sorted(s.signature() for s in sols)


def test_block_matrix_examples():
    assert block_matrix(G(1)).rows() == [[1]]
    assert block_matrix(H(1, 5)).rows() == [[0, 1], [5, 0]]
    assert block_matrix(G(2)).rows() == [[0, -1], [1, 1]]
    assert block_matrix(G(4)).rows() == [[0, 0, 0, -1], [0, 0, 1, 1], [0, -1, -1, 0], [1, 1, 0, 0]]


def test_gamma_two_is_indecomposable():
    # the asymmetry is a single Jordan block for eigenvalue -1
    inv = invariant_factors(asymmetry(block_matrix(G(2))))
    assert inv == [QPoly((1, 2, 1))]


def test_side_condition():
    with pytest.raises(InvalidBlock):
        H(1, 1)
    with pytest.raises(InvalidBlock):
        H(2, -1)
    with pytest.raises(InvalidBlock):
        H(1, 0)
    H(1, -1)
    H(2, 1)


def test_block_stats_examples():
    assert block_stats(G(1)) == (1, 1)
    assert block_stats(G(2)) == (2, -2)
    assert block_stats(H(1)) == (2, LambdaTrace(1))
    assert block_stats(H(2, 3)) == (4, 2 * (3 + Fraction(1, 3)))


@pytest.mark.parametrize("n", range(1, 7))
def test_gamma_trace_matches_stats(n):
    assert asymmetry(block_matrix(G(n))).trace() == block_stats(G(n))[1]


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lam", [2, 3, Fraction(1, 2)])
def test_h_trace_matches_stats(n, lam):
    b = H(n, lam)
    assert asymmetry(block_matrix(b)).trace() == block_stats(b)[1]


def test_solve_rank_three_delta_three():
    assert signatures(solve_blocks(3, 3)) == [(("Gamma", 1),) * 3, (("Gamma", 3),)]


def test_solve_rank_three_delta_minus_one():
    # H_1(-1) + Gamma_1 also has trace -1, and lambda = -1 is allowed for n = 1
    sols = solve_blocks(3, -1)
    assert signatures(sols) == [(("Gamma", 1), ("Gamma", 2)), (("Gamma", 1), ("H", 1))]
    (h,) = [s for s in sols if s.lam is not None]
    assert h.lam == -1


def test_solve_rank_three_delta_seven():
    (sol,) = solve_blocks(3, 7)
    assert sol.signature() == (("Gamma", 1), ("H", 1))
    assert sol.c == 6
    assert sol.lam == QuadraticNumber(3, 2, 2)
    assert check_delta(sol.instantiate(), 7)
    assert sol.to_json()[1] == {"variant": "H", "n": 1, "lambda": "3 + 2*sqrt(2)",
                                "constraint": "lambda + 1/lambda = 6"}


def test_no_h1_of_one_for_delta_three():
    for s in solve_blocks(3, 3):
        assert all(b.variant == "Gamma" for b in s.blocks)


def test_solve_lambda_roots():
    assert solve_lambda(Fraction(5, 2)) == 2
    assert solve_lambda(0) * solve_lambda(0) == -1


@pytest.mark.parametrize("rank", range(1, 7))
@pytest.mark.parametrize("delta", [-3, -1, 0, Fraction(1, 2), 2, 3, 7])
def test_every_solution_instantiates(rank, delta):
    for sol in solve_blocks(rank, delta):
        assert sol.rank == rank
        assert sol.trace == delta
        assert check_delta(sol.instantiate(), delta)


def test_max_blocks_caps_enumeration():
    assert all(len(s.blocks) <= 2 for s in solve_blocks(4, 0, max_blocks=2))
    assert any(len(s.blocks) == 4 for s in solve_blocks(4, 4))


def test_equivalence_examples():
    assert forms_equivalent(block_matrix(H(1, 2)), block_matrix(H(1, Fraction(1, 2))))
    triple = Matrix.direct_sum([block_matrix(G(1))] * 3)
    assert not forms_equivalent(triple, block_matrix(G(3)))
    assert not forms_equivalent(block_matrix(H(1, 2)), block_matrix(H(1, 3)))


def test_equivalence_rejects_other_rings():
    with pytest.raises(UnsupportedRing):
        forms_equivalent(Matrix.identity(2, LAURENT), Matrix.identity(2, LAURENT))
    with pytest.raises(UnsupportedRing):
        forms_equivalent(Matrix.identity(2, GAUSSIAN), Matrix.identity(2))


def random_unimodular(n, rng):
    P = Matrix.identity(n)
    for _ in range(4 * n):
        i, j = rng.sample(range(n), 2)
        P = P @ (Matrix.identity(n) + Matrix.from_rows([[rng.choice([-2, -1, 1, 2]) if (r, c) == (i, j) else 0
                                                          for c in range(n)] for r in range(n)]))
    return P


def random_form(n, rng):
    while True:
        B = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if B.det():
            return B


def test_congruence_invariance():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 4)
        B = random_form(n, rng)
        P = random_unimodular(n, rng)
        assert forms_equivalent(B, P.T @ B @ P)


def test_equivalence_relation_spot_checks():
    rng = random.Random(11)
    corpus = []
    for _ in range(12):
        B = random_form(3, rng)
        corpus += [B, (lambda P: P.T @ B @ P)(random_unimodular(3, rng))]
    for B in corpus:
        assert forms_equivalent(B, B)
    for B in corpus[:8]:
        for C in corpus[:8]:
            assert forms_equivalent(B, C) == forms_equivalent(C, B)
            for D in corpus[:8]:
                if forms_equivalent(B, C) and forms_equivalent(C, D):
                    assert forms_equivalent(B, D)


def test_companion_and_canonical_form():
    p = QPoly((2, -3, 1))
    C = companion(p)
    assert invariant_factors(C) == [p]
    M = Matrix.from_rows([[2, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert invariant_factors(rational_canonical_form(M)) == invariant_factors(M)
    assert similar(M, rational_canonical_form(M))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_invariant_factors_match_minors_oracle(rows):
    got = [list(p.coeffs) for p in invariant_factors(Matrix.from_rows(rows))]
    assert got == invariant_factors_by_minors(rows)


@given(st.integers(1, 3), st.sampled_from([2, 3, Fraction(1, 2), Fraction(-5, 3)]))
def test_h_inverse_parameter_congruent(n, lam):
    assert forms_equivalent(block_matrix(H(n, lam)), block_matrix(H(n, 1 / Fraction(lam))))


def test_h1_minus_one_plus_gamma1_is_a_distinct_solution():
    extra = Matrix.direct_sum([block_matrix(H(1, -1)), block_matrix(G(1))])
    expected = Matrix.direct_sum([block_matrix(G(2)), block_matrix(G(1))])
    assert check_delta(extra, -1) and check_delta(expected, -1)
    assert not forms_equivalent(extra, expected)
