import random
from fractions import Fraction

import pytest
import sympy

from skeintl.errors import NotInvertible, RingMismatch
from skeintl.matrix import Matrix
from skeintl.ring import A, A_INV, GAUSSIAN, LAURENT, RATIONAL, I


def random_unimodular_laurent(n, rng):
    """Product of random elementary matrices with monomial pivots."""
    M = Matrix.identity(n, LAURENT)
    for _ in range(3 * n if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        E = Matrix.identity(n, LAURENT) + Matrix(LAURENT, (n, n), {(i, j): rng.choice([A, -A_INV, 2 * A + 1, 1])})
        M = M @ E
    D = Matrix(LAURENT, (n, n), {(k, k): rng.choice([A, -A_INV, -1, 1]) for k in range(n)})
    return M @ D


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_inverse_routes_agree_on_unimodular_laurent(n):
    rng = random.Random(n)
    M = random_unimodular_laurent(n, rng)
    inv = M.inverse()
    assert M @ inv == Matrix.identity(n, LAURENT)
    assert inv @ M == Matrix.identity(n, LAURENT)
    assert M.inverse_bareiss() == M.inverse_cramer()
    if n <= 5:
        assert M.det() == M.det_leibniz()


def test_rational_det_and_inverse_match_sympy():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        M = Matrix.from_rows(rows)
        S = sympy.Matrix(rows)
        assert M.det() == S.det()
        if S.det() != 0:
            assert M.inverse().rows() == S.inv().tolist()
            assert M.inverse_bareiss() == M.inverse_cramer()
        else:
            with pytest.raises(NotInvertible):
                M.inverse()
        assert M.rank() == S.rank()


def test_non_unit_determinant_over_laurent():
    M = Matrix.from_rows([[2, 0], [0, 1]], LAURENT)
    with pytest.raises(NotInvertible):
        M.inverse()


def test_kron_and_transpose():
    X = Matrix.from_rows([[1, 2], [3, 4]])
    Y = Matrix.from_rows([[0, 1], [1, 0]])
    K = X.kron(Y)
    assert K.rows() == sympy.kronecker_product(sympy.Matrix(X.rows()), sympy.Matrix(Y.rows())).tolist()
    assert X.T.rows() == [[1, 3], [2, 4]]
    assert X.trace() == 5


def test_gaussian_conj_transpose():
    M = Matrix.from_rows([[I, 1], [0, -I]], GAUSSIAN)
    assert M.conj_transpose().rows() == [[-I, 0], [1, I]]


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Matrix.identity(2, RATIONAL) @ Matrix.identity(2, LAURENT)


def test_zeros_not_stored():
    M = Matrix.from_rows([[0, 1], [0, 0]])
    assert M.nnz == 1
