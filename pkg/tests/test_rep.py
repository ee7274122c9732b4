from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import links, words
from oracles import a, dense_word, engine_matrix_to_sympy
from skeintl.dsl import parse_word
from skeintl.errors import DeltaMismatch, NotInvertible
from skeintl.matrix import Matrix
from skeintl.ring import A, DELTA, GAUSSIAN, LAURENT, I, evaluate_poly
from skeintl.rep import (
    asymmetry, base_form, check_delta, compose_images, evaluate_functor, evaluate_word,
    form_from_json, form_inverse, form_to_json, make_representation, matching_tensor,
    rank_n_form, rank_n_steps,
)
from skeintl.skein import bracket
from skeintl.tangle import TangleWord
from skeintl.tl import TLElement, tl_basis, tl_compose, tl_tensor

s = A + A ** -1


def test_base_form_inverse():
    B = base_form()
    assert form_inverse(B) == Matrix(LAURENT, (2, 2), {(0, 0): 1, (0, 1): -s, (1, 1): 1})
    assert form_inverse(Matrix.identity(3, LAURENT)) == Matrix.identity(3, LAURENT)


def test_non_unit_determinant():
    with pytest.raises(NotInvertible):
        form_inverse(Matrix.from_rows([[2, 0], [0, 1]], LAURENT))


def test_asymmetry_examples():
    assert asymmetry(Matrix.from_rows([[1, 2], [2, 5]])) == Matrix.identity(2)
    assert asymmetry(Matrix.from_rows([[0, 1], [-1, 0]])) == -Matrix.identity(2)
    expected = Matrix(LAURENT, (2, 2), {(0, 0): 1 - s * s, (0, 1): -s, (1, 0): s, (1, 1): 1})
    assert asymmetry(base_form()) == expected
    assert expected.trace() == DELTA


def test_check_delta_examples():
    assert check_delta(base_form(), DELTA)
    for n in range(1, 5):
        assert check_delta(Matrix.identity(n, LAURENT), n)
    assert not check_delta(Matrix.from_rows([[0, 1], [1, 0]], LAURENT), DELTA)


def test_make_representation():
    rep = make_representation(base_form())
    assert rep.delta == DELTA and rep.rank == 2
    with pytest.raises(DeltaMismatch) as err:
        make_representation(Matrix.identity(2, LAURENT))
    assert err.value.trace == 2 and err.value.expected == DELTA
    rep_i = make_representation(Matrix.identity(2), I)
    assert rep_i.ring is GAUSSIAN and rep_i.delta == 2


def test_loop_and_identity_images():
    rep = make_representation(base_form())
    assert evaluate_functor(rep, parse_word("@unknot")) == Matrix(LAURENT, (1, 1), {(0, 0): DELTA})
    assert evaluate_functor(rep, TangleWord.identity(1)) == Matrix.identity(2, LAURENT)


@pytest.mark.parametrize("n", [2, 3])
def test_turnback_image_idempotent_up_to_delta(n):
    rep = make_representation(rank_n_form(n))
    E = evaluate_functor(rep, parse_word("@e"))
    assert E @ E == E.scale(DELTA)


def test_rank_n_form_examples():
    assert rank_n_form(2) == base_form()
    assert rank_n_form(3) == Matrix(LAURENT, (3, 3), {(0, 0): 1, (0, 1): s, (1, 1): 1, (1, 2): 1, (2, 2): 1})
    assert check_delta(rank_n_form(10), DELTA)


def test_bordered_steps_keep_corner_and_det():
    for k, (B, inv) in enumerate(rank_n_steps(10), start=2):
        assert check_delta(B, DELTA)
        assert inv[(k - 1, k - 1)] == 1
        assert B.det() == 1
        assert B @ inv == Matrix.identity(k, LAURENT)


def test_rank_n_form_at_numeric_point():
    B = rank_n_form(4, Fraction(2))
    assert check_delta(B, Fraction(-17, 4))


@pytest.mark.parametrize("n", [2, 3])
def test_snake_identities(n):
    rep = make_representation(rank_n_form(n))
    for text in ("(cup * id(1)) ; (id(1) * cap)", "(id(1) * cup) ; (cap * id(1))"):
        assert evaluate_word(rep, parse_word(text)) == Matrix.identity(n, LAURENT)


def test_functor_against_dense_oracle():
    B = [[1, a + 1 / a], [0, 1]]
    rep = make_representation(base_form())
    for text in ("x+", "x-", "@e", "(x+ * id(1)) ; (id(1) * x-)", "(id(1) * cup) ; (x+ * id(1))"):
        w = parse_word(text)
        got = engine_matrix_to_sympy(evaluate_word(rep, w))
        want = dense_word(B, w)
        assert (got - want).applyfunc(sympy.simplify) == sympy.zeros(*want.shape)


def test_matching_tensor_agrees_with_words():
    from skeintl.tl import matching_word

    for n in (2, 3):
        rep = make_representation(rank_n_form(n))
        for m, k in [(2, 2), (1, 3), (3, 1), (0, 4), (3, 3)]:
            for mt in tl_basis(m, k):
                assert matching_tensor(rep, mt) == evaluate_word(rep, matching_word(mt))


def test_form_json_round_trip():
    B = rank_n_form(3)
    assert form_from_json(form_to_json(B)) == B
    with pytest.raises(ValueError):
        form_from_json({"ring": "laurent", "matrix": [["1", "0"]]})


def tl_elements(m, n):
    basis = tl_basis(m, n)
    coeff = st.sampled_from([A, -A ** -2, DELTA, 1 - A ** 3])
    return st.dictionaries(st.sampled_from(basis), coeff, min_size=1, max_size=2).map(
        lambda d: TLElement(m, n, d))


REPS = {}


def rep_of(n):
    if n not in REPS:
        REPS[n] = make_representation(rank_n_form(n))
    return REPS[n]


@given(st.data(), st.sampled_from([2, 3]))
def test_functoriality(data, n):
    rep = rep_of(n)
    m = data.draw(st.integers(0, 3))
    k = data.draw(st.sampled_from([j for j in range(4) if (m + j) % 2 == 0]))
    p = data.draw(st.sampled_from([j for j in range(4) if (k + j) % 2 == 0]))
    x, y = data.draw(tl_elements(m, k)), data.draw(tl_elements(k, p))
    assert evaluate_functor(rep, tl_compose(x, y)) == compose_images(evaluate_functor(rep, x), evaluate_functor(rep, y))


@given(st.data(), st.sampled_from([2, 3]))
def test_monoidality(data, n):
    rep = rep_of(n)
    shapes = [(0, 2), (2, 0), (1, 1), (2, 2), (1, 3)]
    (m1, n1), (m2, n2) = data.draw(st.sampled_from(shapes)), data.draw(st.sampled_from(shapes))
    x, y = data.draw(tl_elements(m1, n1)), data.draw(tl_elements(m2, n2))
    assert evaluate_functor(rep, tl_tensor(x, y)) == evaluate_functor(rep, x).kron(evaluate_functor(rep, y))


@given(links(max_len=10, max_width=4))
def test_bracket_consistency_symbolic(w):
    for n in (2, 3):
        v = evaluate_word(rep_of(n), w)
        assert v.shape == (1, 1) and v[(0, 0)] == bracket(w)


@given(links(max_len=10, max_width=4), st.sampled_from([I, Fraction(2), Fraction(-1, 3)]))
def test_bracket_consistency_numeric(w, point):
    rep = make_representation(rank_n_form(2), point)
    assert evaluate_word(rep, w)[(0, 0)] == evaluate_poly(bracket(w), point)


@given(words(source=2, max_len=4, max_width=4, target=2))
def test_word_route_equals_skein_route(w):
    rep = rep_of(2)
    assert evaluate_word(rep, w) == evaluate_functor(rep, w)
