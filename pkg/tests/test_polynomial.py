from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F1, load
from newtoncut.polynomial import Polynomial, PolynomialError, face_polynomial, parse_polynomial


def test_parse_basic():
    f = parse_polynomial("x1^2 + x2*x3", 3)
    assert f.terms == {(2, 0, 0): 1, (0, 1, 1): 1}


def test_parse_coefficients_and_signs():
    f = parse_polynomial(" -3/2*x1 + 2*x2^3 ", 2)
    assert f.terms == {(1, 0): Fraction(-3, 2), (0, 3): 2}
    g = parse_polynomial("x1 - x1 + x2", 2)
    assert g.terms == {(0, 1): 1}


def test_like_terms_merge():
    assert parse_polynomial("x1*x2 + 2*x2*x1", 2).terms == {(1, 1): 3}


@pytest.mark.parametrize("text,msg", [
    ("x1 + 1", "constant"),
    ("x4", "range"),
    ("x1 - x1", "cancel"),
    ("x1 +", "syntax"),
    ("x1^2x2", None),
    ("2 3*x1", None),
    ("x1^0", None),
])
def test_parse_errors(text, msg):
    with pytest.raises(PolynomialError, match=msg):
        parse_polynomial(text, 3)


def test_constant_that_cancels_is_fine():
    assert parse_polynomial("1 + x1 - 1", 1).terms == {(1,): 1}


def test_text_round_trip_examples():
    f = parse_polynomial(F1, 3)
    assert f.to_text() == "x1^2 + x1*x2^4 + x2^3*x3 + x3^3"
    assert parse_polynomial(f.to_text(), 3).terms == f.terms


def test_face_polynomial_facet():
    f, P = load(F1)
    face = P.face({P.facet_index((1, 0, 1))})
    assert face_polynomial(f, face).terms == {(1, 4, 0): 1, (0, 3, 1): 1}


def test_face_polynomial_whole_is_identity():
    f, P = load(F1)
    assert face_polynomial(f, P.face(set())).terms == f.terms


def test_face_polynomial_foreign_face():
    f, _ = load(F1)
    _, Q = load("x1+x2+x3")
    with pytest.raises(ValueError):
        face_polynomial(f, Q.face({0}))


def test_facet_supports_exhaustive(example):
    _, f, P = example
    for t, facet in enumerate(P.facets):
        on = {a for a in f.support if sum(x * y for x, y in zip(a, facet.u)) == facet.N}
        assert set(face_polynomial(f, P.face({t})).support) == on


terms = st.dictionaries(
    st.tuples(*[st.integers(0, 4)] * 3).filter(any),
    st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0),
    min_size=1, max_size=6,
)


@settings(max_examples=150, deadline=None)
@given(terms)
def test_print_parse_fixed_point(t):
    f = Polynomial(3, t)
    g = parse_polynomial(f.to_text(), 3)
    assert g.terms == f.terms
    assert parse_polynomial(g.to_text(), 3).terms == g.terms
