import random
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from newtoncut import upoly
from newtoncut.linalg import det, fmt_q, invariant_factors, lattice_coordinates, primitive, rank, smith_normal_form

small = st.integers(-6, 6)


def test_fmt_q():
    assert fmt_q(Fraction(9, 2)) == "9/2"
    assert fmt_q(Fraction(-3)) == "-3"


def test_primitive():
    assert primitive((0, 6, 4)) == (0, 3, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_matches_sympy(r, c, data):
    A = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    S, U, V = smith_normal_form(A)
    M = sympy.Matrix(A)
    assert sympy.Matrix(U) * M * sympy.Matrix(V) == sympy.Matrix(S)
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    ref = sympy_snf(M, domain=sympy.ZZ)
    ours = [abs(S[i][i]) for i in range(min(r, c))]
    theirs = [abs(ref[i, i]) for i in range(min(r, c))]
    assert ours == theirs
    assert rank(A) == M.rank()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.data())
def test_det_and_invariants(n, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    d = det(A)
    assert d == sympy.Matrix(A).det()
    if d:
        prod = 1
        for x in invariant_factors(A):
            prod *= x
        assert prod == abs(d)


def test_lattice_coordinates_collapses_edge():
    diffs = [(0, 0, 0), (2, -2, 0), (4, -4, 0)]
    d, V = lattice_coordinates(diffs, 3)
    assert d == 1
    assert abs(det(V)) == 1  # a torus automorphism, not just a rational change
    images = [[sum(w[j] * V[j][k] for j in range(3)) for k in range(3)] for w in diffs]
    assert all(img[1:] == [0, 0] for img in images)
    assert sorted(abs(img[0]) for img in images) == [0, 2, 4]


polys = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_gcd_matches_sympy(p, q):
    s = sympy.Symbol("s")
    P = sum(c * s**k for k, c in enumerate(p))
    Q = sum(c * s**k for k, c in enumerate(q))
    g = upoly.pgcd([Fraction(c) for c in p], [Fraction(c) for c in q])
    ref = sympy.Poly(sympy.gcd(P, Q), s)
    if ref.is_zero:
        assert upoly.degree(g) < 0
    else:
        assert upoly.degree(g) == ref.degree()


@settings(max_examples=150, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=1, max_size=4), st.integers(1, 4))
def test_linear_factorization(roots, extra):
    p = [Fraction(extra)]
    for r in roots:
        p = upoly.mul(p, [-r, Fraction(1)])
    factors, rest = upoly.linear_factorization(p)
    got = sorted(r for r, m in factors for _ in range(m))
    assert got == sorted(roots)
    assert upoly.degree(rest) == 0


def test_irreducible_quadratic_left_over():
    factors, rest = upoly.linear_factorization([Fraction(-2), Fraction(0), Fraction(1)])
    assert factors == [] and upoly.degree(rest) == 2
