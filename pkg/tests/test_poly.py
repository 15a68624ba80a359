from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszullab.errors import NotHomogeneous, RingMismatch
from koszullab.poly import Monomial, Ordering, is_homogeneous, make_ring, monomial_compare, poly_mul


def test_grevlex_examples():
    assert monomial_compare(Monomial((2, 0)), Monomial((1, 1))) == Ordering.GT
    assert monomial_compare(Monomial((1, 1, 0)), Monomial((0, 0, 2))) == Ordering.GT
    assert monomial_compare(Monomial((1, 0)), Monomial((1, 0))) == Ordering.EQ


def test_grevlex_degree_first():
    assert monomial_compare(Monomial((0, 0, 2)), Monomial((1, 0, 0))) == Ordering.GT


def test_mul_examples():
    R = make_ring("x,y", 7)
    x, y = R.gens()
    assert poly_mul(x + y, x - y) == R.parse("x^2 - y^2")
    assert poly_mul(x + y, R.zero()).is_zero()
    assert (x + y) ** 2 == R.parse("x^2 + 2*x*y + y^2")


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        make_ring("x,y").var(0) * make_ring("x,z").var(0)


def test_is_homogeneous():
    assert is_homogeneous([((2, 0), 1), ((1, 1), 1)]) == (True, 2)
    assert is_homogeneous([((1, 0), 1), ((2, 0), 1)])[0] is False
    ok, deg = is_homogeneous([])
    assert ok and deg is None


def test_parse_rejects_mixed_degree():
    R = make_ring("x,y")
    with pytest.raises(NotHomogeneous):
        R.parse("x + x^2")


def test_parse_and_print_round_trip():
    R = make_ring("a,b,c")
    f = R.parse("3*a^2*b - b^3 + a*b*c")
    assert R.parse(str(f)) == f


def test_term_list_descending():
    R = make_ring("x,y,z")
    f = R.parse("z^2 + x*y + x^2 + y*z")
    keys = [m for m, _ in f.term_list()]
    assert keys[0] == Monomial((2, 0, 0))
    for a, b in zip(keys, keys[1:]):
        assert monomial_compare(a, b) == Ordering.GT


def _exps(n, d):
    return st.lists(st.integers(0, d), min_size=n, max_size=n)


@settings(max_examples=300)
@given(_exps(3, 3), _exps(3, 3), _exps(3, 3), _exps(3, 3))
def test_order_total_and_multiplicative(a, b, c, m):
    A, B, C, Mm = (Monomial(tuple(v)) for v in (a, b, c, m))
    ab = monomial_compare(A, B)
    assert monomial_compare(B, A) == -ab
    if ab == Ordering.EQ:
        assert A == B
    if ab == Ordering.GT and monomial_compare(B, C) == Ordering.GT:
        assert monomial_compare(A, C) == Ordering.GT
    if ab == Ordering.GT:
        assert monomial_compare(A * Mm, B * Mm) == Ordering.GT


@st.composite
def homogeneous(draw, n=4):
    deg = draw(st.integers(0, 3))
    mons = draw(st.lists(st.tuples(*[st.integers(0, deg)] * n), max_size=4))
    mons = [m for m in mons if sum(m) == deg]
    coeffs = draw(st.lists(st.integers(1, 100), min_size=len(mons), max_size=len(mons)))
    return deg, list(zip(mons, coeffs))


@settings(max_examples=300)
@given(homogeneous(), homogeneous(), homogeneous())
def test_mul_assoc_comm(a, b, c):
    R = make_ring("w,x,y,z", 32003)
    f, g, h = (R.from_terms(t) for _, t in (a, b, c))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    if not f.is_zero() and not g.is_zero():
        assert (f * g).degree == f.degree + g.degree
