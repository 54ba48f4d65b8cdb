from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from agcycles.ppoly import P, PFrac, PPoly, ppoly_gcd

from strategies import ppolys

p = sympy.Symbol("p")


def to_sympy(a: PPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * p ** e for e, c in a.items()), sympy.Integer(0))


@given(ppolys, ppolys)
def test_ring_ops_match_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(ppolys, ppolys)
def test_divmod(a, b):
    if not b:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert not r or r.degree() < b.degree()


@given(ppolys, ppolys)
def test_gcd_matches_sympy(a, b):
    if not a and not b:
        return
    want = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), p)
    got = ppoly_gcd(a, b)
    assert sympy.expand(to_sympy(got) - want.monic().as_expr()) == 0


@given(ppolys, st.integers(-5, 5))
def test_evaluation(a, x):
    assert a(x) == to_sympy(a).subs(p, x)


@pytest.mark.parametrize("poly,text", [
    ((P - 1) / 24, "(p-1)/24"),
    (P ** 3 - 1, "p^3-1"),
    (-2 * (P ** 3 - 1), "-2*(p^3-1)"),
    (PPoly(Fraction(1, 24)), "1/24"),
    (PPoly(), "0"),
    (P, "p"),
    (-P, "-p"),
    (3 * P ** 2 + 6, "3*(p^2+2)"),
])
def test_render(poly, text):
    assert str(poly) == text


def test_zero_coefficients_dropped():
    assert PPoly({0: 0, 2: 0}) == PPoly()
    assert (P - P) == 0
    assert hash(PPoly([1, 2])) == hash(1 + 2 * P)


def test_rejects_floats():
    with pytest.raises(TypeError):
        PPoly(0.5)


@given(ppolys, ppolys, ppolys)
def test_pfrac_normal_form(a, b, c):
    if not b or not c:
        return
    f = PFrac(a * c, b * c)
    assert f == PFrac(a, b)
    assert f.den.leading() == 1
    assert f * PFrac(b) == PFrac(a)


def test_pfrac_render():
    f = PFrac((P + 1) ** 2, P ** 2 + 1)
    assert str(f) == "(p^2+2*p+1)/(p^2+1)"
    assert f(2) == Fraction(9, 5)
    with pytest.raises(ZeroDivisionError):
        PFrac(1, 0)
