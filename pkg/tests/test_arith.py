from fractions import Fraction
from math import gcd, prod

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from agcycles import arith


@pytest.mark.parametrize("n", range(0, 30))
def test_bernoulli_matches_sympy(n):
    want = sympy.bernoulli(n)
    # sympy uses B_1 = +1/2 in recent versions; only the sign convention of B_1 differs
    if n == 1:
        assert abs(arith.bernoulli(1)) == Fraction(1, 2)
    else:
        assert arith.bernoulli(n) == Fraction(int(want.p), int(want.q))


@pytest.mark.parametrize("k", range(1, 10))
def test_zeta_negative_odd_matches_sympy(k):
    z = sympy.zeta(1 - 2 * k)
    assert arith.zeta_neg_odd(k) == Fraction(int(z.p), int(z.q))


def test_proportionality_examples():
    assert arith.proportionality_factor(1) == Fraction(1, 24)
    assert arith.proportionality_factor(2) == Fraction(1, 5760)
    assert arith.proportionality_factor(3) == Fraction(1, 2903040)


@given(st.integers(1, 12))
def test_proportionality_sign_and_recursion(g):
    # p(g)/p(g-1) = (-1)^g zeta(1-2g)/2, and p(g) > 0 by the sign choice
    prev = arith.proportionality_factor(g - 1) if g > 1 else Fraction(1)
    assert arith.proportionality_factor(g) / prev == (-1) ** g * arith.zeta_neg_odd(g) / 2
    assert arith.proportionality_factor(g) > 0


def test_primes():
    assert arith.primes_up_to(30) == list(sympy.primerange(0, 31))
    assert arith.primes_up_to(1) == []


@given(st.integers(1, 200), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_ppart_factorial(m, q):
    assert arith.ppart_factorial(m, q) == q ** sympy.multiplicity(q, sympy.factorial(m))


def test_ppart_factorial_rejects_composite():
    with pytest.raises(ValueError):
        arith.ppart_factorial(5, 4)


@pytest.mark.parametrize("g", range(1, 6))
def test_ng_against_bernoulli_denominator(g):
    # independent closed form: n_g is the denominator of B_2g / 4g
    b = sympy.bernoulli(2 * g) / (4 * g)
    assert arith.ng(g) == int(sympy.denom(b))


def test_ng_small_values():
    assert [arith.ng(g) for g in (1, 2, 3)] == [24, 240, 504]


@pytest.mark.parametrize("g", range(1, 5))
def test_ng_divides_far_primes(g):
    n = arith.ng(g)
    for p in sympy.primerange(2 * g + 2, 2000):
        assert (p ** (2 * g) - 1) % n == 0


def test_ng_gcd_direct():
    # brute-force gcd over many primes
    for g in (1, 2, 3):
        d = 0
        for p in sympy.primerange(2 * g + 2, 3000):
            d = gcd(d, p ** (2 * g) - 1)
        assert d == arith.ng(g)


def test_ng_budget_exhausted():
    with pytest.raises(arith.StabilizationError):
        arith.ng(3, window=25, budget=5)


@pytest.mark.parametrize("g", range(1, 5))
def test_lemma_product(g):
    assert arith.lemma115_rhs(g) == prod(arith.ng(i) for i in range(1, g + 1))


def test_torsion_bounds():
    assert [arith.torsion_bound(g) for g in (1, 2, 3)] == [24, 5760, 5806080]


@given(st.integers(0, 25))
def test_double_factorial(n):
    assert arith.double_factorial(n) == sympy.factorial2(n)
