"""Exact scalar arithmetic: Bernoulli numbers, zeta values, torsion integers.

Rationals are :class:`fractions.Fraction`, which is always in lowest terms
with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd, prod

from . import _kernels

Rational = Fraction

NG_WINDOW = 25
NG_PRIME_BUDGET = 10_000


class StabilizationError(RuntimeError):
    """The running gcd kept changing until the prime budget ran out."""


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, k) * table[k] for k in range(m))
        table.append(-s / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """``B_n`` with ``B_1 = -1/2``, from ``sum_{k<=n} C(n+1,k) B_k = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _bernoulli_table(n)[n]


def zeta_neg_odd(k: int) -> Fraction:
    """``zeta(1-2k) = -B_{2k}/(2k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    return -bernoulli(2 * k) / (2 * k)


def proportionality_factor(g: int) -> Fraction:
    """``p(g) = (-1)^G prod_{j<=g} zeta(1-2j)/2`` with ``G = g(g+1)/2``."""
    if g < 1:
        raise ValueError("g must be positive")
    sign = -1 if (g * (g + 1) // 2) % 2 else 1
    return sign * prod((zeta_neg_odd(j) / 2 for j in range(1, g + 1)), start=Fraction(1))


def primes_up_to(limit: int) -> list[int]:
    return [int(q) for q in _kernels.prime_sieve(limit)]


def _primes_above(bound: int):
    limit = max(1024, 4 * bound)
    seen = bound
    while True:
        for q in primes_up_to(limit):
            if q > seen:
                seen = q
                yield q
        limit *= 2


def _legendre(m: int, q: int) -> int:
    v, qe = 0, q
    while qe <= m:
        v += m // qe
        qe *= q
    return v


def ppart_factorial(m: int, q: int) -> int:
    """The ``q``-part of ``m!``, i.e. ``q**v_q(m!)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise ValueError(f"{q} is not prime")
    return q ** _legendre(m, q)


@lru_cache(maxsize=None)
def lemma115_rhs(g: int) -> int:
    """``prod_q (floor(2gq/(q-1))!)_q`` over all primes ``q``.

    Only ``q <= 2g+1`` can contribute, because otherwise the factorial
    argument is below ``q``.
    """
    if g < 1:
        raise ValueError("g must be positive")
    out = 1
    for q in primes_up_to(2 * g + 1):
        out *= ppart_factorial(2 * g * q // (q - 1), q)
    return out


@lru_cache(maxsize=None)
def ng(g: int, window: int = NG_WINDOW, budget: int = NG_PRIME_BUDGET) -> int:
    """gcd of ``p^{2g} - 1`` over primes ``p > 2g+1``.

    Stops once ``window`` consecutive primes leave the gcd unchanged and
    raises :class:`StabilizationError` if that never happens within
    ``budget`` primes.
    """
    if g < 1:
        raise ValueError("g must be positive")
    acc, quiet = 0, 0
    for used, q in enumerate(_primes_above(2 * g + 1), start=1):
        new = gcd(acc, q ** (2 * g) - 1)
        quiet = quiet + 1 if new == acc else 0
        acc = new
        if quiet >= window:
            break
        if used >= budget:
            raise StabilizationError(f"gcd for g={g} did not settle within {budget} primes")
    if lemma115_rhs(g) % acc:
        raise ArithmeticError(f"n_{g} = {acc} does not divide the factorial product {lemma115_rhs(g)}")
    return acc


def torsion_bound(g: int) -> int:
    """``(g-1)! * prod_{i<=g} n_i``, an annihilator of ``lambda_g`` on A_g."""
    if g < 1:
        raise ValueError("g must be positive")
    return factorial(g - 1) * prod(ng(i) for i in range(1, g + 1))


def double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1
