"""The tautological ring ``R_g`` on square-free lambda monomials.

A class is a map from sorted index tuples ``(i_1 < ... < i_k)`` to
``PPoly`` coefficients; the tuple stands for ``l_{i_1} ... l_{i_k}``.
Products are reduced with the square rule

    l_k^2 = 2 * sum_{j=1..k} (-1)^(j-1) l_{k+j} l_{k-j},   l_0 = 1, l_m = 0 (m > g)

applied to the largest repeated index first.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .arith import double_factorial, proportionality_factor
from .ppoly import PPoly

STEP_BUDGET = 10 ** 6

Subset = tuple[int, ...]


class RingMode(enum.Enum):
    COMPACT = "compact"  # R_g
    OPEN = "open"        # R_g / (l_g), isomorphic to R_{g-1}

    @classmethod
    def parse(cls, text: str | RingMode) -> RingMode:
        if isinstance(text, cls):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown ring mode {text!r}; use 'compact' or 'open'") from None


class GenusMismatch(ValueError):
    pass


class ReductionBudgetExceeded(RuntimeError):
    pass


def subset_degree(s: Iterable[int]) -> int:
    return sum(s)


def top_degree(g: int) -> int:
    return g * (g + 1) // 2


# ---------------------------------------------------------------- reduction

@lru_cache(maxsize=None)
def _reduce_exponents(g: int, exps: tuple[int, ...]) -> tuple[tuple[Subset, Fraction], ...]:
    # Iterative expansion with an explicit work list so a runaway rewrite is
    # caught by the step budget rather than by the recursion limit.
    out: dict[Subset, Fraction] = {}
    work: dict[tuple[int, ...], Fraction] = {exps: Fraction(1)}
    steps = 0
    while work:
        e, coef = work.popitem()
        k = next((i for i in range(g, 0, -1) if e[i - 1] >= 2), 0)
        if not k:
            key = tuple(i for i in range(1, g + 1) if e[i - 1])
            s = out.get(key, 0) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
            continue
        steps += 1
        if steps > STEP_BUDGET:
            raise ReductionBudgetExceeded(f"reduction of {exps} exceeded {STEP_BUDGET} steps")
        base = list(e)
        base[k - 1] -= 2
        for j in range(1, k + 1):
            hi, lo = k + j, k - j
            if hi > g:
                break
            ne = list(base)
            ne[hi - 1] += 1
            if lo:
                ne[lo - 1] += 1
            t = tuple(ne)
            c = work.get(t, 0) + (2 if j % 2 else -2) * coef
            if c:
                work[t] = c
            else:
                work.pop(t, None)
    return tuple(sorted(out.items()))


def reduce_monomial(g: int, indices: Iterable[int], mode: RingMode = RingMode.COMPACT) -> TautClass:
    """Square-free normal form of ``prod_{i in indices} l_i`` in ``R_g``."""
    exps = [0] * g
    for i in indices:
        if not 1 <= i <= g:
            raise ValueError(f"index {i} outside 1..{g}")
        exps[i - 1] += 1
    if mode is RingMode.OPEN and exps[g - 1]:
        return TautClass.zero(g, mode)
    terms = {s: PPoly(c) for s, c in _reduce_exponents(g, tuple(exps))}
    return TautClass(g, terms, mode)


def _mul_subsets(g: int, a: Subset, b: Subset) -> tuple[tuple[Subset, Fraction], ...]:
    if not set(a) & set(b):
        return ((tuple(sorted(a + b)), Fraction(1)),)
    exps = [0] * g
    for i in a + b:
        exps[i - 1] += 1
    return _reduce_exponents(g, tuple(exps))


# ---------------------------------------------------------------- classes

class TautClass:
    """Element of ``R_g`` (COMPACT) or of ``R_g/(l_g)`` (OPEN)."""

    __slots__ = ("g", "mode", "_terms")

    def __init__(self, g: int, terms: Mapping[Iterable[int], object] | None = None,
                 mode: RingMode = RingMode.COMPACT):
        if g < 1:
            raise ValueError("g must be positive")
        self.g = g
        self.mode = RingMode.parse(mode)
        clean: dict[Subset, PPoly] = {}
        for s, c in (terms or {}).items():
            key = tuple(sorted(s))
            if len(set(key)) != len(key):
                raise ValueError(f"subset {s} has repeated indices; use reduce_monomial")
            if key and not (1 <= key[0] and key[-1] <= g):
                raise ValueError(f"subset {s} not inside 1..{g}")
            if self.mode is RingMode.OPEN and g in key:
                continue
            c = clean.get(key, PPoly()) + PPoly.coerce(c)
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self._terms = clean

    # constructors
    @classmethod
    def zero(cls, g, mode=RingMode.COMPACT):
        return cls(g, {}, mode)

    @classmethod
    def one(cls, g, mode=RingMode.COMPACT):
        return cls(g, {(): 1}, mode)

    @classmethod
    def lam(cls, g: int, i: int, mode=RingMode.COMPACT) -> TautClass:
        """The Hodge class ``l_i`` (``l_0 = 1``, ``l_i = 0`` for ``i > g``)."""
        if i == 0:
            return cls.one(g, mode)
        if i > g:
            return cls.zero(g, mode)
        return cls(g, {(i,): 1}, mode)

    @classmethod
    def monomial(cls, g: int, indices: Iterable[int], coeff=1, mode=RingMode.COMPACT) -> TautClass:
        return reduce_monomial(g, indices, RingMode.parse(mode)) * coeff

    # inspection
    @property
    def terms(self) -> dict[Subset, PPoly]:
        return dict(self._terms)

    def coeff(self, subset: Iterable[int]) -> PPoly:
        return self._terms.get(tuple(sorted(subset)), PPoly())

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (subset_degree(kv[0]), kv[0]))

    def degrees(self) -> set[int]:
        return {subset_degree(s) for s in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, d: int) -> TautClass:
        return TautClass(self.g, {s: c for s, c in self._terms.items() if subset_degree(s) == d}, self.mode)

    def map_coeffs(self, fn) -> TautClass:
        return TautClass(self.g, {s: fn(c) for s, c in self._terms.items()}, self.mode)

    def evaluate_p(self, value) -> TautClass:
        return self.map_coeffs(lambda c: PPoly(c(value)))

    def to_mode(self, mode) -> TautClass:
        return TautClass(self.g, self._terms, RingMode.parse(mode))

    def __bool__(self):
        return bool(self._terms)

    # arithmetic
    def _check(self, other: TautClass):
        if self.g != other.g:
            raise GenusMismatch(f"genus {self.g} vs {other.g}")
        if self.mode is not other.mode:
            raise GenusMismatch(f"ring mode {self.mode.value} vs {other.mode.value}")

    def _lift(self, other) -> TautClass | None:
        if isinstance(other, TautClass):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PPoly)):
            return TautClass(self.g, {(): other}, self.mode)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for s, c in other._terms.items():
            terms[s] = terms.get(s, PPoly()) + c
        return TautClass(self.g, terms, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PPoly)):
            return TautClass(self.g, {s: c * other for s, c in self._terms.items()}, self.mode)
        if not isinstance(other, TautClass):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = TautClass.one(self.g, self.mode), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TautClass):
            return (self.g, self.mode, self._terms) == (other.g, other.mode, other._terms)
        if isinstance(other, (int, Fraction, PPoly)):
            return self == TautClass(self.g, {(): other}, self.mode)
        return NotImplemented

    def __hash__(self):
        return hash((self.g, self.mode, frozenset(self._terms.items())))

    def __repr__(self):
        return f"TautClass(g={self.g}, {self.mode.value}, {self})"

    def __str__(self):
        return render_class(self)


def mul(a: TautClass, b: TautClass) -> TautClass:
    a._check(b)
    g = a.g
    acc: dict[Subset, PPoly] = {}
    for sa, ca in a._terms.items():
        for sb, cb in b._terms.items():
            c = ca * cb
            for s, v in _mul_subsets(g, sa, sb):
                acc[s] = acc.get(s, PPoly()) + c * v
    return TautClass(g, acc, a.mode)


# ---------------------------------------------------------------- degrees

def degree_Yg(c: TautClass) -> PPoly:
    """Coefficient of ``l_1 l_2 ... l_g`` of a top-degree class.

    Classes may carry coefficients in ``p``; the result is then a ``PPoly``.
    """
    if c.mode is not RingMode.COMPACT:
        raise ValueError("degrees are defined on the compact ring only")
    top = top_degree(c.g)
    bad = c.degrees() - {top}
    if bad:
        raise ValueError(f"class has components in degree {sorted(bad)}, expected only {top}")
    return c.coeff(range(1, c.g + 1))


def degree_Ag_tilde(c: TautClass) -> PPoly:
    """Degree on the toroidal compactification via Hirzebruch proportionality."""
    return degree_Yg(c) * proportionality_factor(c.g)


def lambda1_power_degree(g: int) -> Fraction:
    """Closed formula ``p(g) G! prod 1/(2k-1)!!`` for ``deg l_1^G``."""
    from math import factorial, prod

    return proportionality_factor(g) * factorial(top_degree(g)) / prod(
        double_factorial(2 * k - 1) for k in range(1, g + 1))


def basis(g: int, mode: RingMode = RingMode.COMPACT) -> list[Subset]:
    """Square-free monomials, ordered by the binary number ``sum eps_i 2^(i-1)``."""
    mode = RingMode.parse(mode)
    n = g - 1 if mode is RingMode.OPEN else g
    return [tuple(i + 1 for i in range(n) if m >> i & 1) for m in range(2 ** n)]


def basis_in_degree(g: int, d: int, mode: RingMode = RingMode.COMPACT) -> list[Subset]:
    return [s for s in basis(g, mode) if subset_degree(s) == d]


def all_subsets(g: int) -> list[Subset]:
    return [c for k in range(g + 1) for c in combinations(range(1, g + 1), k)]


# ---------------------------------------------------------------- rendering

def coeff_factor(c: PPoly) -> tuple[int, str]:
    """Split ``c`` into a sign and text usable as a factor before ``*``."""
    if c.is_constant():
        v = c.constant()
        return (1 if v > 0 else -1), str(abs(v))
    text = str(c)
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    # only a bare primitive sum like "p-1" lacks its own parentheses
    if ("+" in text or "-" in text) and "(" not in text:
        text = f"({text})"
    return sign, text


def render_monomial(s: Subset) -> str:
    return "*".join(f"l{i}" for i in s)


def render_class(c: TautClass) -> str:
    if not c:
        return "0"
    parts = []
    for s, coef in c.items():
        sign, text = coeff_factor(coef)
        mono = render_monomial(s)
        if not mono:
            body = text
        elif text == "1":
            body = mono
        else:
            body = f"{text}*{mono}"
        if not parts:
            parts.append(body if sign > 0 else f"-{body}")
        else:
            parts.append((" + " if sign > 0 else " - ") + body)
    return "".join(parts)
