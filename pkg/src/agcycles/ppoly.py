"""Univariate polynomials in the characteristic ``p`` with rational coefficients.

``PPoly`` is the coefficient ring of every cycle class in the package and
``PFrac`` holds the few quantities (``h(g)`` and friends) that are only
rational functions of ``p``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

Scalar = int | Fraction


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


class PPoly:
    """Immutable sparse polynomial ``sum c_e p^e`` over the rationals.

    Zero coefficients are never stored, so structural equality is
    mathematical equality.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | Iterable[Scalar] | Scalar = ()):
        if isinstance(coeffs, PPoly):
            self._c = coeffs._c
        elif isinstance(coeffs, (int, Fraction, Rational)):
            c = _frac(coeffs)
            self._c = {0: c} if c else {}
        elif isinstance(coeffs, Mapping):
            d = {}
            for e, v in coeffs.items():
                if e < 0:
                    raise ValueError("negative exponent")
                v = _frac(v)
                if v:
                    d[int(e)] = v
            self._c = d
        else:
            self._c = {e: _frac(v) for e, v in enumerate(coeffs) if v}
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, d: dict[int, Fraction]) -> PPoly:
        obj = cls.__new__(cls)
        obj._c = d
        obj._hash = None
        return obj

    @classmethod
    def p(cls) -> PPoly:
        return cls._raw({1: Fraction(1)})

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> PPoly:
        return cls({exp: coeff})

    @staticmethod
    def coerce(value) -> PPoly:
        if isinstance(value, PPoly):
            return value
        return PPoly(value)

    # inspection
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def degree(self) -> int:
        """Largest stored exponent; ``-1`` for the zero polynomial."""
        return max(self._c, default=-1)

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def leading(self) -> Fraction:
        return self._c[self.degree()] if self._c else Fraction(0)

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeff(0)

    def __bool__(self):
        return bool(self._c)

    def __call__(self, value):
        """Evaluate at ``value`` (exact when ``value`` is an int or Fraction)."""
        acc = Fraction(0) if not isinstance(value, PPoly) else PPoly()
        for e in range(self.degree(), -1, -1):
            acc = acc * value + self.coeff(e)
        return acc

    # arithmetic
    def __add__(self, other):
        try:
            other = PPoly.coerce(other)
        except TypeError:
            return NotImplemented
        d = dict(self._c)
        for e, v in other._c.items():
            s = d.get(e, 0) + v
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return PPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return PPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        try:
            other = PPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return PPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return PPoly()
            return PPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, PPoly):
            return NotImplemented
        d: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + v1 * v2
        return PPoly._raw({e: v for e, v in d.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = PPoly(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        if isinstance(other, PPoly):
            q, r = divmod(self, other)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            return q
        return NotImplemented

    def __divmod__(self, other: PPoly):
        other = PPoly.coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._c)
        quo: dict[int, Fraction] = {}
        dd, lc = other.degree(), other.leading()
        while rem and max(rem) >= dd:
            top = max(rem)
            f = rem[top] / lc
            quo[top - dd] = f
            for e, v in other._c.items():
                k = e + top - dd
                s = rem.get(k, 0) - f * v
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return PPoly._raw(quo), PPoly._raw(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> PPoly:
        if not self:
            return self
        return self * (1 / self.leading())

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self._c:
            return Fraction(0)
        den = lcm(*(v.denominator for v in self._c.values()))
        num = 0
        for v in self._c.values():
            num = gcd(num, int(v * den))
        return Fraction(num, den)

    def primitive(self) -> tuple[Fraction, dict[int, int]]:
        """Split as ``c * N(p)`` with ``N`` integral, primitive and ``c`` signed."""
        c = self.content()
        if not c:
            return Fraction(0), {}
        if self.leading() < 0:
            c = -c
        return c, {e: int(v / c) for e, v in self._c.items()}

    # comparison
    def __eq__(self, other):
        if isinstance(other, PPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._c[0] if set(self._c) == {0} else frozenset(self._c.items()))
        return self._hash

    # rendering
    def __repr__(self):
        return f"PPoly({self})"

    def __str__(self):
        return render_ppoly(self)


def _render_int_poly(coeffs: dict[int, int]) -> str:
    out = []
    for e in sorted(coeffs, reverse=True):
        v = coeffs[e]
        mag = abs(v)
        if e == 0:
            body = str(mag)
        else:
            var = "p" if e == 1 else f"p^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not out:
            out.append(body if v > 0 else "-" + body)
        else:
            out.append(("+" if v > 0 else "-") + body)
    return "".join(out) or "0"


def render_ppoly(poly: PPoly) -> str:
    """Canonical text: ``(p-1)/24``, ``p^3-1``, ``-2*(p^3-1)``, ``1/24``."""
    if not poly:
        return "0"
    if poly.is_constant():
        return str(poly.constant())
    c, prim = poly.primitive()
    inner = _render_int_poly(prim)
    wrap = f"({inner})" if len(prim) > 1 else inner
    num, den = c.numerator, c.denominator
    if num == 1:
        text = inner if den == 1 else wrap
    elif num == -1:
        text = f"-{wrap}"
    else:
        text = f"{num}*{wrap}"
    return text if den == 1 else f"{text}/{den}"


P = PPoly.p()


def ppoly_gcd(a: PPoly, b: PPoly) -> PPoly:
    """Monic gcd over Q (zero when both inputs vanish)."""
    a, b = PPoly.coerce(a), PPoly.coerce(b)
    while b:
        a, b = b, a % b
    return a.monic()


class PFrac:
    """Reduced quotient ``num/den`` of polynomials in ``p``.

    Normal form: ``gcd(num, den) = 1``, ``den`` monic; the sign and any
    rational content travel with the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = PPoly.coerce(num), PPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = ppoly_gcd(num, den) if num else den.monic()
        num, den = num // g, den // g
        lc = den.leading()
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)

    def is_polynomial(self) -> bool:
        return self.den == 1

    def __add__(self, other):
        other = _pfrac(other)
        return PFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return PFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_pfrac(other))

    def __rsub__(self, other):
        return _pfrac(other) - self

    def __mul__(self, other):
        other = _pfrac(other)
        return PFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _pfrac(other)
        return PFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _pfrac(other) / self

    def __call__(self, value):
        return self.num(value) / self.den(value)

    def __eq__(self, other):
        try:
            other = _pfrac(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"PFrac({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        d = render_ppoly(self.den)
        return f"({self.num})/({d})"


def _pfrac(value) -> PFrac:
    if isinstance(value, PFrac):
        return value
    if isinstance(value, (PPoly, int, Fraction)):
        return PFrac(value)
    raise TypeError(f"cannot make a PFrac from {value!r}")
