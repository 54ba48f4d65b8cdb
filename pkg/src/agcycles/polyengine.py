"""Sparse multivariate polynomials over ``PPoly`` and Schubert-calculus tools.

``MPoly`` is the exact reference representation: exponent tuples over a
named alphabet mapped to ``PPoly`` coefficients. The heavy Fulton-class
pipeline runs on :mod:`agcycles.packed` instead and is checked against
this module.

The determinant, Pfaffian and Q-class helpers are generic: entries only
need ``+``, ``-``, ``*`` and equality, so they work for ``MPoly``,
``TautClass`` and plain numbers alike.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .ppoly import PPoly

Exps = tuple[int, ...]


def alphabet(g: int) -> tuple[str, ...]:
    """``x1..xg, y1..yg, l1..lg``."""
    return tuple(f"{c}{i}" for c in "xyl" for i in range(1, g + 1))


class MPoly:
    """Immutable sparse polynomial ``sum c_e v^e`` with ``PPoly`` coefficients."""

    __slots__ = ("names", "_t")

    def __init__(self, names: Sequence[str], terms: Mapping[Exps, object] | None = None):
        self.names = tuple(names)
        n = len(self.names)
        t: dict[Exps, PPoly] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not fit {n} variables")
            c = t.get(e, PPoly()) + PPoly.coerce(c)
            if c:
                t[e] = c
            else:
                t.pop(e, None)
        self._t = t

    @classmethod
    def _raw(cls, names, t):
        obj = cls.__new__(cls)
        obj.names = names
        obj._t = t
        return obj

    # constructors
    @classmethod
    def const(cls, names, c=1):
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name: str, coeff=1):
        names = tuple(names)
        e = [0] * len(names)
        e[names.index(name)] = 1
        return cls(names, {tuple(e): coeff})

    def zero(self):
        return MPoly._raw(self.names, {})

    def one(self):
        return MPoly.const(self.names)

    # inspection
    @property
    def terms(self) -> dict[Exps, PPoly]:
        return dict(self._t)

    def items(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._t.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self._t}

    def index(self, name: str) -> int:
        return self.names.index(name)

    def uses_only(self, names: Iterable[str]) -> bool:
        allowed = {self.index(n) for n in names}
        return all(not v or k in allowed for e in self._t for k, v in enumerate(e))

    # arithmetic
    def _coerce(self, other) -> MPoly | None:
        if isinstance(other, MPoly):
            if other.names != self.names:
                raise ValueError("polynomials live over different alphabets")
            return other
        if isinstance(other, (int, Fraction, PPoly)):
            return MPoly.const(self.names, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, PPoly()) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MPoly._raw(self.names, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.names, {e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PPoly)):
            if not other:
                return self.zero()
            return MPoly._raw(self.names, {e: c * other for e, c in self._t.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        other = self._coerce(other)
        t: dict[Exps, PPoly] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, PPoly()) + c1 * c2
        return MPoly._raw(self.names, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.names == other.names and self._t == other._t
        if isinstance(other, (int, Fraction, PPoly)):
            return self == MPoly.const(self.names, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self._t.items())))

    # variable operations
    def swap(self, a: str, b: str) -> MPoly:
        i, j = self.index(a), self.index(b)
        t = {}
        for e, c in self._t.items():
            e = list(e)
            e[i], e[j] = e[j], e[i]
            t[tuple(e)] = c
        return MPoly._raw(self.names, t)

    def negate(self, a: str) -> MPoly:
        i = self.index(a)
        return MPoly._raw(self.names, {e: (-c if e[i] % 2 else c) for e, c in self._t.items()})

    def substitute(self, rules: Mapping[str, tuple[object, str]]) -> MPoly:
        """Apply monomial substitutions ``v -> coeff * w`` simultaneously."""
        idx = {self.index(v): (PPoly.coerce(c), self.index(w)) for v, (c, w) in rules.items()}
        t: dict[Exps, PPoly] = {}
        for e, c in self._t.items():
            ne = [0 if k in idx else v for k, v in enumerate(e)]
            for k, (mult, target) in idx.items():
                if e[k]:
                    c = c * mult ** e[k]
                    ne[target] += e[k]
            key = tuple(ne)
            t[key] = t.get(key, PPoly()) + c
        return MPoly._raw(self.names, {e: c for e, c in t.items() if c})

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self._t:
            return "0"
        from .tautring import coeff_factor

        parts = []
        for e, c in self.items():
            sign, text = coeff_factor(c)
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            body = mono if text == "1" and mono else (f"{text}*{mono}" if mono else text)
            parts.append(("-" if sign < 0 else "") + body if not parts else (" - " if sign < 0 else " + ") + body)
        return "".join(parts)


# ---------------------------------------------------------------- symmetric functions

def elementary_symmetric(i: int, names: Sequence[str], vars: Sequence[str]) -> MPoly:
    """``sigma_i`` of the listed variables inside the alphabet ``names``."""
    if not 0 <= i <= len(vars):
        return MPoly(names)
    names = tuple(names)
    pos = [names.index(v) for v in vars]
    terms = {}
    for combo in combinations(pos, i):
        e = [0] * len(names)
        for k in combo:
            e[k] = 1
        terms[tuple(e)] = 1
    return MPoly(names, terms)


class ChernSequence:
    """``c_0, c_1, ..., c_N`` with out-of-range indices reading as zero.

    ``c_0 = 1`` is enforced unless ``strict=False``; the double Schubert seed
    needs ``c_0 = sigma_0(x) + sigma_0(y) = 2``.
    """

    def __init__(self, values: Sequence, zero, one, strict: bool = True):
        self.values = list(values)
        self.zero = zero
        self.one = one
        if strict and (not self.values or self.values[0] != one):
            raise ValueError("a Chern sequence starts with c_0 = 1")

    def __getitem__(self, i: int):
        if 0 <= i < len(self.values):
            return self.values[i]
        return self.zero

    def __len__(self):
        return len(self.values)

    @property
    def rank(self) -> int:
        return len(self.values) - 1


def schur_determinant(mu: Sequence[int], c: ChernSequence):
    """``det(c_{mu_i + j - i})`` by first-row Laplace expansion with memoised minors."""
    r = len(mu)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]):
        if row == r:
            return c.one
        acc = c.zero
        for n, j in enumerate(cols):
            entry = c[mu[row] + j - row]
            if entry == c.zero:
                continue
            term = entry * minor(row + 1, cols[:n] + cols[n + 1:])
            acc = acc + term if n % 2 == 0 else acc - term
        return acc

    return minor(0, tuple(range(r)))


def double_schubert_sequence(g: int, names: Sequence[str] | None = None) -> ChernSequence:
    names = tuple(names or alphabet(g))
    xs = [f"x{i}" for i in range(1, g + 1)]
    ys = [f"y{i}" for i in range(1, g + 1)]
    vals = [elementary_symmetric(k, names, xs) + elementary_symmetric(k, names, ys) for k in range(g + 1)]
    return ChernSequence(vals, MPoly(names), MPoly.const(names), strict=False)


def double_schubert(g: int, names: Sequence[str] | None = None) -> MPoly:
    """Staircase Schur determinant of ``c_i = sigma_i(x) + sigma_i(y)`` (so ``c_0 = 2``)."""
    return schur_determinant(tuple(range(g, 0, -1)), double_schubert_sequence(g, names))


# ---------------------------------------------------------------- divided differences

class DivisionError(ArithmeticError):
    """A divided difference left a remainder, which means corrupted input."""


def _split_by(F: MPoly, k: int) -> dict[int, MPoly]:
    parts: dict[int, dict] = {}
    for e, c in F.terms.items():
        rest = list(e)
        d = rest[k]
        rest[k] = 0
        parts.setdefault(d, {})[tuple(rest)] = c
    return {d: MPoly._raw(F.names, t) for d, t in parts.items()}


def divide_by_difference(N: MPoly, a: str, b: str) -> MPoly:
    """Exact quotient ``N / (a - b)``; raises :class:`DivisionError` on a remainder."""
    i, j = N.index(a), N.index(b)
    parts = _split_by(N, i)
    if not parts:
        return N.zero()
    top = max(parts)
    vb = MPoly.var(N.names, b)
    va = MPoly.var(N.names, a)
    # N = (a - b) Q with Q = sum B_k a^k  =>  A_k = B_{k-1} - b B_k
    B = {}
    prev = N.zero()
    for k in range(top, 0, -1):
        prev = parts.get(k, N.zero()) + vb * prev
        B[k - 1] = prev
    rem = parts.get(0, N.zero()) + vb * B.get(0, N.zero())
    if rem:
        raise DivisionError(f"{a}-{b} does not divide the numerator")
    Q = N.zero()
    for k, poly in B.items():
        Q = Q + poly * va ** k
    return Q


def divide_by_monomial(N: MPoly, a: str, coeff: int) -> MPoly:
    """Exact quotient ``N / (coeff * a)``."""
    i = N.index(a)
    t = {}
    for e, c in N.terms.items():
        if not e[i]:
            raise DivisionError(f"{coeff}*{a} does not divide the numerator")
        e = list(e)
        e[i] -= 1
        t[tuple(e)] = c * Fraction(1, coeff)
    return MPoly(N.names, t)


def divided_difference(F: MPoly, i: int, g: int, prefix: str = "x") -> MPoly:
    """``(F - s_i F)/(x_i - x_{i+1})`` for ``i < g`` and ``(F - s_g F)/(2 x_g)``.

    Computed by genuine polynomial division so a bad numerator is caught.
    """
    if not 1 <= i <= g:
        raise ValueError(f"operator index {i} outside 1..{g}")
    if i < g:
        a, b = f"{prefix}{i}", f"{prefix}{i + 1}"
        return divide_by_difference(F - F.swap(a, b), a, b)
    a = f"{prefix}{g}"
    return divide_by_monomial(F - F.negate(a), a, 2)


def divided_difference_l(F: MPoly, i: int, g: int) -> MPoly:
    """Type-A operator on the Chern roots ``l_i``, ``1 <= i < g``."""
    if not 1 <= i < g:
        raise ValueError(f"operator index {i} outside 1..{g - 1}")
    a, b = f"l{i}", f"l{i + 1}"
    return divide_by_difference(F - F.swap(a, b), a, b)


def divided_difference_fast(F: MPoly, i: int, g: int, prefix: str = "x") -> MPoly:
    """Termwise closed form of :func:`divided_difference`, no division."""
    t: dict[Exps, PPoly] = {}
    if i < g:
        ki, kj = F.index(f"{prefix}{i}"), F.index(f"{prefix}{i + 1}")
        for e, c in F.terms.items():
            a, b = e[ki], e[kj]
            if a == b:
                continue
            hi, lo = max(a, b), min(a, b)
            sgn = 1 if a > b else -1
            for u in range(hi - lo):
                ne = list(e)
                ne[ki], ne[kj] = hi - 1 - u, lo + u
                key = tuple(ne)
                t[key] = t.get(key, PPoly()) + c * sgn
    else:
        k = F.index(f"{prefix}{g}")
        for e, c in F.terms.items():
            if e[k] % 2:
                ne = list(e)
                ne[k] -= 1
                t[tuple(ne)] = c
    return MPoly(F.names, t)


# ---------------------------------------------------------------- Pfaffians and Q-classes

def pfaffian(M: Sequence[Sequence], zero=0, one=1):
    """Pfaffian by expansion along the first row."""
    n = len(M)
    if n % 2:
        raise ValueError("Pfaffian needs an even-sized matrix")
    for i in range(n):
        if len(M[i]) != n:
            raise ValueError("matrix is not square")
        if M[i][i] != zero:
            raise ValueError("matrix is not antisymmetric (nonzero diagonal)")
        for j in range(i + 1, n):
            if M[i][j] != -M[j][i]:
                raise ValueError(f"matrix is not antisymmetric at ({i}, {j})")

    def rec(idx: tuple[int, ...]):
        if not idx:
            return one
        first, rest = idx[0], idx[1:]
        acc = zero
        for n_, j in enumerate(rest):
            entry = M[first][j]
            if entry == zero:
                continue
            term = entry * rec(rest[:n_] + rest[n_ + 1:])
            acc = acc + term if n_ % 2 == 0 else acc - term
        return acc

    return rec(tuple(range(n)))


def q_class(i: int, j: int, c: ChernSequence):
    """``Q_{ij} = a_i a_j + 2 sum_{k=1..j} (-1)^k a_{i+k} a_{j-k}`` for ``i > j``."""
    if i <= j:
        raise ValueError(f"Q_ij needs i > j, got ({i}, {j})")
    acc = c[i] * c[j]
    for k in range(1, j + 1):
        term = c[i + k] * c[j - k]
        acc = acc + term * 2 if k % 2 == 0 else acc - term * 2
    return acc


def q_beta(beta: Sequence[int], c: ChernSequence):
    """Pfaffian of ``(Q_{beta_i, beta_j})``; odd-length ``beta`` gets a trailing 0."""
    beta = list(beta)
    if len(beta) % 2:
        beta = beta + [0]
    n = len(beta)
    if not n:
        return c.one
    M = [[c.zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            q = q_class(beta[a], beta[b], c)
            M[a][b] = q
            M[b][a] = -q
    return pfaffian(M, c.zero, c.one)


def apply_word(F, word: Sequence[int], op: Callable, g: int, as_written: bool = True):
    """Apply ``op(F, i, g)`` for each letter; ``as_written`` applies the rightmost first."""
    seq = reversed(word) if as_written else iter(word)
    for i in seq:
        F = op(F, i, g)
    return F
