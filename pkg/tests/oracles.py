"""Independent sympy implementations used as test oracles."""
from functools import lru_cache
from itertools import combinations

import sympy
from sympy.polys.polyfuncs import symmetrize

from agcycles.tautring import TautClass

p = sympy.Symbol("p")


@lru_cache(maxsize=None)
def chern_ideal(g):
    """Groebner basis of (1 + sum u_i)(1 + sum (-1)^i u_i) = 1 in Q[u_1..u_g, p]."""
    u = sympy.symbols(f"u1:{g + 1}")
    c = [sympy.Integer(1), *u]
    rels = []
    for k in range(1, 2 * g + 1):
        r = sympy.expand(sum((-1) ** j * c[j] * c[k - j] for j in range(max(0, k - g), min(k, g) + 1)))
        if r != 0:
            rels.append(r)
    return u, sympy.groebner(rels, *u, p, order="grevlex")


def class_to_sympy(c: TautClass):
    u = sympy.symbols(f"u1:{c.g + 1}")
    out = sympy.Integer(0)
    for s, coef in c.items():
        cp = sum(sympy.Rational(v.numerator, v.denominator) * p ** e for e, v in coef.items())
        out += cp * sympy.prod([u[i - 1] for i in s])
    return sympy.expand(out)


def equal_in_ring(g, expr, c: TautClass) -> bool:
    _, G = chern_ideal(g)
    return G.contains(sympy.expand(expr - class_to_sympy(c)))


def _e(k, v):
    if k == 0:
        return sympy.Integer(1)
    if k > len(v) or k < 0:
        return sympy.Integer(0)
    return sum(sympy.prod(t) for t in combinations(v, k))


def _dd(F, v, i, exceptional):
    if exceptional:
        return sympy.expand(sympy.cancel((F - F.subs(v[i - 1], -v[i - 1])) / (2 * v[i - 1])))
    s = F.subs({v[i - 1]: v[i], v[i]: v[i - 1]}, simultaneous=True)
    return sympy.expand(sympy.cancel((F - s) / (v[i - 1] - v[i])))


def stratum_class(g, word, pushforward_word):
    """Fulton's recipe in plain sympy, returned as a polynomial in u_i = lambda_i.

    ``word`` is applied rightmost letter first; ``pushforward_word`` is any
    reduced word for the longest element of S_g.
    """
    x = sympy.symbols(f"x1:{g + 1}")
    y = sympy.symbols(f"y1:{g + 1}")
    l = sympy.symbols(f"l1:{g + 1}")
    c = lambda k: _e(k, x) + _e(k, y)
    stair = tuple(range(g, 0, -1))
    M = sympy.Matrix(g, g, lambda i, j: c(stair[i] + j - i))
    F = sympy.prod([x[i - 1] - y[j - 1] for i in range(1, g + 1) for j in range(1, g + 1) if i + j <= g])
    F = sympy.expand(F * M.det())
    for i in reversed(word):
        F = _dd(F, x, i, i == g)
    F = sympy.expand(F.subs({**{x[i]: p * l[i] for i in range(g)}, **{y[i]: -l[i] for i in range(g)}},
                            simultaneous=True))
    for i in pushforward_word:
        F = _dd(F, l, i, False)
    sym, rem, defs = symmetrize(F, *l, formal=True)
    assert rem == 0
    u = sympy.symbols(f"u1:{g + 1}")
    return sympy.expand(sym.subs({s: u[k] for k, (s, _) in enumerate(defs)}))
