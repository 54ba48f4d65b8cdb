"""Brute-force model of ``R_g`` by linear algebra over the rationals.

The ring is built degree by degree from scratch: all monomials in
``u_1..u_g`` (``u_i`` of weight ``i``), the ideal spanned by the homogeneous
components of ``(1 + sum u_i)(1 + sum (-1)^i u_i) - 1`` times every monomial,
and a Gaussian elimination that pivots on non-square-free monomials first.
No rewriting rule is used, so this serves as an independent check on
:mod:`agcycles.tautring`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Exps = tuple[int, ...]


def weighted_monomials(g: int, d: int) -> list[Exps]:
    """Exponent vectors ``e`` with ``sum i * e_i = d``."""
    out: list[Exps] = []

    def rec(i, left, acc):
        if i == 0:
            if left == 0:
                out.append(tuple(reversed(acc)))
            return
        for e in range(left // i + 1):
            rec(i - 1, left - i * e, acc + [e])

    rec(g, d, [])
    return out


def _relations(g: int) -> list[dict[Exps, int]]:
    """Degree ``2k`` components of the Hodge relation, ``k = 1..g``."""
    rels = []
    for k in range(1, g + 1):
        r: dict[Exps, int] = {}
        for i in range(0, 2 * k + 1):
            j = 2 * k - i
            if i > g or j > g:
                continue
            e = [0] * g
            if i:
                e[i - 1] += 1
            if j:
                e[j - 1] += 1
            r[tuple(e)] = r.get(tuple(e), 0) + (-1) ** j
        rels.append({m: c for m, c in r.items() if c})
    return rels


def _square_free(e: Exps) -> bool:
    return all(x <= 1 for x in e)


class OracleRing:
    """Quotient ``Q[u_1..u_g] / I`` with square-free normal forms."""

    def __init__(self, g: int):
        self.g = g
        self.top = g * (g + 1) // 2
        self._rels = _relations(g)
        self._nf: dict[int, dict[Exps, dict[Exps, Fraction]]] = {}
        self._dims: dict[int, int] = {}
        for d in range(self.top + 1):
            self._build(d)

    def _build(self, d: int):
        g = self.g
        monos = weighted_monomials(g, d)
        # non-square-free columns first so they become pivots
        cols = sorted(monos, key=lambda e: (_square_free(e), e))
        index = {m: n for n, m in enumerate(cols)}
        rows: list[dict[int, Fraction]] = []
        for k, rel in enumerate(self._rels, start=1):
            if 2 * k > d:
                break
            for m in weighted_monomials(g, d - 2 * k):
                row: dict[int, Fraction] = {}
                for r, c in rel.items():
                    col = index[tuple(a + b for a, b in zip(m, r))]
                    row[col] = row.get(col, 0) + Fraction(c)
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
        pivots: dict[int, dict[int, Fraction]] = {}
        for row in rows:
            row = dict(row)
            for pc in sorted(pivots):
                if pc in row:
                    f = row[pc]
                    for c, v in pivots[pc].items():
                        s = row.get(c, 0) - f * v
                        if s:
                            row[c] = s
                        else:
                            row.pop(c, None)
            if not row:
                continue
            pc = min(row)
            inv = 1 / row[pc]
            row = {c: v * inv for c, v in row.items()}
            for other in pivots.values():
                if pc in other:
                    f = other[pc]
                    for c, v in row.items():
                        s = other.get(c, 0) - f * v
                        if s:
                            other[c] = s
                        else:
                            other.pop(c, None)
            pivots[pc] = row
        free = [c for c in range(len(cols)) if c not in pivots]
        self._dims[d] = len(free)
        nf: dict[Exps, dict[Exps, Fraction]] = {}
        for m in monos:
            c = index[m]
            if c in pivots:
                nf[m] = {cols[f]: -v for f, v in pivots[c].items() if f != c}
            else:
                nf[m] = {m: Fraction(1)}
        self._nf[d] = nf
        self._free = getattr(self, "_free", {})
        self._free[d] = [cols[c] for c in free]

    def dimension(self, d: int) -> int:
        return self._dims.get(d, 0)

    def free_monomials(self, d: int) -> list[Exps]:
        return list(self._free.get(d, []))

    def normal_form(self, exps: Exps) -> dict[tuple[int, ...], Fraction]:
        """Normal form as ``{sorted subset: coefficient}``."""
        d = sum((i + 1) * e for i, e in enumerate(exps))
        if d > self.top:
            return {}
        nf = self._nf[d][tuple(exps)]
        out = {}
        for e, v in nf.items():
            if not _square_free(e):
                raise ArithmeticError(f"square-free monomials are dependent in degree {d}")
            out[tuple(i + 1 for i, x in enumerate(e) if x)] = v
        return out

    def product(self, a: tuple[int, ...], b: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        e = [0] * self.g
        for i in a + b:
            e[i - 1] += 1
        return self.normal_form(tuple(e))


@lru_cache(maxsize=None)
def oracle_ring(g: int) -> OracleRing:
    return OracleRing(g)
