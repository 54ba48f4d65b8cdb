"""Cycle classes of Ekedahl-Oort strata, p-rank and a-number loci, and masses.

The stratum classes follow Fulton's degeneracy-locus recipe:

1. ``F = prod_{i+j<=g} (x_i - y_j) * Delta(x, y)``;
2. apply the divided differences of the stratum's Weyl word;
3. substitute ``x_i = p*l_i`` and ``y_i = -l_i``;
4. push forward along the flag bundle (longest type-A word in ``l``);
5. rewrite the symmetric result in ``lambda_i = sigma_i(l)`` and reduce in ``R_g``.

Steps 1-4 run on packed int64 polynomials (see :mod:`agcycles.packed`);
``backend="reference"`` runs them on exact ``MPoly`` instead.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .arith import proportionality_factor, zeta_neg_odd
from .packed import PackedOverflow, PackedPoly
from .polyengine import (ChernSequence, MPoly, alphabet, divided_difference, divided_difference_l,
                         elementary_symmetric, q_beta, schur_determinant)
from .ppoly import P, PFrac, PPoly
from .tautring import TautClass, reduce_monomial
from .weyl import AdmissiblePartition, admissible_partitions, reduced_word

FULTON_MAX_G = 5


class NotSymmetricError(ArithmeticError):
    """A push-forward produced a non-symmetric polynomial."""


# ---------------------------------------------------------------- conventions

@dataclass(frozen=True)
class Conventions:
    """Switches for the ambiguous readings of the degeneracy formula.

    ``pair``: factors ``x_i - y_j`` over pairs ``i + j <= g`` ("ij") or
    ``x_i - y_i`` repeated for each such pair ("ii").
    ``c0``: the constant entry of the double Schubert sequence.
    ``sign``: ``-1`` for ``x_i - y_j``, ``+1`` for ``x_i + y_j``.
    ``order``: "as_written" applies the rightmost operator of the word
    first; "reversed" applies the leftmost first.
    ``y_sign``: the substitution ``y_i = y_sign * l_i``.
    """

    pair: str = "ij"
    c0: int = 2
    sign: int = -1
    order: str = "as_written"
    y_sign: int = -1

    _ALTERNATIVES = {
        "pair": ("ij", "ii"),
        "c0": (2, 1),
        "sign": (-1, 1),
        "order": ("as_written", "reversed"),
        "y_sign": (-1, 1),
    }

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) not in self._ALTERNATIVES[f.name]:
                raise ValueError(f"{f.name}={getattr(self, f.name)!r} is not a known convention")

    @classmethod
    def switch_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def flipped(self, name: str) -> Conventions:
        a, b = self._ALTERNATIVES[name]
        return replace(self, **{name: b if getattr(self, name) == a else a})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def describe(self) -> str:
        pair = "x_i - y_j over i+j<=g" if self.pair == "ij" else "x_i - y_i over i+j<=g"
        if self.sign > 0:
            pair = pair.replace("-", "+", 1)
        order = "rightmost operator first" if self.order == "as_written" else "leftmost operator first"
        return (f"product: {pair}; double Schubert c_0 = {self.c0}; word: {order}; "
                f"substitution: x_i = p*l_i, y_i = {'-' if self.y_sign < 0 else ''}l_i")


FROZEN = Conventions()


# ---------------------------------------------------------------- packed Fulton pipeline

def _packed_sigma(nv: int, k: int, offset: int, g: int, backend) -> PackedPoly:
    terms = {}
    for combo in combinations(range(offset, offset + g), k):
        e = [0] * nv
        for v in combo:
            e[v] = 1
        terms[tuple(e)] = 1
    return PackedPoly.from_terms(nv, terms, backend)


def _packed_fulton_seed(g: int, conv: Conventions, backend) -> PackedPoly:
    nv = 2 * g
    zero = (0,) * nv
    c = [PackedPoly.from_terms(nv, {zero: conv.c0}, backend)]
    for k in range(1, g + 1):
        c.append(_packed_sigma(nv, k, 0, g, backend) + _packed_sigma(nv, k, g, g, backend))
    empty = PackedPoly(nv, [], [], backend)
    mu = list(range(g, 0, -1))

    def entry(r, col):
        k = mu[r] + col - r
        return c[k] if 0 <= k <= g else empty

    memo: dict[tuple, PackedPoly] = {}

    def minor(row, cols):
        if row == g:
            return PackedPoly.from_terms(nv, {zero: 1}, backend)
        key = (row, cols)
        if key not in memo:
            acc = empty
            for n, j in enumerate(cols):
                e = entry(row, j)
                if not e:
                    continue
                term = e * minor(row + 1, cols[:n] + cols[n + 1:])
                acc = acc + term if n % 2 == 0 else acc - term
            memo[key] = acc
        return memo[key]

    F = minor(0, tuple(range(g)))
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if i + j > g:
                continue
            jj = j if conv.pair == "ij" else i
            ex, ey = [0] * nv, [0] * nv
            ex[i - 1] = 1
            ey[g + jj - 1] = 1
            F = F * PackedPoly.from_terms(nv, {tuple(ex): 1, tuple(ey): conv.sign}, backend)
    return F


class _FultonCache:
    """Seed polynomials and partially differentiated states, keyed by the
    sequence of operators applied so far (words of neighbouring strata share
    their first operators)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._states: dict[tuple, PackedPoly] = {}

    def clear(self):
        with self._lock:
            self._states.clear()

    def state(self, g: int, conv: Conventions, backend: str, applied: tuple[int, ...]) -> PackedPoly:
        key = (g, conv, backend, applied)
        with self._lock:
            hit = self._states.get(key)
        if hit is not None:
            return hit
        if not applied:
            val = _packed_fulton_seed(g, conv, backend)
        else:
            prev = self.state(g, conv, backend, applied[:-1])
            i = applied[-1]
            val = prev.dd_swap(i - 1, i) if i < g else prev.dd_sign(g - 1)
        with self._lock:
            self._states[key] = val
        return val


_CACHE = _FultonCache()


def clear_caches():
    _CACHE.clear()


def operator_sequence(word: Sequence[int], conv: Conventions) -> tuple[int, ...]:
    """Operators in the order they act on the seed polynomial."""
    return tuple(reversed(word)) if conv.order == "as_written" else tuple(word)


def _substitute_packed(F: PackedPoly, g: int, conv: Conventions) -> dict[int, PackedPoly]:
    """``x_i = p*l_i``, ``y_i = y_sign*l_i``; returns ``{p-degree: poly in l}``."""
    if not F:
        return {}
    ex = F.exponents()
    xe, ye = ex[:, :g], ex[:, g:]
    pdeg = xe.sum(axis=1)
    le = xe + ye
    sign = np.where((ye.sum(axis=1) % 2 == 1) & (conv.y_sign < 0), -1, 1)
    shifts = np.arange(g, dtype=np.int64) * _kernels.BITS
    keys = (le << shifts[None, :]).sum(axis=1)
    out = {}
    for d in np.unique(pdeg):
        sel = pdeg == d
        k, c = _kernels.combine(keys[sel], F.coefs[sel] * sign[sel], F.backend)
        if k.size:
            out[int(d)] = PackedPoly(g, k, c, F.backend)
    return out


def _fulton_parts(mu: AdmissiblePartition, g: int, conv: Conventions, backend: str | None,
                  word: Sequence[int] | None = None) -> dict[int, PackedPoly]:
    if g > FULTON_MAX_G:
        raise ValueError(f"Fulton classes are computed for g <= {FULTON_MAX_G}")
    backend = backend or _kernels.BACKEND
    word = reduced_word(mu) if word is None else tuple(word)
    F = _CACHE.state(g, conv, backend, operator_sequence(word, conv))
    return _substitute_packed(F, g, conv)


def _parts_to_mpoly(parts: Mapping[int, PackedPoly], g: int) -> MPoly:
    names = alphabet(g)
    terms: dict[tuple, PPoly] = {}
    for d, poly in parts.items():
        for le, c in poly.to_terms().items():
            key = (0,) * (2 * g) + le
            terms[key] = terms.get(key, PPoly()) + PPoly.monomial(d, c)
    return MPoly(names, terms)


def fulton_class_reference(mu: AdmissiblePartition, g: int, conv: Conventions = FROZEN,
                           word: Sequence[int] | None = None) -> MPoly:
    """Same class through exact ``MPoly`` arithmetic and division-checked operators."""
    names = alphabet(g)
    xs = [f"x{i}" for i in range(1, g + 1)]
    ys = [f"y{i}" for i in range(1, g + 1)]
    vals = [MPoly.const(names, conv.c0)]
    vals += [elementary_symmetric(k, names, xs) + elementary_symmetric(k, names, ys) for k in range(1, g + 1)]
    seq = ChernSequence(vals, MPoly(names), MPoly.const(names), strict=False)
    F = schur_determinant(tuple(range(g, 0, -1)), seq)
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if i + j <= g:
                jj = j if conv.pair == "ij" else i
                F = F * (MPoly.var(names, f"x{i}") + MPoly.var(names, f"y{jj}", conv.sign))
    word = reduced_word(mu) if word is None else tuple(word)
    for i in operator_sequence(word, conv):
        F = divided_difference(F, i, g)
    rules = {f"x{i}": (P, f"l{i}") for i in range(1, g + 1)}
    rules.update({f"y{i}": (conv.y_sign, f"l{i}") for i in range(1, g + 1)})
    return F.substitute(rules)


def fulton_class(mu: AdmissiblePartition, g: int | None = None, conv: Conventions = FROZEN,
                 backend: str | None = None, word: Sequence[int] | None = None) -> MPoly:
    """Class ``u_mu`` on the flag space as a polynomial in ``l_1..l_g``.

    ``backend`` is "numba", "numpy" (packed kernels) or "reference".
    """
    g = mu.g if g is None else g
    if mu.g != g:
        raise ValueError("partition and genus disagree")
    if backend == "reference":
        return fulton_class_reference(mu, g, conv, word)
    try:
        return _parts_to_mpoly(_fulton_parts(mu, g, conv, backend, word), g)
    except PackedOverflow:
        return fulton_class_reference(mu, g, conv, word)


# ---------------------------------------------------------------- push-forward

def longest_word_A(g: int) -> tuple[int, ...]:
    """``s_1 (s_2 s_1) (s_3 s_2 s_1) ...``, a reduced word for the longest element of ``S_g``."""
    return tuple(i for k in range(1, g) for i in range(k, 0, -1))


def longest_word_A_alt(g: int) -> tuple[int, ...]:
    """A second reduced word: ``(s_{g-1}) (s_{g-2} s_{g-1}) ...``."""
    return tuple(i for k in range(g - 1, 0, -1) for i in range(k, g))


@lru_cache(maxsize=None)
def _elementary_power(g: int, a: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """``prod_i sigma_i(l)^{a_i}`` as integer terms."""
    acc = {(0,) * g: 1}
    for i, ai in enumerate(a, start=1):
        e_i = {}
        for combo in combinations(range(g), i):
            e_i[tuple(1 if t in combo else 0 for t in range(g))] = 1
        for _ in range(ai):
            nxt: dict = {}
            for k1, v1 in acc.items():
                for k2, v2 in e_i.items():
                    k = tuple(x + y for x, y in zip(k1, k2))
                    nxt[k] = nxt.get(k, 0) + v1 * v2
            acc = {k: v for k, v in nxt.items() if v}
    return tuple(acc.items())


def symmetric_to_lambda(terms: Mapping[tuple[int, ...], PPoly], g: int) -> dict[tuple[int, ...], PPoly]:
    """Rewrite a symmetric polynomial in ``l`` as a polynomial in ``sigma_i(l)``.

    Returns ``{(a_1..a_g): coeff}`` for ``prod sigma_i^{a_i}``. The leading
    monomial is peeled repeatedly; a leading exponent that is not weakly
    decreasing proves the input was not symmetric.
    """
    F = {k: PPoly.coerce(v) for k, v in terms.items() if v}
    out: dict[tuple[int, ...], PPoly] = {}
    while F:
        lead = max(F)
        c = F[lead]
        if any(lead[i] < lead[i + 1] for i in range(g - 1)):
            raise NotSymmetricError(f"leading monomial {lead} is not a partition")
        a = tuple(lead[i] - (lead[i + 1] if i + 1 < g else 0) for i in range(g))
        out[a] = out.get(a, PPoly()) + c
        for k, v in _elementary_power(g, a):
            s = F.get(k, PPoly()) - c * v
            if s:
                F[k] = s
            else:
                F.pop(k, None)
    return {k: v for k, v in out.items() if v}


def _lambda_to_class(lam: Mapping[tuple[int, ...], PPoly], g: int) -> TautClass:
    acc = TautClass.zero(g)
    for a, c in lam.items():
        idx = [i for i, ai in enumerate(a, start=1) for _ in range(ai)]
        acc = acc + reduce_monomial(g, idx) * c
    return acc


def _split_l_terms(F: MPoly, g: int) -> dict[tuple[int, ...], PPoly]:
    off = 2 * g
    out = {}
    for e, c in F.terms.items():
        if any(e[:off]):
            raise ValueError("push-forward input must only involve l_1..l_g")
        out[e[off:]] = c
    return out


def _push_packed(parts: Mapping[int, PackedPoly], g: int, word) -> dict[tuple[int, ...], PPoly]:
    out: dict[tuple[int, ...], PPoly] = {}
    for d, poly in parts.items():
        for i in word:
            poly = poly.dd_swap(i - 1, i)
        for le, c in poly.to_terms().items():
            out[le] = out.get(le, PPoly()) + PPoly.monomial(d, c)
    return out


def _push_reference(F: MPoly, g: int, word) -> dict[tuple[int, ...], PPoly]:
    for i in word:
        F = divided_difference_l(F, i, g)
    return _split_l_terms(F, g)


def pushforward_to_Ag(F: MPoly, g: int, word: Sequence[int] | None = None,
                      backend: str | None = None) -> TautClass:
    """Gysin map of the full flag bundle followed by ``sigma_i(l) -> lambda_i``."""
    word = longest_word_A(g) if word is None else tuple(word)
    if backend == "reference":
        pushed = _push_reference(F, g, word)
    else:
        by_p: dict[int, dict] = {}
        for le, c in _split_l_terms(F, g).items():
            for d, v in c.coeffs.items():
                if v.denominator != 1:
                    return pushforward_to_Ag(F, g, word, "reference")
                by_p.setdefault(d, {})[le] = int(v)
        try:
            parts = {d: PackedPoly.from_terms(g, t, backend) for d, t in by_p.items()}
            pushed = _push_packed(parts, g, word)
        except PackedOverflow:
            pushed = _push_reference(F, g, word)
    return _lambda_to_class(symmetric_to_lambda(pushed, g), g)


def stratum_pushforward(mu: AdmissiblePartition, conv: Conventions = FROZEN,
                        backend: str | None = None) -> TautClass:
    """``pi_*(u_mu)`` without materialising the intermediate ``MPoly``."""
    g = mu.g
    if backend == "reference":
        return pushforward_to_Ag(fulton_class_reference(mu, g, conv), g, backend="reference")
    try:
        parts = _fulton_parts(mu, g, conv, backend)
        pushed = _push_packed(parts, g, longest_word_A(g))
    except PackedOverflow:
        return pushforward_to_Ag(fulton_class_reference(mu, g, conv), g, backend="reference")
    return _lambda_to_class(symmetric_to_lambda(pushed, g), g)


# ---------------------------------------------------------------- strata table

@dataclass(frozen=True)
class StratumClassReport:
    mu: AdmissiblePartition
    raw_pushforward: TautClass
    bracket_factor: PPoly | None = None
    reduced_class: TautClass | None = None

    def __post_init__(self):
        raw = self.raw_pushforward
        if not raw.is_homogeneous() or (raw and raw.degrees() != {self.mu.area}):
            raise ArithmeticError(f"push-forward for {self.mu} is not homogeneous of degree {self.mu.area}")
        if self.bracket_factor is not None and self.reduced_class is not None:
            if self.reduced_class * self.bracket_factor != raw:
                raise ArithmeticError(f"bracket does not factor the class of {self.mu}")


def divide_class(c: TautClass, d: PPoly) -> TautClass:
    return c.map_coeffs(lambda x: x / d)


def strata_table(g: int, conv: Conventions = FROZEN, backend: str | None = None,
                 brackets: Mapping[tuple[int, ...], PPoly] | None = None) -> list[StratumClassReport]:
    """Push-forward classes of all ``2^g`` strata, in the atlas order.

    ``brackets`` maps ``mu`` to a multiplicity factor; by default the g=3
    factors are used and other genera get none.
    """
    if brackets is None:
        from .golden import G3_BRACKETS

        brackets = G3_BRACKETS if g == 3 else {}
    rows = []
    for mu in sorted(admissible_partitions(g), key=lambda m: (m.area, m.mu)):
        raw = stratum_pushforward(mu, conv, backend)
        br = brackets.get(mu.mu)
        reduced = None
        if br is not None:
            try:
                reduced = divide_class(raw, br)
            except ArithmeticError:
                reduced = None
        rows.append(StratumClassReport(mu, raw, br, reduced))
    return rows


# ---------------------------------------------------------------- p-rank, a-number

def _lam(g: int, i: int) -> TautClass:
    return TautClass.lam(g, i)


def vf_class(g: int, f: int) -> TautClass:
    """``[V_f] = (p-1)(p^2-1)...(p^{g-f}-1) lambda_{g-f}``."""
    if not 0 <= f < g:
        raise ValueError(f"need 0 <= f < g, got f={f}")
    coeff = prod((P ** i - 1 for i in range(1, g - f + 1)), start=PPoly(1))
    return _lam(g, g - f) * coeff


def zi_class(i: int, g: int | None = None) -> MPoly:
    """``(p-1) l_i`` on the flag space."""
    g = i if g is None else g
    if not 1 <= i <= g:
        raise ValueError(f"index {i} outside 1..{g}")
    return MPoly.var(alphabet(g), f"l{i}", P - 1)


def hodge_chern(g: int, twist: str) -> ChernSequence:
    """``c_i(E^(p)) = p^i lambda_i`` or ``c_i(E^*) = (-1)^i lambda_i``."""
    vals = []
    for i in range(g + 1):
        coef = P ** i if twist == "frobenius" else PPoly((-1) ** i)
        vals.append(_lam(g, i) * coef)
    return ChernSequence(vals, TautClass.zero(g), TautClass.one(g))


def ta_class(g: int, a: int) -> TautClass:
    """``[T_a] = sum_beta Q_beta(E^(p)) Q_{rho(a) - beta}(E^*)``.

    ``beta`` runs over strict partitions with parts in ``{1..a}`` and the
    complement is the set of parts of ``rho(a) = (a, a-1, ..., 1)`` not in
    ``beta``.
    """
    if not 1 <= a <= g:
        raise ValueError(f"need 1 <= a <= g, got a={a}")
    cp, cd = hodge_chern(g, "frobenius"), hodge_chern(g, "dual")
    rho = tuple(range(a, 0, -1))
    acc = TautClass.zero(g)
    for k in range(a + 1):
        for beta in combinations(rho, k):
            rest = tuple(v for v in rho if v not in beta)
            acc = acc + q_beta(beta, cp) * q_beta(rest, cd)
    return acc


def tg_coefficient(g: int) -> PPoly:
    """``prod_{j<=g} (p^j + (-1)^j)``."""
    return prod((P ** j + (-1) ** j for j in range(1, g + 1)), start=PPoly(1))


# ---------------------------------------------------------------- masses and degrees

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def superspecial_mass(g: int, pval: int | None = None) -> PPoly | Fraction:
    """``(-1)^G 2^{-g} prod (p^j + (-1)^j) prod zeta(1-2j)``; exact at a prime ``pval``."""
    if g < 1:
        raise ValueError("g must be positive")
    sign = -1 if (g * (g + 1) // 2) % 2 else 1
    zetas = prod((zeta_neg_odd(j) for j in range(1, g + 1)), start=Fraction(1))
    mass = tg_coefficient(g) * (sign * zetas / 2 ** g)
    if pval is None:
        return mass
    if not _is_prime(pval):
        raise ValueError(f"{pval} is not prime")
    return mass(pval)


def superspecial_mass_via_degree(g: int) -> PPoly:
    """The same mass as ``deg [T_g]`` on the compactified space."""
    from .tautring import degree_Ag_tilde

    return degree_Ag_tilde(ta_class(g, g))


def deuring_check(pval: int | None = None) -> PPoly | Fraction:
    """Check ``(p-1) deg lambda_1 = (p-1)/24`` at ``g = 1`` and return the mass."""
    from .tautring import degree_Ag_tilde

    lhs = degree_Ag_tilde(vf_class(1, 0))
    rhs = superspecial_mass(1)
    if lhs != rhs or rhs != (P - 1) / 24:
        raise ArithmeticError(f"mass mismatch: {lhs} vs {rhs}")
    if pval is None:
        return rhs
    if not _is_prime(pval):
        raise ValueError(f"{pval} is not prime")
    return rhs(pval)


def bg_class(g: int) -> TautClass:
    """``(-1)^g lambda_g / zeta(1-2g)``."""
    if g < 1:
        raise ValueError("g must be positive")
    return _lam(g, g) * (Fraction((-1) ** g) / zeta_neg_odd(g))


def flag_degrees(g: int) -> tuple[PPoly, list[PPoly]]:
    """Degrees ``1 + p + ... + p^i`` of the steps of the flag tower and their product."""
    if g < 1:
        raise ValueError("g must be positive")
    steps = [PPoly([1] * (i + 1)) for i in range(1, g)]
    return prod(steps, start=PPoly(1)), steps


def h_factor(g: int) -> PFrac:
    """``h(1) = 1``, ``h(g) = h(g-1) (p^g + (-1)^g)/(p + (-1)^g)``."""
    if g < 1:
        raise ValueError("g must be positive")
    h = PFrac(1)
    for k in range(2, g + 1):
        s = (-1) ** k
        h = h * PFrac(P ** k + s, P + s)
    return h


def penultimate_class(g: int) -> tuple[PFrac, TautClass]:
    """Closed form for ``mu = {g, g-1, ..., 2}``: scalar and ``lambda_2 ... lambda_g``."""
    if g < 2:
        raise ValueError("needs g >= 2")
    scalar = PFrac(P - 1, P ** 2 + 1) * h_factor(g) * tg_coefficient(g)
    return scalar, TautClass(g, {tuple(range(2, g + 1)): 1})


def penultimate_ratio(g: int, backend: str | None = None) -> PFrac:
    """Computed stratum coefficient divided by the closed form (1 means agreement)."""
    scalar, mono = penultimate_class(g)
    mu = AdmissiblePartition(g, tuple(range(g, 1, -1)))
    raw = stratum_pushforward(mu, backend=backend)
    (key,) = mono.terms
    if set(raw.terms) - {key}:
        raise ArithmeticError(f"stratum {mu} has terms outside {mono}")
    return PFrac(raw.coeff(key)) / scalar


def superspecial_relation_ratio(g: int, backend: str | None = None) -> PFrac:
    """``pi_*(U_{[g..1]}) / (h(g) [T_g])`` as a reduced fraction."""
    mu = AdmissiblePartition(g, tuple(range(g, 0, -1)))
    raw = stratum_pushforward(mu, backend=backend)
    key = tuple(range(1, g + 1))
    return PFrac(raw.coeff(key)) / (h_factor(g) * tg_coefficient(g))


def supersingular3_class() -> TautClass:
    """``(p-1)(p^2-1)(p^3-1)(p-1)(p^2+1) lambda_1 lambda_3`` at ``g = 3``."""
    coeff = (P - 1) * (P ** 2 - 1) * (P ** 3 - 1) * (P - 1) * (P ** 2 + 1)
    return TautClass(3, {(1, 3): coeff})


def flag_total_from_table(g: int, backend: str | None = None) -> PPoly:
    """Push-forward of the open stratum, which equals the flag-tower degree."""
    raw = stratum_pushforward(AdmissiblePartition(g, ()), backend=backend)
    return raw.coeff(())
