"""Type C_g Weyl group combinatorics for Ekedahl-Oort strata.

A stratum has three encodings: an admissible partition ``mu`` (strictly
decreasing, parts at most ``g``), a final type ``nu`` on ``{1..g}`` and a
signed permutation ``w`` of ``{1..2g}``. Permutations are one-line tuples
``(w(1), ..., w(2g))`` with ``w(i) + w(2g+1-i) = 2g+1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class FinalType:
    g: int
    nu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(int(v) for v in self.nu))
        if len(self.nu) != self.g:
            raise ValueError(f"final type needs {self.g} values, got {len(self.nu)}")
        prev = 0
        for i, v in enumerate(self.nu, start=1):
            if not prev <= v <= prev + 1:
                raise ValueError(f"nu={self.nu} is not admissible at position {i}")
            prev = v

    def __call__(self, i: int) -> int:
        """``nu(i)`` on ``0..2g`` via ``nu(2g-i) = nu(i) - i + g``."""
        g = self.g
        if i == 0:
            return 0
        if 1 <= i <= g:
            return self.nu[i - 1]
        if g < i <= 2 * g:
            j = 2 * g - i
            return self(j) - j + g
        raise ValueError(f"{i} outside 0..{2 * g}")

    def extended(self) -> tuple[int, ...]:
        return tuple(self(i) for i in range(2 * self.g + 1))

    def __str__(self):
        return "{" + ",".join(map(str, self.nu)) + "}"


@dataclass(frozen=True)
class AdmissiblePartition:
    g: int
    mu: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(v) for v in self.mu))
        mu = self.mu
        if any(v <= 0 for v in mu):
            raise ValueError(f"partition {mu} has non-positive parts")
        if any(a <= b for a, b in zip(mu, mu[1:])):
            raise ValueError(f"partition {mu} is not strictly decreasing")
        if mu and mu[0] > self.g:
            raise ValueError(f"partition {mu} has a part larger than g={self.g}")

    @property
    def area(self) -> int:
        return sum(self.mu)

    def complement(self) -> AdmissiblePartition:
        """``{g, g-1, ..., 1}`` minus ``mu`` as a set of parts."""
        return AdmissiblePartition(self.g, tuple(v for v in range(self.g, 0, -1) if v not in self.mu))

    def __le__(self, other: AdmissiblePartition) -> bool:
        return partition_leq(self, other)

    def __str__(self):
        return "{" + ",".join(map(str, self.mu)) + "}" if self.mu else "∅"


@dataclass(frozen=True)
class WeylElt:
    g: int
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(v) for v in self.perm))
        n = 2 * self.g
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{n}")
        for i in range(1, n + 1):
            if self(i) + self(n + 1 - i) != n + 1:
                raise ValueError(f"{self.perm} is not in W_{self.g}")

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __mul__(self, other: WeylElt) -> WeylElt:
        """Composition ``(self * other)(i) = self(other(i))``."""
        if self.g != other.g:
            raise ValueError("genus mismatch")
        return WeylElt(self.g, tuple(self(other(i)) for i in range(1, 2 * self.g + 1)))

    def inverse(self) -> WeylElt:
        inv = [0] * (2 * self.g)
        for i, v in enumerate(self.perm, start=1):
            inv[v - 1] = i
        return WeylElt(self.g, tuple(inv))

    @classmethod
    def identity(cls, g: int) -> WeylElt:
        return cls(g, tuple(range(1, 2 * g + 1)))

    def bracket(self) -> str:
        return "[" + ",".join(map(str, self.perm)) + "]"

    __str__ = bracket


# ---------------------------------------------------------------- conversions

def nu_to_mu(f: FinalType) -> AdmissiblePartition:
    """``mu_j = #{i : nu(i) <= i - j}``, zero parts dropped."""
    parts = []
    for j in range(1, f.g + 1):
        m = sum(1 for i in range(1, f.g + 1) if f.nu[i - 1] <= i - j)
        if m:
            parts.append(m)
    return AdmissiblePartition(f.g, tuple(parts))


def mu_to_nu(m: AdmissiblePartition) -> FinalType:
    """Inverse of :func:`nu_to_mu`: column ``i`` of the diagram has ``i - nu(i)`` boxes."""
    g = m.g
    # column heights of the diagram: conjugate partition, read left to right
    heights = [sum(1 for part in m.mu if part >= c) for c in range(1, g + 1)]
    heights = sorted(heights)
    return FinalType(g, tuple(i - h for i, h in zip(range(1, g + 1), heights)))


def nu_to_weyl(f: FinalType) -> WeylElt:
    g = f.g
    ext = f.extended()
    s = [i for i in range(1, g + 1) if ext[i] == ext[i - 1]]
    sc = [i for i in range(1, g + 1) if ext[i] != ext[i - 1]]
    perm = [0] * (2 * g)
    for k, j in enumerate(sc, start=1):
        perm[j - 1] = g + k
    for k, i in enumerate(s, start=1):
        perm[i - 1] = k
    for i in range(1, g + 1):
        perm[2 * g - i] = 2 * g + 1 - perm[i - 1]
    return WeylElt(g, tuple(perm))


def mu_to_weyl(m: AdmissiblePartition) -> WeylElt:
    return nu_to_weyl(mu_to_nu(m))


def generator(g: int, i: int) -> WeylElt:
    """``s_i = (i, i+1)(2g-i, 2g+1-i)`` for ``i < g`` and ``s_g = (g, g+1)``."""
    if not 1 <= i <= g:
        raise ValueError(f"generator index {i} outside 1..{g}")
    perm = list(range(1, 2 * g + 1))

    def swap(a, b):
        perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]

    swap(i, i + 1)
    if i < g:
        swap(2 * g - i, 2 * g + 1 - i)
    return WeylElt(g, tuple(perm))


def evaluate_word(g: int, word: Sequence[int]) -> WeylElt:
    """The product ``s_{i_1} s_{i_2} ... s_{i_l}`` acting on ``{1..2g}``.

    Letters are read left to right, each one relabelling values, so the
    rightmost letter is the last factor applied to positions.
    """
    w = WeylElt.identity(g)
    for i in word:
        w = generator(g, i) * w
    return w


def reduced_word(m: AdmissiblePartition) -> tuple[int, ...]:
    """Strip the complementary diagram layer by layer, top layer first.

    Column ``i`` of the complement ``{g,...,1} - mu`` has height ``nu(i)``;
    each layer contributes its columns from left to right.
    """
    nu = mu_to_nu(m).nu
    word: list[int] = []
    for layer in range(max(nu, default=0), 0, -1):
        word.extend(i for i in range(1, m.g + 1) if nu[i - 1] >= layer)
    return tuple(word)


def render_word(word: Sequence[int]) -> str:
    return "".join(f"s{i}" for i in word) if word else "1"


# ---------------------------------------------------------------- statistics

def length(w: WeylElt) -> int:
    """Inversions ``i < j`` plus pairs ``i <= j`` with ``w(i)+w(j) > 2g+1``, over ``1..g``."""
    g, n = w.g, 2 * w.g + 1
    inv = sum(1 for i in range(1, g + 1) for j in range(i + 1, g + 1) if w(i) > w(j))
    neg = sum(1 for i in range(1, g + 1) for j in range(i, g + 1) if w(i) + w(j) > n)
    return inv + neg


def codim(w: WeylElt) -> int:
    """Complementary count; ``length + codim = g^2``."""
    g, n = w.g, 2 * w.g + 1
    asc = sum(1 for i in range(1, g + 1) for j in range(i + 1, g + 1) if w(i) < w(j))
    pos = sum(1 for i in range(1, g + 1) for j in range(i, g + 1) if w(i) + w(j) < n)
    return asc + pos


def batch_stats(elements: Sequence[WeylElt], backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``(length, codim)`` for many elements of one ``W_g``."""
    if not elements:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    g = elements[0].g
    arr = np.array([w.perm[:g] for w in elements], dtype=np.int64)
    return _kernels.perm_stats(arr, 2 * g + 1, backend=backend)


def all_weyl_elements(g: int) -> list[WeylElt]:
    """All ``2^g g!`` elements, from a permutation of ``1..g`` and a sign pattern."""
    out = []
    n = 2 * g + 1
    for base in permutations(range(1, g + 1)):
        for flips in product((False, True), repeat=g):
            first = [n - v if f else v for v, f in zip(base, flips)]
            out.append(WeylElt(g, tuple(first) + tuple(n - v for v in reversed(first))))
    return out


# ---------------------------------------------------------------- strata

def admissible_partitions(g: int) -> list[AdmissiblePartition]:
    parts = range(g, 0, -1)
    return [AdmissiblePartition(g, c) for k in range(g + 1) for c in combinations(parts, k)]


@dataclass(frozen=True)
class StratumRow:
    mu: AdmissiblePartition
    nu: FinalType
    weyl: WeylElt
    word: tuple[int, ...]
    length: int
    codim: int

    @property
    def area(self) -> int:
        return self.mu.area


def enumerate_strata(g: int) -> list[StratumRow]:
    """One row per stratum, sorted by codimension and then by ``mu``."""
    rows = {}
    for m in admissible_partitions(g):
        w = mu_to_weyl(m)
        rows[m.mu] = StratumRow(m, mu_to_nu(m), w, reduced_word(m), length(w), codim(w))
    return sorted(rows.values(), key=lambda r: (r.codim, r.mu.mu))


def partition_leq(a: AdmissiblePartition, b: AdmissiblePartition) -> bool:
    """``a <= b`` iff ``a_i <= b_i`` for every ``i`` (missing parts are 0)."""
    n = max(len(a.mu), len(b.mu))
    pa = a.mu + (0,) * (n - len(a.mu))
    pb = b.mu + (0,) * (n - len(b.mu))
    return all(x <= y for x, y in zip(pa, pb))


def final_type_example_prank(g: int, f: int) -> FinalType:
    """``nu(i) = i`` for ``i <= f`` and ``nu(i) = i - 1`` beyond: p-rank ``f``, a-number 1."""
    if not 0 <= f < g:
        raise ValueError(f"need 0 <= f < g, got f={f}, g={g}")
    return FinalType(g, tuple(i if i <= f else i - 1 for i in range(1, g + 1)))


def hyperelliptic_partition(g: int) -> AdmissiblePartition:
    """``(g, g-2, g-4, ...)``."""
    if g < 1:
        raise ValueError("g must be positive")
    return AdmissiblePartition(g, tuple(range(g, 0, -2)))


def parse_partition(g: int, parts: Iterable[int]) -> AdmissiblePartition:
    return AdmissiblePartition(g, tuple(sorted((int(p) for p in parts), reverse=True)))
