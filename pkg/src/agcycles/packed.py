"""Integer polynomials packed into int64 keys, for the Fulton pipeline.

Each monomial is one int64 with ``_kernels.BITS`` bits per exponent. The
wrappers here check the two ways this can go wrong before calling a
kernel: an exponent outgrowing its bit field, and a coefficient sum
exceeding int64. Either raises :class:`PackedOverflow`, and callers fall
back to the exact ``MPoly`` route.
"""
from __future__ import annotations

from typing import Mapping

import numpy as np

from . import _kernels
from ._kernels import BITS, MASK, MAX_VARS

_COEF_LIMIT = 1 << 62


class PackedOverflow(OverflowError):
    pass


def _l1(coefs: np.ndarray) -> int:
    if coefs.size == 0:
        return 0
    approx = float(np.abs(coefs.astype(np.float64)).sum())
    if approx < 2.0 ** 61:
        return int(np.abs(coefs).sum())
    return sum(abs(int(c)) for c in coefs)


class PackedPoly:
    __slots__ = ("nvars", "keys", "coefs", "backend")

    def __init__(self, nvars: int, keys, coefs, backend: str | None = None):
        if nvars > MAX_VARS:
            raise PackedOverflow(f"{nvars} variables do not fit a packed key")
        self.nvars = nvars
        self.keys = np.asarray(keys, dtype=np.int64)
        self.coefs = np.asarray(coefs, dtype=np.int64)
        self.backend = backend

    # conversion
    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[tuple[int, ...], int], backend=None) -> PackedPoly:
        keys, coefs = [], []
        for e, c in terms.items():
            if any(v > MASK or v < 0 for v in e):
                raise PackedOverflow(f"exponent {e} outside the packed range")
            c = int(c)
            if abs(c) >= _COEF_LIMIT:
                raise PackedOverflow("coefficient too large for int64")
            keys.append(sum(v << (BITS * k) for k, v in enumerate(e)))
            coefs.append(c)
        k, c = _kernels.combine(np.array(keys, np.int64), np.array(coefs, np.int64), backend)
        return cls(nvars, k, c, backend)

    @classmethod
    def monomial(cls, nvars: int, exps: tuple[int, ...], coef: int = 1, backend=None) -> PackedPoly:
        return cls.from_terms(nvars, {exps: coef}, backend)

    def exponents(self) -> np.ndarray:
        """``(n_terms, nvars)`` exponent matrix."""
        shifts = np.arange(self.nvars, dtype=np.int64) * BITS
        return (self.keys[:, None] >> shifts[None, :]) & MASK

    def to_terms(self) -> dict[tuple[int, ...], int]:
        ex = self.exponents()
        return {tuple(int(v) for v in row): int(c) for row, c in zip(ex, self.coefs)}

    def __len__(self):
        return int(self.keys.size)

    def __bool__(self):
        return bool(self.keys.size)

    def max_exponents(self) -> np.ndarray:
        if not self.keys.size:
            return np.zeros(self.nvars, np.int64)
        return self.exponents().max(axis=0)

    def l1(self) -> int:
        return _l1(self.coefs)

    def _new(self, kc) -> PackedPoly:
        return PackedPoly(self.nvars, kc[0], kc[1], self.backend)

    # arithmetic
    def __add__(self, other: PackedPoly) -> PackedPoly:
        if self.l1() + other.l1() >= _COEF_LIMIT:
            raise PackedOverflow("sum may overflow int64")
        return self._new(_kernels.combine(np.concatenate([self.keys, other.keys]),
                                          np.concatenate([self.coefs, other.coefs]), self.backend))

    def __neg__(self) -> PackedPoly:
        return PackedPoly(self.nvars, self.keys, -self.coefs, self.backend)

    def __sub__(self, other: PackedPoly) -> PackedPoly:
        return self + (-other)

    def scale(self, c: int) -> PackedPoly:
        if c == 0:
            return PackedPoly(self.nvars, [], [], self.backend)
        if self.l1() * abs(c) >= _COEF_LIMIT:
            raise PackedOverflow("scaling may overflow int64")
        return PackedPoly(self.nvars, self.keys, self.coefs * c, self.backend)

    def __mul__(self, other: PackedPoly) -> PackedPoly:
        if not self or not other:
            return PackedPoly(self.nvars, [], [], self.backend)
        if np.any(self.max_exponents() + other.max_exponents() > MASK):
            raise PackedOverflow("product exponent exceeds the packed field")
        if self.l1() * other.l1() >= _COEF_LIMIT:
            raise PackedOverflow("product coefficients may overflow int64")
        return self._new(_kernels.mul(self.keys, self.coefs, other.keys, other.coefs, self.backend))

    # divided differences on packed variable indices (0-based)
    def dd_swap(self, i: int, j: int) -> PackedPoly:
        if self.l1() * (MASK + 1) >= _COEF_LIMIT:
            raise PackedOverflow("divided difference may overflow int64")
        return self._new(_kernels.dd_swap(self.keys, self.coefs, i, j, self.backend))

    def dd_sign(self, i: int) -> PackedPoly:
        return self._new(_kernels.dd_sign(self.keys, self.coefs, i, self.backend))

    def __eq__(self, other):
        if not isinstance(other, PackedPoly):
            return NotImplemented
        return (self.nvars == other.nvars and np.array_equal(self.keys, other.keys)
                and np.array_equal(self.coefs, other.coefs))

    __hash__ = None
