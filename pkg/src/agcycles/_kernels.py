"""Hot integer kernels, compiled with numba when available.

Every kernel has two implementations with identical results: an ``@njit``
loop and a vectorised numpy version. Set ``AGCYCLES_NO_NUMBA=1`` (or run
without numba installed) to force the numpy path.

Packed polynomials store each monomial as one int64 key with ``BITS`` bits
per variable and carry int64 coefficients. Callers are responsible for the
overflow guards in :mod:`agcycles.packed`; the kernels do no checking.
"""
from __future__ import annotations

import os

import numpy as np

BITS = 5
MASK = (1 << BITS) - 1
MAX_VARS = 63 // BITS

_disabled = os.environ.get("AGCYCLES_NO_NUMBA", "").lower() in ("1", "true", "yes")
try:
    if _disabled:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- numpy path

def _combine_np(keys, coefs):
    if keys.size == 0:
        return keys.astype(np.int64), coefs.astype(np.int64)
    uniq, inv = np.unique(keys, return_inverse=True)
    sums = np.zeros(uniq.size, dtype=np.int64)
    np.add.at(sums, inv, coefs)
    nz = sums != 0
    return uniq[nz], sums[nz]


def _mul_np(ka, ca, kb, cb):
    keys = (ka[:, None] + kb[None, :]).ravel()
    coefs = (ca[:, None] * cb[None, :]).ravel()
    return _combine_np(keys, coefs)


def _dd_swap_np(keys, coefs, si, sj):
    a = (keys >> si) & MASK
    b = (keys >> sj) & MASK
    cnt = np.abs(a - b)
    total = int(cnt.sum())
    if total == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    rep = np.repeat(np.arange(keys.size), cnt)
    starts = np.cumsum(cnt) - cnt
    u = np.arange(total) - np.repeat(starts, cnt)
    ar, br = a[rep], b[rep]
    hi, lo = np.maximum(ar, br), np.minimum(ar, br)
    base = keys[rep] - (ar << si) - (br << sj)
    out_k = base + ((hi - 1 - u) << si) + ((lo + u) << sj)
    out_c = np.where(ar > br, coefs[rep], -coefs[rep])
    return _combine_np(out_k, out_c)


def _dd_sign_np(keys, coefs, si):
    a = (keys >> si) & MASK
    odd = (a & 1) == 1
    out_k = keys[odd] - (np.int64(1) << si)
    order = np.argsort(out_k, kind="stable")
    return out_k[order], coefs[odd][order]


def _perm_stats_np(perms, n_sym):
    w = perms.astype(np.int64)
    g = w.shape[1]
    lt = np.triu(np.ones((g, g), dtype=bool), 1)
    le = np.triu(np.ones((g, g), dtype=bool), 0)
    wi, wj = w[:, :, None], w[:, None, :]
    s = wi + wj
    length = ((wi > wj) & lt).sum(axis=(1, 2)) + ((s > n_sym) & le).sum(axis=(1, 2))
    codim = ((wi < wj) & lt).sum(axis=(1, 2)) + ((s < n_sym) & le).sum(axis=(1, 2))
    return length.astype(np.int64), codim.astype(np.int64)


def _sieve_np(limit):
    if limit < 2:
        return np.empty(0, np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, int(limit ** 0.5) + 1):
        if flags[q]:
            flags[q * q::q] = False
    return np.flatnonzero(flags).astype(np.int64)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _combine_nb(keys, coefs):
        n = keys.size
        order = np.argsort(keys, kind="mergesort")
        out_k = np.empty(n, np.int64)
        out_c = np.empty(n, np.int64)
        m = 0
        i = 0
        while i < n:
            k = keys[order[i]]
            s = 0
            while i < n and keys[order[i]] == k:
                s += coefs[order[i]]
                i += 1
            if s != 0:
                out_k[m] = k
                out_c[m] = s
                m += 1
        return out_k[:m].copy(), out_c[:m].copy()

    @njit(cache=True)
    def _mul_nb(ka, ca, kb, cb):
        n = ka.size * kb.size
        keys = np.empty(n, np.int64)
        coefs = np.empty(n, np.int64)
        t = 0
        for i in range(ka.size):
            for j in range(kb.size):
                keys[t] = ka[i] + kb[j]
                coefs[t] = ca[i] * cb[j]
                t += 1
        return _combine_nb(keys, coefs)

    @njit(cache=True)
    def _dd_swap_nb(keys, coefs, si, sj):
        total = 0
        for t in range(keys.size):
            a = (keys[t] >> si) & MASK
            b = (keys[t] >> sj) & MASK
            total += abs(a - b)
        out_k = np.empty(total, np.int64)
        out_c = np.empty(total, np.int64)
        m = 0
        for t in range(keys.size):
            k = keys[t]
            a = (k >> si) & MASK
            b = (k >> sj) & MASK
            if a == b:
                continue
            base = k - (a << si) - (b << sj)
            if a > b:
                hi, lo, s = a, b, coefs[t]
            else:
                hi, lo, s = b, a, -coefs[t]
            for u in range(hi - lo):
                out_k[m] = base + ((hi - 1 - u) << si) + ((lo + u) << sj)
                out_c[m] = s
                m += 1
        return _combine_nb(out_k, out_c)

    @njit(cache=True)
    def _dd_sign_nb(keys, coefs, si):
        n = 0
        for t in range(keys.size):
            if ((keys[t] >> si) & 1) == 1:
                n += 1
        out_k = np.empty(n, np.int64)
        out_c = np.empty(n, np.int64)
        m = 0
        for t in range(keys.size):
            if ((keys[t] >> si) & 1) == 1:
                out_k[m] = keys[t] - (np.int64(1) << si)
                out_c[m] = coefs[t]
                m += 1
        order = np.argsort(out_k, kind="mergesort")
        return out_k[order], out_c[order]

    @njit(cache=True)
    def _perm_stats_nb(perms, n_sym):
        n, g = perms.shape
        length = np.zeros(n, np.int64)
        codim = np.zeros(n, np.int64)
        for r in range(n):
            ln = 0
            cd = 0
            for i in range(g):
                wi = perms[r, i]
                for j in range(i, g):
                    wj = perms[r, j]
                    if j > i:
                        if wi > wj:
                            ln += 1
                        elif wi < wj:
                            cd += 1
                    s = wi + wj
                    if s > n_sym:
                        ln += 1
                    elif s < n_sym:
                        cd += 1
            length[r] = ln
            codim[r] = cd
        return length, codim

    @njit(cache=True)
    def _sieve_nb(limit):
        if limit < 2:
            return np.empty(0, np.int64)
        flags = np.ones(limit + 1, dtype=np.bool_)
        flags[0] = False
        flags[1] = False
        q = 2
        while q * q <= limit:
            if flags[q]:
                for m in range(q * q, limit + 1, q):
                    flags[m] = False
            q += 1
        return np.flatnonzero(flags).astype(np.int64)


# ---------------------------------------------------------------- dispatch

def _pick(nb_name, np_fn, backend):
    backend = backend or BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return globals()[nb_name]
    return np_fn


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def combine(keys, coefs, backend=None):
    """Sort keys, add coefficients of equal keys and drop zeros."""
    return _pick("_combine_nb", _combine_np, backend)(_i64(keys), _i64(coefs))


def mul(ka, ca, kb, cb, backend=None):
    return _pick("_mul_nb", _mul_np, backend)(_i64(ka), _i64(ca), _i64(kb), _i64(cb))


def dd_swap(keys, coefs, i, j, backend=None):
    """Type-A divided difference in packed variables ``i`` and ``j``."""
    return _pick("_dd_swap_nb", _dd_swap_np, backend)(_i64(keys), _i64(coefs), np.int64(i * BITS), np.int64(j * BITS))


def dd_sign(keys, coefs, i, backend=None):
    """Divided difference for the sign change of packed variable ``i``."""
    return _pick("_dd_sign_nb", _dd_sign_np, backend)(_i64(keys), _i64(coefs), np.int64(i * BITS))


def perm_stats(perms, n_sym, backend=None):
    """Return ``(length, codim)`` arrays for rows of one-line prefixes ``w(1..g)``."""
    return _pick("_perm_stats_nb", _perm_stats_np, backend)(_i64(perms), np.int64(n_sym))


def prime_sieve(limit, backend=None):
    return _pick("_sieve_nb", _sieve_np, backend)(np.int64(limit))
