"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--g 4] [--repeat 3]

Times each packed-polynomial kernel on synthetic input, then one full
strata table per backend. Results are checked for equality before timing
is reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from agcycles import _kernels
from agcycles import cycleclasses as cc
from agcycles import weyl


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def kernel_cases(rng):
    nterms = 20000
    keys = rng.integers(0, 1 << 40, nterms)
    coefs = rng.integers(-1000, 1000, nterms)
    sk, sc = _kernels.combine(keys, coefs, "numpy")
    small = rng.integers(0, 1 << 20, 400)
    perms = np.array([rng.permutation(12)[:6] + 1 for _ in range(20000)])
    return {
        "combine": lambda b: _kernels.combine(keys, coefs, b),
        "mul 400x400": lambda b: _kernels.mul(small, small, small, small, b),
        "dd_swap": lambda b: _kernels.dd_swap(sk, sc, 1, 2, b),
        "dd_sign": lambda b: _kernels.dd_sign(sk, sc, 3, b),
        "perm_stats": lambda b: _kernels.perm_stats(perms, 13, b),
        "prime_sieve 1e6": lambda b: _kernels.prime_sieve(10 ** 6, b),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, fn in kernel_cases(rng).items():
        if "numba" in backends:
            fn("numba")  # compile or load from cache outside the timing
        times, outs = [], []
        for b in backends:
            t, out = best_of(lambda: fn(b), args.repeat)
            times.append(t)
            outs.append(out)
        assert all(same(outs[0], o) for o in outs[1:]), f"{name}: backends disagree"
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) > 1 else ""
        print(f"{name:<18}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speed)

    print(f"\nstrata table g={args.g}")
    tables = {}
    for b in backends:
        cc.clear_caches()
        t0 = time.perf_counter()
        tables[b] = [r.raw_pushforward for r in cc.strata_table(args.g, backend=b)]
        print(f"  {b:<8}{time.perf_counter() - t0:8.2f} s  ({len(weyl.admissible_partitions(args.g))} strata)")
    assert all(tables[b] == tables[backends[0]] for b in backends), "strata tables disagree"
    print("  backends agree")


if __name__ == "__main__":
    main()
