"""Timing comparison of the compiled and pure-NumPy reduction kernels.

Runs the packed-triangle pair and diagnostic reductions at a few sample
sizes, plus the surrounding GRM build and full estimator call for context.

Usage: python3 benchmarks/bench_kernels.py [--sizes 500,1000,2000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from tsre.genotype import compute_grm, simulate_genotypes, standardize
from tsre.engine import tsre_estimate
from tsre.kernels import BACKEND, _py

try:
    from tsre.kernels import _core
except ImportError:
    _core = None


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(n, m, repeat):
    rng = np.random.default_rng(0)
    std = standardize(simulate_genotypes(n, m, 0.2, 0.3, rng))
    x = rng.normal(size=n)
    y = 0.3 * x + rng.normal(size=n)

    t_grm = _best_of(lambda: compute_grm(std), repeat)
    grm = compute_grm(std)
    tri = grm.lower_triangle

    rows = [("grm build (BLAS panels)", t_grm, None)]
    impls = [("python", _py)] + ([("compiled", _core)] if _core else [])
    base = {}
    for name, impl in impls:
        t_pair = _best_of(lambda: impl.pair_sums(tri, n, x, y), repeat)
        t_diag = _best_of(
            lambda: impl.diag_sums(tri, n, x, y, 0.3, 0.01, 0.0), repeat
        )
        base[name] = (t_pair, t_diag)
        rows.append((f"pair_sums [{name}]", t_pair, None))
        rows.append((f"diag_sums [{name}]", t_diag, None))
    if _core:
        rows.append(
            (
                "speedup pair_sums",
                None,
                base["python"][0] / base["compiled"][0],
            )
        )
        rows.append(
            (
                "speedup diag_sums",
                None,
                base["python"][1] / base["compiled"][1],
            )
        )
    t_fit = _best_of(lambda: tsre_estimate(grm, x, y), repeat)
    rows.append(("tsre_estimate (given GRM)", t_fit, None))

    print(f"\nn={n}, m={m}, pairs={n * (n - 1) // 2}")
    for label, seconds, ratio in rows:
        if seconds is not None:
            print(f"  {label:<28s} {seconds * 1e3:10.3f} ms")
        else:
            print(f"  {label:<28s} {ratio:10.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="500,1000,2000")
    ap.add_argument("--m", type=int, default=500, help="variants for the GRM")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {BACKEND}")
    if _core is None:
        print("compiled extension unavailable; python timings only")
    for n in [int(s) for s in args.sizes.split(",")]:
        bench(n, args.m, args.repeat)


if __name__ == "__main__":
    main()
