"""Compiled vs pure-Python kernels: exhaustive permutation sweep and subset DP.

    python benchmarks/bench_kernels.py [--sweep-n 8 9 10] [--dp-n 14 16 18] [--repeat 3]

Each row reports the best of ``--repeat`` runs per backend and checks that
both backends return identical arrays.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from depcross import kernels
from depcross.ensembles import _edge_arrays, random_labeled_tree


def best_time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(label, n, call, repeat):
    t_py, r_py = best_time(lambda: call("python"), repeat)
    if kernels.COMPILED:
        t_cy, r_cy = best_time(lambda: call("cython"), repeat)
        same = all(np.array_equal(a, b) for a, b in zip(r_py, r_cy))
        print(f"{label:<8}{n:>4}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>10.1f}x  {'ok' if same else 'MISMATCH'}")
    else:
        print(f"{label:<8}{n:>4}{t_py:>12.4f}{'-':>12}{'-':>11}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sweep-n", type=int, nargs="*", default=[8, 9, 10])
    ap.add_argument("--dp-n", type=int, nargs="*", default=[14, 16, 18])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    print(f"compiled kernels available: {kernels.COMPILED}")
    print(f"{'kernel':<8}{'n':>4}{'python s':>12}{'cython s':>12}{'speedup':>11}")
    for n in args.sweep_n:
        t = random_labeled_tree(n, args.seed)
        eu, ev, wt = _edge_arrays(t)
        bench("sweep", n, lambda b: kernels.sweep(n, eu, ev, wt, backend=b), args.repeat)
    for n in args.dp_n:
        t = random_labeled_tree(n, args.seed)
        adj = [0] * n
        for u, v in t.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        bench("cut_dp", n, lambda b: kernels.cut_dp(n, adj, False, backend=b), args.repeat)


if __name__ == "__main__":
    main()
