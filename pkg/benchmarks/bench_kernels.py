#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs both paths in-process (the fallback implementations are importable
directly) on a large random transaction matrix.

    python3 benchmarks/bench_kernels.py [--transactions N] [--items M]
"""
import argparse
import time

import numpy as np

from taxrules import _kernels


def bench(label, fn, *args, repeat=5):
    fn(*args)  # warm-up (and numba compilation)
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    best = min(times)
    print(f"{label:<40} {best * 1e3:10.2f} ms")
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--transactions", type=int, default=200_000)
    parser.add_argument("--items", type=int, default=200)
    parser.add_argument("--candidates", type=int, default=500)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    matrix = rng.random((args.transactions, args.items)) < 0.05
    candidates = rng.integers(0, args.items, size=(args.candidates, 3)).astype(np.int64)
    groups = [list(rng.integers(0, args.items, size=4)) for _ in range(3)]
    cols = np.array([c for g in groups for c in g], dtype=np.int64)
    offsets = np.array([0, 4, 8, 12], dtype=np.int64)

    print(f"active backend: {_kernels.BACKEND}")
    print(f"matrix: {args.transactions} x {args.items}, {args.candidates} candidates\n")

    t_np = bench("count_all_present (numpy fallback)", _kernels._count_all_present_np, matrix, candidates)
    if _kernels.BACKEND == "numba":
        t_nb = bench("count_all_present (numba)", _kernels._count_all_present_nb, matrix, candidates)
        print(f"{'speedup':<40} {t_np / t_nb:10.2f} x\n")

    t_np = bench("match_groups (numpy fallback)", _kernels._match_groups_np, matrix, cols, offsets)
    if _kernels.BACKEND == "numba":
        t_nb = bench("match_groups (numba)", _kernels._match_groups_nb, matrix, cols, offsets)
        print(f"{'speedup':<40} {t_np / t_nb:10.2f} x")


if __name__ == "__main__":
    main()
