#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Runs the two hot kernels (assignment enumeration and the grid DP) on a
ladder of sizes with both backends, verifies they return identical results,
and prints a timing table.  Usage:

    python benchmarks/compare_backends.py [--repeats N]
"""

from __future__ import annotations

import argparse
import random
import time

from earlywork import _kernels_py

try:
    from earlywork import _kernels
except ImportError:
    _kernels = None


def best_of(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def enumeration_cases():
    rng = random.Random(1)
    for n, m, d in ((8, 2, 40), (9, 3, 40), (11, 3, 60), (13, 3, 80)):
        sizes = [rng.randint(1, d - 1) for _ in range(n)]
        yield f"enumerate n={n} m={m}", "best_assignment", (sizes, m, d)


def dp_cases():
    rng = random.Random(2)
    for n, m, cap in ((9, 2, 100), (9, 3, 40), (20, 2, 400), (40, 2, 100)):
        sizes = [rng.randint(1, cap) for _ in range(n)]
        yield f"dp n={n} m={m} grid={cap + 1}", "dp_fill", (sizes, m, cap)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled kernels are not built; showing the numpy fallback only")

    header = f"{'case':<28} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, fn_name, fn_args in list(enumeration_cases()) + list(dp_cases()):
        py_fn = getattr(_kernels_py, fn_name)
        py_time = best_of(py_fn, fn_args, args.repeats)
        if _kernels is not None:
            c_fn = getattr(_kernels, fn_name)
            assert c_fn(*fn_args) == py_fn(*fn_args), f"backend mismatch on {label}"
            c_time = best_of(c_fn, fn_args, args.repeats)
            print(f"{label:<28} {py_time * 1000:>8.2f}ms {c_time * 1000:>8.2f}ms {py_time / c_time:>7.1f}x")
        else:
            print(f"{label:<28} {py_time * 1000:>8.2f}ms {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
