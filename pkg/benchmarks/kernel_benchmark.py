"""Compare the compiled kernels against the pure-Python fallback.

Times the three hot kernels (assignment solve, tabu neighborhood scan,
brute-force tour search) on seeded instances and prints a speedup table.

Usage: python benchmarks/kernel_benchmark.py [--repeats 5]
"""

import argparse
import statistics
import sys
import time

import numpy as np

from atspkit._kernels import fallback
from atspkit.instance import GenSpec, generate

try:
    from atspkit._kernels import _core as compiled
except ImportError:
    compiled = None


def _best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench_lap(impl, n, seed, repeats):
    m, _ = generate(GenSpec(n=n, seed=seed, cost_range=(1, 100)))
    sub = m.costs.copy()
    np.fill_diagonal(sub, fallback.FORBID)
    sub.setflags(write=False)
    return _best_of(lambda: impl.lap_solve(sub), repeats)


def bench_scan(impl, n, seed, repeats):
    m, _ = generate(GenSpec(n=n, seed=seed, cost_range=(1, 100)))
    order = np.arange(n, dtype=np.int64)
    band_size = max(1, n // 10)
    n_bands = (n + band_size - 1) // band_size
    tabu = np.zeros((n, n_bands), dtype=np.int64)
    cost = int(sum(m.costs[order[i], order[(i + 1) % n]] for i in range(n)))
    return _best_of(
        lambda: impl.scan_best_move(m.costs, order, tabu, band_size, 1,
                                    cost, cost, True), repeats)


def bench_brute(impl, n, seed, repeats):
    m, _ = generate(GenSpec(n=n, seed=seed, cost_range=(1, 100)))
    return _best_of(lambda: impl.brute_force_search(m.costs), repeats)


CASES = (
    ("lap_solve", bench_lap, (100, 200, 400)),
    ("scan_best_move", bench_scan, (100, 200, 400)),
    ("brute_force_search", bench_brute, (8, 9, 10)),
)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)

    if compiled is None:
        print("compiled extension not built; showing fallback only",
              file=sys.stderr)

    header = f"{'kernel':<20} {'n':>5} {'python_ms':>12} {'compiled_ms':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, fn, sizes in CASES:
        for n in sizes:
            py_best, _ = fn(fallback, n, args.seed, args.repeats)
            if compiled is not None:
                c_best, _ = fn(compiled, n, args.seed, args.repeats)
                speedup = py_best / c_best if c_best > 0 else float("inf")
                print(f"{name:<20} {n:>5} {py_best * 1e3:>12.3f}"
                      f" {c_best * 1e3:>12.3f} {speedup:>8.1f}x")
            else:
                print(f"{name:<20} {n:>5} {py_best * 1e3:>12.3f}"
                      f" {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
