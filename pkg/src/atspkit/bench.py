"""Benchmark harness: runtime scaling sweeps over n, seeds, and cost ranges,
with exponent fits on log-log medians and CSV emission.

Non-timing columns (cost, gap, nodes) are bit-reproducible across re-runs of
the same suite; only runtime columns may differ.
"""

import math
import time
from dataclasses import dataclass

from . import oracle
from .exact import solve_exact
from .heuristic import TabuParams, nearest_neighbor, tabu_search, warm_start
from .instance import GenSpec, generate

ALGORITHMS = ("gta", "exact_cold", "tabu_only", "nn", "greedy_edge",
              "two_opt", "held_karp", "brute_force")

DEFAULT_N_GRID = (10, 20, 50, 100, 200, 500)


@dataclass(frozen=True)
class BenchRecord:
    """One (algorithm, n, seed, range, repetition) measurement."""

    algorithm: str
    n: int
    seed: int
    cost_range: tuple
    runtime_ms: float
    cost: int
    optimal: bool
    gap_percent: float | None
    bnb_nodes: int
    repetition: int


@dataclass(frozen=True)
class FitResult:
    """Least-squares power-law fit t ~ C * n^exponent on log-log axes."""

    exponent: float
    intercept: float
    r_squared: float
    clamped: bool = False


def _run_algorithm(name, m, time_limit_ms, tabu_params):
    """Returns (cost, optimal, gap_percent, bnb_nodes)."""
    if name == "nn":
        t = nearest_neighbor(m, 0)
        return t.cost, False, None, 0
    if name == "tabu_only":
        t = warm_start(m, tabu_params)
        return t.cost, False, None, 0
    if name == "greedy_edge":
        t = oracle.greedy_edge(m)
        return t.cost, False, None, 0
    if name == "two_opt":
        t = oracle.two_opt_descent(m, nearest_neighbor(m, 0))
        return t.cost, False, None, 0
    if name == "held_karp":
        cost, _ = oracle.held_karp(m)
        return cost, True, 0.0, 0
    if name == "brute_force":
        t = oracle.brute_force(m)
        return t.cost, True, 0.0, 0
    if name == "exact_cold":
        rep = solve_exact(m, None, time_limit_ms=time_limit_ms)
        return rep.optimal_cost, rep.optimal, rep.gap_percent, rep.bnb_nodes_explored
    if name == "gta":
        warm = warm_start(m, tabu_params)
        rep = solve_exact(m, warm, time_limit_ms=time_limit_ms)
        return rep.optimal_cost, rep.optimal, rep.gap_percent, rep.bnb_nodes_explored
    raise ValueError(f"unknown algorithm {name!r}")


def run_suite(spec):
    """Execute the sweep described by a plain dict.

    Keys: algorithms, n (list), seeds, ranges (list of [lo, hi]),
    repetitions (default 1), time_limit_ms (default 0, per solve),
    tabu_time_limit_ms (default 0).  A fresh instance is generated per
    (n, seed, range); only the solve call is timed.

    Returns (records, skipped) where skipped lists (algorithm, n, reason)
    for cells violating an oracle cap.
    """
    algorithms = spec["algorithms"]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    n_list = spec["n"]
    seeds = spec["seeds"]
    ranges = [tuple(r) for r in spec.get("ranges", [(1, 10)])]
    repetitions = int(spec.get("repetitions", 1))
    time_limit_ms = int(spec.get("time_limit_ms", 0))
    tabu_params = TabuParams(time_limit_ms=int(spec.get("tabu_time_limit_ms", 0)))
    records = []
    skipped = []
    for alg in algorithms:
        for n in n_list:
            if alg == "brute_force" and n > oracle.BRUTE_FORCE_MAX_N:
                skipped.append((alg, n, f"brute force capped at n <= "
                               f"{oracle.BRUTE_FORCE_MAX_N}"))
                continue
            if alg == "held_karp" and n > oracle.HELD_KARP_MAX_N:
                skipped.append((alg, n, f"Held-Karp capped at n <= "
                               f"{oracle.HELD_KARP_MAX_N}"))
                continue
            for seed in seeds:
                for rng in ranges:
                    m, _ = generate(GenSpec(n=n, seed=seed, cost_range=rng))
                    for rep in range(repetitions):
                        t0 = time.monotonic()
                        cost, optimal, gap, nodes = _run_algorithm(
                            alg, m, time_limit_ms, tabu_params)
                        ms = (time.monotonic() - t0) * 1000.0
                        records.append(BenchRecord(
                            algorithm=alg, n=n, seed=seed, cost_range=rng,
                            runtime_ms=ms, cost=int(cost), optimal=bool(optimal),
                            gap_percent=gap, bnb_nodes=int(nodes),
                            repetition=rep))
    return records, skipped


def _median(values):
    vs = sorted(values)
    k = len(vs)
    mid = k // 2
    return vs[mid] if k % 2 else 0.5 * (vs[mid - 1] + vs[mid])


def fit_exponent(records):
    """OLS fit of log(median runtime per n) against log n.

    Zero runtimes are clamped to 1 ms and flagged.  Requires at least three
    distinct n values.
    """
    by_n = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r.runtime_ms)
    if len(by_n) < 3:
        raise ValueError("need >= 3 distinct n values to fit an exponent")
    clamped = False
    xs, ys = [], []
    for n in sorted(by_n):
        t = _median(by_n[n])
        if t <= 0.0:
            t = 1.0
            clamped = True
        xs.append(math.log(n))
        ys.append(math.log(t))
    k = len(xs)
    mx = sum(xs) / k
    my = sum(ys) / k
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(slope, intercept, r2, clamped)


def seed_spread(records):
    """Per-n max/min ratio of median runtime across seeds."""
    return _spread(records, key=lambda r: r.seed)


def range_spread(records):
    """Per-n max/min ratio of median runtime across cost ranges."""
    return _spread(records, key=lambda r: r.cost_range)


def _spread(records, key):
    cells = {}
    for r in records:
        cells.setdefault((r.n, key(r)), []).append(r.runtime_ms)
    by_n = {}
    for (n, _), times in cells.items():
        by_n.setdefault(n, []).append(_median(times))
    out = {}
    for n, medians in by_n.items():
        if len(medians) < 2:
            raise ValueError(f"need >= 2 groups at n={n}")
        lo = min(medians)
        out[n] = float("inf") if lo <= 0 else max(medians) / lo
    return out


CSV_HEADER = ("algorithm,n,seed,range_low,range_high,runtime_ms,cost,"
              "optimal,gap_percent,bnb_nodes,repetition")


def write_csv(records):
    """Stable CSV bytes, rows ordered by (algorithm, n, seed, range, rep)."""
    lines = [CSV_HEADER]
    ordered = sorted(records, key=lambda r: (r.algorithm, r.n, r.seed,
                                             r.cost_range, r.repetition))
    for r in ordered:
        gap = "" if r.gap_percent is None else repr(r.gap_percent)
        lines.append(f"{r.algorithm},{r.n},{r.seed},{r.cost_range[0]},"
                     f"{r.cost_range[1]},{r.runtime_ms!r},{r.cost},"
                     f"{int(r.optimal)},{gap},{r.bnb_nodes},{r.repetition}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_csv(data):
    """Inverse of write_csv, for the plot pipeline."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognized benchmark CSV header")
    records = []
    for ln in lines[1:]:
        parts = ln.split(",")
        records.append(BenchRecord(
            algorithm=parts[0], n=int(parts[1]), seed=int(parts[2]),
            cost_range=(int(parts[3]), int(parts[4])),
            runtime_ms=float(parts[5]), cost=int(parts[6]),
            optimal=bool(int(parts[7])),
            gap_percent=None if parts[8] == "" else float(parts[8]),
            bnb_nodes=int(parts[9]), repetition=int(parts[10])))
    return records
