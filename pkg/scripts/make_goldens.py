"""Regenerate the golden LP and SVG files under tests/golden/.

The fixtures here must stay in sync with tests/test_acceptance.py; both
build the same inputs and the acceptance tests compare output bytes against
the committed files.
"""

import pathlib
import sys

import numpy as np

from atspkit.bench import BenchRecord
from atspkit.exact import solve_exact
from atspkit.heuristic import warm_start
from atspkit.instance import DIAGONAL_SENTINEL, CostMatrix, GenSpec, generate
from atspkit.model_export import emit_lp
from atspkit.report import render_route, render_scaling

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"


def fixture_4x4():
    a = np.array([[0, 1, 5, 9], [9, 0, 2, 8], [6, 7, 0, 3], [4, 8, 7, 0]],
                 dtype=np.int64)
    np.fill_diagonal(a, DIAGONAL_SENTINEL)
    return CostMatrix(4, a)


def synthetic_seed_records():
    records = []
    for seed in (42, 65, 7, 29, 133):
        for n in (10, 20, 50, 100, 200):
            records.append(BenchRecord("gta", n, seed, (1, 10),
                                       0.05 * n * n + seed, n, True, 0.0,
                                       1, 0))
    return records


def synthetic_range_records():
    records = []
    for k, rng in enumerate(((1, 10), (10, 100))):
        for n in (10, 20, 50, 100, 200):
            records.append(BenchRecord("gta", n, 42, rng,
                                       (0.04 + 0.01 * k) * n * n, n, True,
                                       0.0, 1, 0))
    return records


def golden_artifacts():
    m4 = fixture_4x4()
    m3, _ = generate(GenSpec(n=3, seed=1))
    m10, layout = generate(GenSpec(n=10, seed=42, mode="euclidean-asymmetric"))
    rep = solve_exact(m10, warm_start(m10))
    return {
        "model_mtz_n4.lp": emit_lp(m4, "MTZ"),
        "model_dfj_n4.lp": emit_lp(m4, "DFJ"),
        "model_dfj_n3_cut01.lp": emit_lp(m3, "DFJ", cuts=[{0, 1}]),
        "route_n10_seed42.svg": render_route(layout, rep.tour),
        "scaling_seeds_loglog.svg": render_scaling(synthetic_seed_records(),
                                                   "loglog"),
        "scaling_ranges_loglin.svg": render_scaling(synthetic_range_records(),
                                                    "loglin"),
    }


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, data in golden_artifacts().items():
        (GOLDEN / name).write_bytes(data)
        print(f"wrote {GOLDEN / name} ({len(data)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
