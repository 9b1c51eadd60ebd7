"""Compiled-vs-fallback kernel parity and independent cross-checks.

The selected implementation (atspkit._kernels) must agree bit-for-bit with
the pure-Python fallback on every kernel, and the assignment kernel must
match scipy's linear_sum_assignment objective (used here as a test-side
oracle only).
"""

import os
import subprocess
import sys

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from atspkit import _kernels
from atspkit._kernels import FORBID, fallback
from atspkit.instance import GenSpec, generate


def random_costs(n, seed, high=50):
    m, _ = generate(GenSpec(n=n, seed=seed, cost_range=(1, high)))
    return m.costs


class TestSelection:
    def test_implementation_label(self):
        assert _kernels.IMPLEMENTATION in ("compiled", "python")

    def test_pure_env_forces_fallback(self):
        code = ("import atspkit._kernels as k;"
                "print(k.IMPLEMENTATION)")
        env = dict(os.environ, ATSPKIT_PURE="1")
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "python"


class TestLapSolve:
    @pytest.mark.parametrize("seed", range(1, 16))
    def test_matches_scipy_objective(self, seed):
        c = random_costs(7, seed)
        sub = c.copy()
        np.fill_diagonal(sub, FORBID)
        assign, u, v = _kernels.lap_solve(sub)
        mine = sum(int(sub[i, assign[i]]) for i in range(7))
        rows, cols = linear_sum_assignment(np.where(sub >= FORBID, 10**9, sub))
        theirs = int(sub[rows, cols].sum())
        assert mine == theirs

    @pytest.mark.parametrize("seed", range(1, 16))
    def test_parity_with_fallback(self, seed):
        c = random_costs(8, seed)
        sub = c.copy()
        np.fill_diagonal(sub, FORBID)
        sub.setflags(write=False)
        a1, u1, v1 = _kernels.lap_solve(sub)
        a2, u2, v2 = fallback.lap_solve(sub)
        assert list(a1) == list(a2)
        assert list(u1) == list(u2)
        assert list(v1) == list(v2)

    def test_duals_certify_bound(self):
        sub = random_costs(9, 3).copy()
        np.fill_diagonal(sub, FORBID)
        assign, u, v = _kernels.lap_solve(sub)
        bound = sum(int(sub[i, assign[i]]) for i in range(9))
        assert bound == sum(int(x) for x in u) + sum(int(x) for x in v)
        for i in range(9):
            for j in range(9):
                if int(sub[i, j]) < FORBID:
                    assert int(sub[i, j]) - int(u[i]) - int(v[j]) >= 0

    def test_forbidden_arcs_avoided(self):
        # a feasible assignment exists off the forbidden arcs; it must be used
        sub = np.full((3, 3), 5, dtype=np.int64)
        np.fill_diagonal(sub, FORBID)
        sub[0, 1] = FORBID
        assign, _, _ = _kernels.lap_solve(sub)
        assert assign[0] == 2


class TestScanBestMove:
    @pytest.mark.parametrize("seed", range(1, 11))
    def test_parity_with_fallback(self, seed):
        n = 12
        c = random_costs(n, seed)
        order = np.arange(n, dtype=np.int64)
        band_size = max(1, n // 10)
        n_bands = (n + band_size - 1) // band_size
        tabu = np.zeros((n, n_bands), dtype=np.int64)
        # make a few cells tabu so the admissibility path is exercised
        tabu[order[1], 1 // band_size] = 10
        tabu[order[4], 4 // band_size] = 10
        current = int(sum(c[order[i], order[(i + 1) % n]] for i in range(n)))
        for reversal in (True, False):
            got = _kernels.scan_best_move(c, order, tabu, band_size, 1,
                                          current, current, reversal)
            want = fallback.scan_best_move(c, order, tabu, band_size, 1,
                                           current, current, reversal)
            assert tuple(got) == tuple(want)

    def test_reported_delta_is_exact(self):
        from atspkit.heuristic import _apply_move, tour_cost
        from atspkit.instance import CostMatrix
        c = random_costs(10, 21)
        m = CostMatrix(10, c)
        order = list(range(10))
        band_size = 1
        tabu = np.zeros((10, 10), dtype=np.int64)
        cost0 = tour_cost(m, order)
        kind, a, b, delta = _kernels.scan_best_move(
            c, np.asarray(order, dtype=np.int64), tabu, band_size, 1,
            cost0, cost0, True)
        assert kind >= 0
        moved = _apply_move(order, kind, a, b)
        assert tour_cost(m, moved) == cost0 + delta


class TestBruteForceSearch:
    @pytest.mark.parametrize("seed", range(1, 11))
    def test_parity_with_fallback(self, seed):
        c = random_costs(7, seed)
        o1, c1 = _kernels.brute_force_search(c)
        o2, c2 = fallback.brute_force_search(c)
        assert list(o1) == list(o2)
        assert c1 == c2

    def test_exhaustive_minimum(self):
        import itertools
        c = random_costs(6, 99)
        order, cost = _kernels.brute_force_search(c)
        best = min(
            sum(int(c[p[i], p[(i + 1) % 6]]) for i in range(6))
            for p in ((0,) + q for q in itertools.permutations(range(1, 6))))
        assert cost == best
