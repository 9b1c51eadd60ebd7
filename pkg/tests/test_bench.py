"""Benchmark harness tests: suite runner, exponent fits, spreads, CSV."""

import math

import pytest

from atspkit.bench import (ALGORITHMS, BenchRecord, fit_exponent, parse_csv,
                           range_spread, run_suite, seed_spread, write_csv)


def synthetic_record(algorithm="gta", n=10, seed=1, cost_range=(1, 10),
                     runtime_ms=1.0, cost=100, optimal=True,
                     gap_percent=0.0, bnb_nodes=1, repetition=0):
    return BenchRecord(algorithm, n, seed, cost_range, runtime_ms, cost,
                       optimal, gap_percent, bnb_nodes, repetition)


class TestRunSuite:
    def test_single_gta_cell(self):
        records, skipped = run_suite({"algorithms": ["gta"], "n": [10],
                                      "seeds": [42]})
        assert skipped == []
        assert len(records) == 1
        r = records[0]
        assert r.algorithm == "gta" and r.n == 10 and r.seed == 42
        assert r.optimal and r.gap_percent == 0.0

    def test_oracle_caps_skip(self):
        records, skipped = run_suite({"algorithms": ["brute_force",
                                                     "held_karp"],
                                      "n": [10, 50], "seeds": [1]})
        assert len(records) == 2
        reasons = {(alg, n) for alg, n, _ in skipped}
        assert reasons == {("brute_force", 50), ("held_karp", 50)}

    def test_repetitions_and_ranges(self):
        records, _ = run_suite({"algorithms": ["nn"], "n": [8], "seeds": [1],
                                "ranges": [[1, 10], [10, 100]],
                                "repetitions": 3})
        assert len(records) == 6
        assert {r.cost_range for r in records} == {(1, 10), (10, 100)}

    def test_non_timing_columns_reproducible(self):
        spec = {"algorithms": ["gta", "nn"], "n": [8, 10], "seeds": [1, 2]}
        a, _ = run_suite(spec)
        b, _ = run_suite(spec)
        stripped = lambda rs: [(r.algorithm, r.n, r.seed, r.cost_range, r.cost,
                                r.optimal, r.gap_percent, r.bnb_nodes,
                                r.repetition) for r in rs]
        assert stripped(a) == stripped(b)

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            run_suite({"algorithms": ["simplex"], "n": [5], "seeds": [1]})

    def test_algorithm_roster(self):
        assert set(ALGORITHMS) == {"gta", "exact_cold", "tabu_only", "nn",
                                   "greedy_edge", "two_opt", "held_karp",
                                   "brute_force"}


class TestFitExponent:
    def test_exact_square_law(self):
        records = [synthetic_record(n=n, runtime_ms=3.0 * n * n)
                   for n in (10, 20, 50, 100)]
        fit = fit_exponent(records)
        assert fit.exponent == pytest.approx(2.0, abs=1e-6)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-9)
        assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-6)

    def test_constant_runtime(self):
        records = [synthetic_record(n=n, runtime_ms=42.0)
                   for n in (10, 20, 50)]
        assert fit_exponent(records).exponent == pytest.approx(0.0, abs=1e-9)

    def test_median_over_repetitions(self):
        records = []
        for n in (10, 20, 40):
            for rep, t in enumerate((1.0 * n, 2.0 * n, 1000.0)):
                records.append(synthetic_record(n=n, runtime_ms=t,
                                                repetition=rep))
        # median picks 2n per n, an exact linear law
        assert fit_exponent(records).exponent == pytest.approx(1.0, abs=1e-9)

    def test_too_few_points(self):
        records = [synthetic_record(n=n) for n in (10, 20)]
        with pytest.raises(ValueError):
            fit_exponent(records)

    def test_zero_runtime_clamped(self):
        records = [synthetic_record(n=n, runtime_ms=0.0)
                   for n in (10, 20, 50)]
        fit = fit_exponent(records)
        assert fit.clamped
        assert fit.exponent == pytest.approx(0.0, abs=1e-9)


class TestSpreads:
    def test_identical_runtimes(self):
        records = [synthetic_record(seed=s, runtime_ms=10.0) for s in (1, 2, 3)]
        assert seed_spread(records) == {10: 1.0}

    def test_ratio_definition(self):
        records = [synthetic_record(seed=1, runtime_ms=100.0),
                   synthetic_record(seed=2, runtime_ms=250.0)]
        assert seed_spread(records) == {10: 2.5}

    def test_range_spread(self):
        records = [synthetic_record(cost_range=(1, 10), runtime_ms=30.0),
                   synthetic_record(cost_range=(10, 100), runtime_ms=60.0)]
        assert range_spread(records) == {10: 2.0}

    def test_missing_cells(self):
        with pytest.raises(ValueError):
            seed_spread([synthetic_record(seed=1)])


class TestCsv:
    def test_empty_is_header_only(self):
        assert write_csv([]).decode().strip().count("\n") == 0

    def test_one_record_two_lines(self):
        data = write_csv([synthetic_record()]).decode()
        assert len(data.strip().splitlines()) == 2

    def test_round_trip(self):
        records = [synthetic_record(n=n, seed=s, runtime_ms=1.5 * n,
                                    gap_percent=None if s == 2 else 0.25,
                                    optimal=s != 2)
                   for n in (5, 10) for s in (1, 2)]
        assert parse_csv(write_csv(records)) == sorted(
            records, key=lambda r: (r.algorithm, r.n, r.seed, r.cost_range,
                                    r.repetition))

    def test_bad_header_rejected(self):
        with pytest.raises(ValueError):
            parse_csv(b"nope\n1,2,3\n")
