"""SVG rendering tests: route maps and scaling plots."""

import pytest

from atspkit.bench import BenchRecord
from atspkit.heuristic import Tour
from atspkit.instance import GenSpec, generate
from atspkit.report import circular_layout, render_route, render_scaling


def record(algorithm="gta", n=10, seed=1, cost_range=(1, 10), runtime_ms=5.0):
    return BenchRecord(algorithm, n, seed, cost_range, runtime_ms, 100, True,
                       0.0, 1, 0)


class TestCircularLayout:
    def test_two_antipodal(self):
        layout = circular_layout(2)
        (x0, y0), (x1, y1) = layout.coords
        assert (x0, y0) == pytest.approx((0.95, 0.5))
        assert (x1, y1) == pytest.approx((0.05, 0.5))

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            circular_layout(1)


class TestRenderRoute:
    def test_element_counts(self):
        layout = circular_layout(10)
        tour = Tour(tuple(range(10)), 55)
        svg = render_route(layout, tour).decode()
        assert svg.count("<line ") == 10
        assert svg.count('r="2.20"') == 10
        assert svg.count('fill="#2e7d32"') == 1  # start marker (green)
        assert svg.count('fill="#1565c0"') == 1  # mid-tour marker (blue)
        assert "n=10 cost=55" in svg

    def test_deterministic(self):
        m, layout = generate(GenSpec(n=6, seed=9, mode="euclidean-asymmetric"))
        tour = Tour(tuple(range(6)), 123)
        assert render_route(layout, tour) == render_route(layout, tour)

    def test_two_node_cycle(self):
        svg = render_route(circular_layout(2), Tour((0, 1), 7)).decode()
        assert svg.count("<line ") == 2

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            render_route(circular_layout(3), Tour((0, 1), 7))


class TestRenderScaling:
    def test_five_seed_series(self):
        records = [record(seed=s, n=n, runtime_ms=float(n * s))
                   for s in (42, 65, 7, 29, 133) for n in (10, 20, 50)]
        svg = render_scaling(records).decode()
        assert svg.count("<polyline ") == 5
        assert svg.count("seed=") == 5

    def test_paired_range_series(self):
        records = [record(cost_range=rng, n=n, runtime_ms=float(n))
                   for rng in ((1, 10), (10, 100)) for n in (10, 20)]
        svg = render_scaling(records).decode()
        assert svg.count("<polyline ") == 2
        assert "range=1..10" in svg and "range=10..100" in svg

    def test_single_point_no_line(self):
        svg = render_scaling([record()]).decode()
        assert "<polyline" not in svg
        assert svg.count("<circle ") == 1

    def test_axes_modes(self):
        records = [record(n=n, runtime_ms=float(n)) for n in (10, 20, 50)]
        loglog = render_scaling(records, "loglog").decode()
        linlin = render_scaling(records, "linlin").decode()
        assert "(log10)" in loglog
        assert "(log10)" not in linlin
        with pytest.raises(ValueError):
            render_scaling(records, "semilog")

    def test_empty_input(self):
        with pytest.raises(ValueError):
            render_scaling([])

    def test_deterministic(self):
        records = [record(n=n, runtime_ms=float(n)) for n in (10, 20, 50)]
        assert render_scaling(records) == render_scaling(records)
