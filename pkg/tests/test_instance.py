"""Instance generation, transformation, and serialization tests."""

import numpy as np
import pytest

from atspkit.instance import (DIAGONAL_SENTINEL, CostMatrix, GenSpec,
                              InstanceError, SplitMix64, TsplibFormatError,
                              circular_coords, generate, parse_csv,
                              parse_tsplib, scale, write_csv, write_tsplib)

from conftest import make_matrix


class TestSplitMix64:
    def test_reference_stream_seed_zero(self):
        # published reference outputs for seed 0
        rng = SplitMix64(0)
        assert rng.next_u64() == 0xE220A8397B1DCDAF
        assert rng.next_u64() == 0x6E789E6AA1B965F4
        assert rng.next_u64() == 0x06C45D188009454F

    def test_unit_draws_in_range(self):
        rng = SplitMix64(987654321)
        for _ in range(200):
            u = rng.next_unit()
            assert 0.0 <= u < 1.0


class TestGenerate:
    def test_basic_shape_and_range(self):
        m, layout = generate(GenSpec(n=3, seed=42))
        assert layout is None
        assert m.n == 3
        off = m.costs[~np.eye(3, dtype=bool)]
        assert off.min() >= 1 and off.max() <= 10
        assert all(m.costs[i, i] == DIAGONAL_SENTINEL for i in range(3))

    def test_wide_range(self):
        m, _ = generate(GenSpec(n=3, seed=42, cost_range=(10, 100)))
        off = m.costs[~np.eye(3, dtype=bool)]
        assert off.min() >= 10 and off.max() <= 100

    def test_determinism(self):
        spec = GenSpec(n=12, seed=7, cost_range=(1, 10))
        a, _ = generate(spec)
        b, _ = generate(spec)
        assert a == b
        assert a.costs.tobytes() == b.costs.tobytes()

    def test_range_containment_sampled(self):
        total = 0
        for seed in range(1, 30):
            m, _ = generate(GenSpec(n=7, seed=seed, cost_range=(3, 9)))
            off = m.costs[~np.eye(7, dtype=bool)]
            assert off.min() >= 3 and off.max() <= 9
            total += off.size
        assert total >= 1000

    def test_draw_order_matches_scalar_rng(self):
        # the vectorized generator must agree with the stateful reference
        spec = GenSpec(n=4, seed=99, cost_range=(1, 10))
        m, _ = generate(spec)
        rng = SplitMix64(99)
        for i in range(4):
            for j in range(4):
                if i == j:
                    continue
                assert int(m.costs[i, j]) == 1 + rng.next_u64() % 10

    def test_euclidean_mode(self):
        m, layout = generate(GenSpec(n=8, seed=5, mode="euclidean-asymmetric"))
        assert layout is not None and len(layout) == 8
        for (x, y) in layout.coords:
            assert 0.0 <= x <= 1.0 and 0.0 <= y <= 1.0
        off = m.costs[~np.eye(8, dtype=bool)]
        assert off.min() >= 0
        assert all(m.costs[i, i] == DIAGONAL_SENTINEL for i in range(8))

    @pytest.mark.parametrize("spec", [
        GenSpec(n=1, seed=0),
        GenSpec(n=3, seed=0, cost_range=(0, 10)),
        GenSpec(n=3, seed=0, cost_range=(5, 4)),
        GenSpec(n=3, seed=0, mode="no-such-mode"),
        GenSpec(n=2000, seed=0, cost_range=(1, 500_000)),
    ])
    def test_invalid_specs(self, spec):
        with pytest.raises(InstanceError):
            generate(spec)


class TestScale:
    def test_identity(self):
        m, _ = generate(GenSpec(n=5, seed=3))
        assert scale(m, 1) == m

    def test_all_ones_to_tens(self, all_equal):
        m = all_equal(4, 1)
        s = scale(m, 10)
        off = ~np.eye(4, dtype=bool)
        assert (s.costs[off] == 10).all()
        assert all(s.costs[i, i] == DIAGONAL_SENTINEL for i in range(4))

    def test_tour_cost_scales(self):
        from atspkit.heuristic import tour_cost
        m, _ = generate(GenSpec(n=6, seed=11))
        s = scale(m, 7)
        order = [0, 3, 1, 5, 2, 4]
        assert tour_cost(s, order) == 7 * tour_cost(m, order)

    def test_overflow_detected(self, all_equal):
        m = all_equal(3, 2**40)
        with pytest.raises(OverflowError):
            scale(m, 2**30)

    def test_k_below_one_rejected(self, all_equal):
        with pytest.raises(InstanceError):
            scale(all_equal(3, 1), 0)


class TestTsplib:
    def test_round_trip(self):
        m, _ = generate(GenSpec(n=10, seed=42))
        assert parse_tsplib(write_tsplib(m)) == m

    def test_two_node_round_trip(self, all_equal):
        m = all_equal(2, 5)
        assert parse_tsplib(write_tsplib(m)) == m

    def test_symmetric_tsp_accepted(self):
        text = ("NAME: s\nTYPE: TSP\nDIMENSION: 3\n"
                "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
                "EDGE_WEIGHT_SECTION\n0 2 4\n2 0 6\n4 6 0\nEOF\n")
        m = parse_tsplib(text)
        assert m.costs[0, 1] == m.costs[1, 0] == 2
        assert m.costs[0, 0] == DIAGONAL_SENTINEL

    def test_dimension_mismatch(self):
        text = ("NAME: s\nTYPE: ATSP\nDIMENSION: 5\n"
                "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
                "EDGE_WEIGHT_SECTION\n0 2 4\n2 0 6\n4 6 0\nEOF\n")
        with pytest.raises(TsplibFormatError):
            parse_tsplib(text)

    def test_non_integer_weight(self):
        text = ("NAME: s\nTYPE: ATSP\nDIMENSION: 2\n"
                "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
                "EDGE_WEIGHT_SECTION\n0 1.5\n2 0\nEOF\n")
        with pytest.raises(TsplibFormatError):
            parse_tsplib(text)

    @pytest.mark.parametrize("bad", ["TYPE: TOUR", "EDGE_WEIGHT_TYPE: GEO"])
    def test_unsupported_headers(self, bad):
        key = bad.split(":")[0]
        base = {"NAME": "s", "TYPE": "ATSP", "DIMENSION": "2",
                "EDGE_WEIGHT_TYPE": "EXPLICIT",
                "EDGE_WEIGHT_FORMAT": "FULL_MATRIX"}
        base[key] = bad.split(":")[1].strip()
        text = "\n".join(f"{k}: {v}" for k, v in base.items())
        text += "\nEDGE_WEIGHT_SECTION\n0 1\n2 0\nEOF\n"
        with pytest.raises(TsplibFormatError):
            parse_tsplib(text)


class TestCsv:
    def test_round_trip(self):
        m, _ = generate(GenSpec(n=6, seed=8))
        assert parse_csv(write_csv(m)) == m

    def test_three_rows(self):
        m = make_matrix([[0, 1, 2], [3, 0, 4], [5, 6, 0]])
        lines = write_csv(m).decode().strip().splitlines()
        assert len(lines) == 3
        assert all(len(line.split(",")) == 3 for line in lines)

    def test_non_square_rejected(self):
        with pytest.raises(InstanceError):
            parse_csv(b"1,2,3\n4,5,6\n")


class TestCircularCoords:
    def test_antipodal_pair(self):
        layout = circular_coords(2)
        (x0, y0), (x1, y1) = layout.coords
        assert x0 == pytest.approx(0.95) and y0 == pytest.approx(0.5)
        assert x1 == pytest.approx(0.05) and y1 == pytest.approx(0.5)

    def test_compass_points(self):
        layout = circular_coords(4)
        xs = [round(x, 9) for x, _ in layout.coords]
        ys = [round(y, 9) for _, y in layout.coords]
        assert xs == [0.95, 0.5, 0.05, 0.5]
        assert ys == [0.5, 0.95, 0.5, 0.05]

    def test_deterministic(self):
        assert circular_coords(9) == circular_coords(9)


class TestCostMatrix:
    def test_read_only(self):
        m, _ = generate(GenSpec(n=4, seed=1))
        with pytest.raises(ValueError):
            m.costs[0, 1] = 99

    def test_shape_checked(self):
        with pytest.raises(InstanceError):
            CostMatrix(3, np.zeros((2, 2), dtype=np.int64))

    def test_hash_and_eq(self):
        a, _ = generate(GenSpec(n=4, seed=1))
        b, _ = generate(GenSpec(n=4, seed=1))
        c, _ = generate(GenSpec(n=4, seed=2))
        assert a == b and hash(a) == hash(b)
        assert a != c
