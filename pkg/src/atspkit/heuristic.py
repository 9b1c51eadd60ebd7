"""Fast feasible tours: nearest-neighbor construction, asymmetric-safe local
moves (swap, or-opt, segment reversal), and a deterministic tabu search.

The tabu neighborhood is swap + or-opt(1..3) + optional segment reversal.
Or-opt relocations preserve arc directions, which matters for ATSP; reversal
is kept as a toggle.  The scan order is fixed (move kind, then indices), so
"best non-tabu move" is deterministic under cost ties.
"""

import json
import time
from dataclasses import dataclass

import numpy as np

from ._kernels import scan_best_move


@dataclass(frozen=True)
class Tour:
    """Cyclic node permutation with its cached total arc cost."""

    order: tuple
    cost: int

    def canonical(self):
        """Rotate so the tour starts at node 0 (same cyclic tour)."""
        i = self.order.index(0)
        return Tour(self.order[i:] + self.order[:i], self.cost)

    def to_json(self):
        return json.dumps({"order": list(self.order), "cost": int(self.cost)})

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        return Tour(tuple(obj["order"]), int(obj["cost"]))

    def to_line(self):
        return " ".join(str(v) for v in self.order)


@dataclass(frozen=True)
class TabuParams:
    """Tabu-search controls.  None for tenure/max_stall means the size-based
    defaults max(10, n//10) and max(100, 20n).  time_limit_ms 0 = unlimited
    (runs bounded by a wall-clock limit are not bit-reproducible)."""

    tenure: int | None = None
    max_stall: int | None = None
    time_limit_ms: int = 0
    enable_reversal: bool = True
    seed: int = 0

    def validate(self):
        if self.tenure is not None and self.tenure < 1:
            raise ValueError("tenure must be >= 1")
        if self.max_stall is not None and self.max_stall < 1:
            raise ValueError("max_stall must be >= 1")
        if self.time_limit_ms < 0:
            raise ValueError("time_limit_ms must be >= 0")


def tour_cost(m, order):
    """Total cost of the directed cycle through `order` (closing arc included)."""
    n = m.n
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of 0..n-1")
    c = m.costs
    total = 0
    for i in range(n):
        total += int(c[order[i], order[(i + 1) % n]])
    return total


def make_tour(m, order):
    return Tour(tuple(order), tour_cost(m, order))


def nearest_neighbor(m, start=0):
    """Greedy chain from `start`: cheapest outgoing arc to an unvisited node,
    ties broken by lowest node index."""
    n = m.n
    if not 0 <= start < n:
        raise ValueError("start node out of range")
    big = np.int64(np.iinfo(np.int64).max)
    work = m.costs.copy()
    order = [start]
    work[:, start] = big
    cur = start
    for _ in range(n - 1):
        nxt = int(np.argmin(work[cur]))
        order.append(nxt)
        work[:, nxt] = big
        cur = nxt
    return make_tour(m, order)


def swap_move(t, m, i, j):
    """Exchange the nodes at positions i and j; degenerate moves return t."""
    n = len(t.order)
    _check_pos(n, i, j)
    if i == j or n == 2:
        return t
    order = list(t.order)
    order[i], order[j] = order[j], order[i]
    return make_tour(m, order)


def or_opt_move(t, m, seg_start, seg_len, insert_after):
    """Relocate the length-1..3 segment at seg_start to just after the node
    at original position insert_after, preserving arc directions."""
    n = len(t.order)
    if seg_len not in (1, 2, 3):
        raise ValueError("seg_len must be 1..3")
    if not (0 <= seg_start and seg_start + seg_len <= n):
        raise IndexError("segment out of range")
    _check_pos(n, insert_after)
    if seg_start <= insert_after <= seg_start + seg_len - 1:
        raise ValueError("insertion point overlaps the segment")
    if insert_after == (seg_start - 1) % n or seg_len >= n:
        return t
    order = list(t.order)
    seg = order[seg_start:seg_start + seg_len]
    anchor = order[insert_after]
    rest = order[:seg_start] + order[seg_start + seg_len:]
    k = rest.index(anchor)
    new_order = rest[:k + 1] + seg + rest[k + 1:]
    return make_tour(m, new_order)


def reverse_segment(t, m, i, j):
    """Reverse positions i..j inclusive (direction-sensitive in ATSP)."""
    n = len(t.order)
    _check_pos(n, i, j)
    if i > j:
        raise IndexError("segment start must not exceed segment end")
    if i == j or n == 2:
        return t
    order = list(t.order)
    order[i:j + 1] = reversed(order[i:j + 1])
    return make_tour(m, order)


def _check_pos(n, *positions):
    for p in positions:
        if not 0 <= p < n:
            raise IndexError(f"position {p} out of range for n={n}")


def _apply_move(order, kind, a, b):
    """Apply a scan_best_move result to a position list; returns a new list."""
    if kind == 0:
        out = order.copy()
        out[a], out[b] = out[b], out[a]
        return out
    if kind in (1, 2, 3):
        seg = order[a:a + kind]
        anchor = order[b]
        rest = order[:a] + order[a + kind:]
        k = rest.index(anchor)
        return rest[:k + 1] + seg + rest[k + 1:]
    if kind == 4:
        out = order.copy()
        out[a:b + 1] = reversed(out[a:b + 1])
        return out
    raise ValueError(f"unknown move kind {kind}")


def tabu_search(m, initial, params=None):
    """Improve `initial` by best-admissible-move tabu search.

    Returns (best_tour, iterations).  The incumbent never worsens; the
    search stops after max_stall non-improving iterations, on the wall-clock
    limit, or when every move is tabu without aspiration.  Deterministic for
    time_limit_ms == 0.
    """
    params = params or TabuParams()
    params.validate()
    n = m.n
    if sorted(initial.order) != list(range(n)):
        raise ValueError("initial tour is not a permutation")
    tenure = params.tenure if params.tenure is not None else max(10, n // 10)
    max_stall = params.max_stall if params.max_stall is not None else max(100, 20 * n)
    band_size = max(1, n // 10)
    n_bands = (n + band_size - 1) // band_size
    tabu_until = np.zeros((n, n_bands), dtype=np.int64)
    costs = m.costs
    order = list(initial.order)
    current = int(initial.cost)
    best_cost = current
    best_order = order.copy()
    deadline = None
    if params.time_limit_ms:
        deadline = time.monotonic() + params.time_limit_ms / 1000.0
    iteration = 0
    stall = 0
    while stall < max_stall:
        if deadline is not None and time.monotonic() >= deadline:
            break
        iteration += 1
        arr = np.asarray(order, dtype=np.int64)
        kind, a, b, delta = scan_best_move(
            costs, arr, tabu_until, band_size, iteration,
            current, best_cost, params.enable_reversal)
        if kind < 0:
            break
        _mark_tabu(tabu_until, order, kind, a, b, band_size, iteration + tenure)
        order = _apply_move(order, kind, a, b)
        current += int(delta)
        if current < best_cost:
            best_cost = current
            best_order = order.copy()
            stall = 0
        else:
            stall += 1
    return Tour(tuple(best_order), best_cost), iteration


def _mark_tabu(tabu_until, order, kind, a, b, band_size, until):
    if kind in (0, 4):
        tabu_until[order[a], a // band_size] = until
        tabu_until[order[b], b // band_size] = until
    else:
        tabu_until[order[a], a // band_size] = until


def warm_start(m, params=None):
    """Nearest-neighbor from node 0 piped into tabu search; the convenience
    composition used ahead of the exact engine."""
    tour, _ = tabu_search(m, nearest_neighbor(m, 0), params)
    return tour
