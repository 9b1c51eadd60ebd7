"""Exact ATSP solving: best-first branch-and-bound on the assignment
relaxation, with subtours eliminated lazily by branching on the arcs of a
violated cycle (Carpaneto-Toth style).  No LP solver involved: the bound at
every node is a Hungarian assignment solve with dual certificates, and the
search is warm-started by a heuristic incumbent.
"""

import hashlib
import heapq
import json
import time
from dataclasses import dataclass, replace

import numpy as np

from ._kernels import FORBID, lap_solve
from .heuristic import Tour, nearest_neighbor, tour_cost

# Real costs must stay well below FORBID so dual updates cannot overflow.
_MAX_COST = 1 << 39


class AssignmentInfeasibleError(Exception):
    """No perfect matching under the current arc constraints; prune."""


@dataclass(frozen=True)
class ApSolution:
    """Assignment-relaxation optimum with dual potentials.

    assignment[i] is the successor of node i (a derangement, possibly with
    several cycles).  bound equals both the matched-cost sum and the
    potential sum (strong duality)."""

    assignment: tuple
    row_potentials: tuple
    col_potentials: tuple
    bound: int


@dataclass(frozen=True)
class BnbNode:
    """Arc constraints of one search node: forbidden and forced arcs."""

    excluded: frozenset
    included: frozenset
    lower_bound: int = 0
    depth: int = 0


@dataclass(frozen=True)
class SolveReport:
    """Recorded evidence of one exact solve.  Wall time is excluded from the
    determinism hash; every other field is bit-reproducible."""

    tour: Tour
    optimal_cost: int
    lower_bound_at_end: int
    gap_percent: float
    bnb_nodes_explored: int
    ap_resolves: int
    warm_start_cost: int
    wall_time_ms: int
    deterministic_fields_hash: str

    @property
    def optimal(self):
        return self.gap_percent == 0.0

    def to_json(self):
        return json.dumps({
            "tour_order": list(self.tour.order),
            "optimal_cost": int(self.optimal_cost),
            "lower_bound_at_end": int(self.lower_bound_at_end),
            "gap_percent": self.gap_percent,
            "bnb_nodes_explored": self.bnb_nodes_explored,
            "ap_resolves": self.ap_resolves,
            "warm_start_cost": int(self.warm_start_cost),
            "wall_time_ms": self.wall_time_ms,
            "deterministic_fields_hash": self.deterministic_fields_hash,
        })


def _fields_hash(order, optimal_cost, lb, gap, nodes, resolves, warm_cost):
    payload = json.dumps([list(order), int(optimal_cost), int(lb), repr(gap),
                          nodes, resolves, int(warm_cost)])
    return hashlib.sha256(payload.encode()).hexdigest()


def hungarian(m, excluded=frozenset(), included=frozenset()):
    """Minimum-cost assignment honoring forced and forbidden arcs.

    Forced arcs are pre-assigned (they leave the Hungarian subproblem);
    forbidden arcs and the diagonal get the FORBID cost.  Raises
    AssignmentInfeasibleError when no derangement satisfies the constraints.
    """
    n = m.n
    costs = m.costs
    if int(costs.max()) >= _MAX_COST:
        raise ValueError("cost magnitudes too large for the assignment kernel")
    forced = {}
    taken = {}
    for (i, j) in included:
        if i == j or i in forced or j in taken or (i, j) in excluded:
            raise AssignmentInfeasibleError("conflicting forced arcs")
        forced[i] = j
        taken[j] = i
    free_rows = [i for i in range(n) if i not in forced]
    free_cols = [j for j in range(n) if j not in taken]
    sigma = [0] * n
    row_pot = [0] * n
    col_pot = [0] * n
    for i, j in forced.items():
        sigma[i] = j
        row_pot[i] = int(costs[i, j])
        col_pot[j] = 0
    if free_rows:
        fr = np.asarray(free_rows)
        fc = np.asarray(free_cols)
        sub = costs[np.ix_(fr, fc)].copy()
        sub[fr[:, None] == fc[None, :]] = FORBID
        if excluded:
            col_index = {j: k for k, j in enumerate(free_cols)}
            row_index = {i: k for k, i in enumerate(free_rows)}
            for (i, j) in excluded:
                ri = row_index.get(i)
                cj = col_index.get(j)
                if ri is not None and cj is not None:
                    sub[ri, cj] = FORBID
        assign, u, v = lap_solve(sub)
        k = len(free_rows)
        for r in range(k):
            if int(sub[r, assign[r]]) >= FORBID:
                raise AssignmentInfeasibleError("a node has no permitted arc left")
        for r in range(k):
            sigma[free_rows[r]] = free_cols[int(assign[r])]
            row_pot[free_rows[r]] = int(u[r])
        for cidx, j in enumerate(free_cols):
            col_pot[j] = int(v[cidx])
    bound = int(sum(int(costs[i, sigma[i]]) for i in range(n)))
    return ApSolution(tuple(sigma), tuple(row_pot), tuple(col_pot), bound)


def cycles(assignment):
    """Orbit decomposition of a successor map: each cycle starts at its
    minimum node, cycles ordered by minimum node."""
    n = len(assignment)
    if sorted(assignment) != list(range(n)):
        raise ValueError("assignment is not a permutation")
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i]:
            cyc = [i]
            seen[i] = True
            j = assignment[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = assignment[j]
            out.append(cyc)
    return out


def branch(node, subtour):
    """Carpaneto-Toth subtour branching.

    For the subtour's arcs (a_1 .. a_k), child t forbids a_t and forces
    a_1 .. a_{t-1}.  The children's feasible sets jointly cover every tour
    feasible at the parent, so no optimum is lost."""
    k = len(subtour)
    arcs = [(subtour[t], subtour[(t + 1) % k]) for t in range(k)]
    children = []
    for t in range(k):
        children.append(BnbNode(
            excluded=node.excluded | {arcs[t]},
            included=node.included | set(arcs[:t]),
            lower_bound=node.lower_bound,
            depth=node.depth + 1,
        ))
    return children


def gap_percent(ub, lb):
    """Solver-convention optimality gap: 100 * (ub - lb) / ub."""
    if ub == 0:
        raise ValueError("upper bound must be positive")
    if not ub >= lb >= 0:
        raise ValueError("need ub >= lb >= 0")
    return 100.0 * (ub - lb) / ub


def heuristic_gap_percent(heuristic_cost, optimal_cost):
    """Heuristic-quality gap: 100 * (heur - opt) / opt (note the denominator)."""
    if optimal_cost <= 0:
        raise ValueError("optimal cost must be positive")
    return 100.0 * (heuristic_cost - optimal_cost) / optimal_cost


def solve_exact(m, warm=None, time_limit_ms=0, node_limit=0, progress=None):
    """Prove optimality by best-first branch-and-bound.

    Priority is the assignment lower bound, ties by node creation order.
    The incumbent starts at `warm` (or a nearest-neighbor tour).  A node is
    pruned when its bound reaches the incumbent cost; an integral
    single-cycle assignment becomes a candidate incumbent.  With no limits
    the result is provably optimal (gap 0); otherwise the best incumbent and
    the final bound are reported.  Fully deterministic given its inputs.
    """
    t0 = time.monotonic()
    if warm is None:
        warm = nearest_neighbor(m, 0)
    else:
        if tour_cost(m, list(warm.order)) != warm.cost:
            raise ValueError("warm tour cost does not match the matrix")
    incumbent = warm.canonical()
    inc_cost = int(warm.cost)
    warm_cost = int(warm.cost)
    nodes_explored = 0
    ap_resolves = 0
    counter = 0
    root = BnbNode(frozenset(), frozenset())
    root_ap = hungarian(m)
    ap_resolves += 1
    nodes_explored += 1  # a node counts as explored once its AP is solved
    heap = [(root_ap.bound, counter, replace(root, lower_bound=root_ap.bound), root_ap)]
    proven = False
    deadline = t0 + time_limit_ms / 1000.0 if time_limit_ms else None

    while heap:
        if deadline is not None and time.monotonic() >= deadline:
            break
        if node_limit and nodes_explored >= node_limit:
            break
        if heap[0][0] >= inc_cost:
            proven = True
            break
        bound, _, node, ap = heapq.heappop(heap)
        cycs = cycles(ap.assignment)
        if len(cycs) == 1:
            if ap.bound < inc_cost:
                inc_cost = ap.bound
                order = [0]
                j = ap.assignment[0]
                while j != 0:
                    order.append(j)
                    j = ap.assignment[j]
                incumbent = Tour(tuple(order), inc_cost)
                if progress:
                    progress({"event": "incumbent", "nodes": nodes_explored,
                              "incumbent": inc_cost, "bound": bound})
            continue
        subtour = min(cycs, key=len)
        for child in branch(node, subtour):
            try:
                child_ap = hungarian(m, child.excluded, child.included)
            except AssignmentInfeasibleError:
                ap_resolves += 1
                continue
            ap_resolves += 1
            nodes_explored += 1
            if child_ap.bound < inc_cost:
                counter += 1
                heapq.heappush(heap, (child_ap.bound, counter,
                                      replace(child, lower_bound=child_ap.bound),
                                      child_ap))
        if progress:
            progress({"event": "node", "nodes": nodes_explored,
                      "incumbent": inc_cost,
                      "bound": heap[0][0] if heap else inc_cost})

    if not heap:
        proven = True
    lb_end = inc_cost if proven else min(inc_cost, heap[0][0])
    gap = gap_percent(inc_cost, lb_end)
    wall_ms = int(round((time.monotonic() - t0) * 1000.0))
    digest = _fields_hash(incumbent.order, inc_cost, lb_end, gap,
                          nodes_explored, ap_resolves, warm_cost)
    return SolveReport(
        tour=incumbent,
        optimal_cost=inc_cost,
        lower_bound_at_end=lb_end,
        gap_percent=gap,
        bnb_nodes_explored=nodes_explored,
        ap_resolves=ap_resolves,
        warm_start_cost=warm_cost,
        wall_time_ms=wall_ms,
        deterministic_fields_hash=digest,
    )
