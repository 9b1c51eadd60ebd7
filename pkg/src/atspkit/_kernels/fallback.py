"""Pure-Python implementations of the hot kernels.

These mirror the compiled extension (``_core``) exactly: same algorithms,
same scan orders, same tie-breaking.  They exist so the package works
without a C toolchain; the compiled module is preferred at import time.
Outputs must be bit-identical between the two implementations.
"""

import numpy as np

# Arc costs at or above this value are treated as forbidden.  Large enough
# that no feasible matching ever touches one, small enough that dual updates
# cannot overflow int64 even at n = 5000.
FORBID = 1 << 40

_HUGE = 1 << 62


def lap_solve(cost):
    """Minimum-cost perfect matching on a dense square int64 matrix.

    Shortest-augmenting-path method with dual potentials (the classic
    O(n^3) formulation).  Entries >= FORBID act as forbidden arcs; the
    caller checks whether any matched arc is forbidden (=> infeasible).

    Returns (assign, u, v) where assign[i] is the column matched to row i
    and u, v are integer potentials with u[i] + v[j] <= cost[i][j] on every
    arc and equality on matched arcs.
    """
    n = cost.shape[0]
    c = cost.tolist()
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j] = row matched to column j (1-based, 0 = free)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [_HUGE] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = _HUGE
            j1 = 0
            row = c[i0 - 1]
            ui = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign, np.array(u[1:], dtype=np.int64), np.array(v[1:], dtype=np.int64)


def scan_best_move(cost, order, tabu_until, band_size, iteration,
                   current_cost, best_cost, enable_reversal):
    """Best admissible move over the tabu-search neighborhood.

    Move kinds, scanned in this order with ascending indices:
      0         swap of the nodes at positions (a, b), a < b
      1, 2, 3   or-opt: relocate the segment of length `kind` starting at
                position a to just after the node at original position b
      4         reversal of positions a..b inclusive (only if enabled)

    A move is tabu when a moved attribute node would land in a
    (node, position-band) cell still held by `tabu_until`; aspiration
    admits it anyway if it improves on `best_cost`.  Ties keep the first
    move found.  Returns (kind, a, b, delta); kind == -1 when no move is
    admissible.
    """
    n = len(order)
    c = cost.tolist()
    o = order.tolist()
    tabu = tabu_until.tolist()
    best_kind = -1
    best_a = -1
    best_b = -1
    best_delta = _HUGE

    def admissible(delta, attrs):
        for node, newpos in attrs:
            if tabu[node][newpos // band_size] > iteration:
                return current_cost + delta < best_cost
        return True

    # kind 0: swaps
    if n >= 3:
        for i in range(n - 1):
            x = o[i]
            a_node = o[(i - 1) % n]
            b_node = o[i + 1]
            for j in range(i + 1, n):
                y = o[j]
                if j == i + 1:
                    d_node = o[(j + 1) % n]
                    delta = (c[a_node][y] + c[y][x] + c[x][d_node]
                             - c[a_node][x] - c[x][y] - c[y][d_node])
                elif i == 0 and j == n - 1:
                    pb = o[j - 1]
                    sx = o[1]
                    delta = (c[pb][x] + c[x][y] + c[y][sx]
                             - c[pb][y] - c[y][x] - c[x][sx])
                else:
                    cc = o[j - 1]
                    d_node = o[(j + 1) % n]
                    delta = (c[a_node][y] + c[y][b_node] + c[cc][x] + c[x][d_node]
                             - c[a_node][x] - c[x][b_node] - c[cc][y] - c[y][d_node])
                if delta < best_delta and admissible(delta, ((x, j), (y, i))):
                    best_kind, best_a, best_b, best_delta = 0, i, j, delta

    # kinds 1..3: or-opt segment relocation
    for seg_len in (1, 2, 3):
        if n - seg_len < 2:
            break
        for s in range(n - seg_len + 1):
            p = (s - 1) % n
            q = (s + seg_len) % n
            first = o[s]
            last = o[s + seg_len - 1]
            gain = c[o[p]][o[q]] - c[o[p]][first] - c[last][o[q]]
            for t in range(n):
                if s <= t <= s + seg_len - 1 or t == p:
                    continue
                xx = o[t]
                yy = o[(t + 1) % n]
                delta = gain - c[xx][yy] + c[xx][first] + c[last][yy]
                if delta < best_delta:
                    newpos = (t if t < s else t - seg_len) + 1
                    if admissible(delta, ((first, newpos),)):
                        best_kind, best_a, best_b, best_delta = seg_len, s, t, delta

    # kind 4: segment reversal
    if enable_reversal and n >= 3:
        for i in range(n - 1):
            x = o[i]
            a_node = o[(i - 1) % n]
            fwd = 0
            bwd = 0
            for j in range(i + 1, n):
                fwd += c[o[j - 1]][o[j]]
                bwd += c[o[j]][o[j - 1]]
                y = o[j]
                if i == 0 and j == n - 1:
                    delta = bwd + c[x][y] - fwd - c[y][x]
                else:
                    d_node = o[(j + 1) % n]
                    delta = (c[a_node][y] + bwd + c[x][d_node]
                             - c[a_node][x] - fwd - c[y][d_node])
                if delta < best_delta and admissible(delta, ((x, j), (y, i))):
                    best_kind, best_a, best_b, best_delta = 4, i, j, delta

    if best_kind < 0:
        return -1, -1, -1, 0
    return best_kind, best_a, best_b, best_delta


def brute_force_search(cost):
    """Exhaustive tour search; returns the lexicographically smallest
    optimal order (node 0 fixed first) and its cost.

    Depth-first in ascending node order with a safe lower-bound prune
    (strict >, so cost ties are never cut and the lex-smallest optimum
    survives).
    """
    n = cost.shape[0]
    c = cost.tolist()
    min_off = min(c[i][j] for i in range(n) for j in range(n) if i != j)
    best_cost = _HUGE
    best = None
    path = [0] * n
    used = [False] * n
    used[0] = True

    def rec(pos, acc):
        nonlocal best_cost, best
        if acc + (n - pos + 1) * min_off > best_cost:
            return
        if pos == n:
            total = acc + c[path[n - 1]][0]
            if total < best_cost:
                best_cost = total
                best = path.copy()
            return
        prev = path[pos - 1]
        for nxt in range(1, n):
            if not used[nxt]:
                used[nxt] = True
                path[pos] = nxt
                rec(pos + 1, acc + c[prev][nxt])
                used[nxt] = False

    rec(1, 0)
    return np.array(best, dtype=np.int64), best_cost
