# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: assignment solve, tabu neighborhood scan, brute force.

Semantics (scan order, tie-breaking, prune rules) are pinned by the
pure-Python twin in ``fallback.py``; the two must return identical values.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

FORBID = 1 << 40

cdef i64 _HUGE = <i64>1 << 62


def lap_solve(cost_obj):
    """Min-cost perfect matching with dual potentials (O(n^3) SAP)."""
    cdef const i64[:, :] c = cost_obj
    cdef Py_ssize_t n = c.shape[0]
    cdef cnp.ndarray[i64, ndim=1] u_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] v_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] minv = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] p = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] way = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] used = np.zeros(n + 1, dtype=np.uint8)
    cdef cnp.ndarray[i64, ndim=1] assign = np.empty(n, dtype=np.int64)
    cdef i64[:] u = u_arr
    cdef i64[:] v = v_arr
    cdef i64[:] mv = minv
    cdef cnp.int64_t[:] pm = p
    cdef cnp.int64_t[:] wy = way
    cdef cnp.uint8_t[:] us = used
    cdef Py_ssize_t i, j, j0, j1, i0
    cdef i64 cur, delta, ui

    for i in range(1, n + 1):
        pm[0] = i
        j0 = 0
        for j in range(n + 1):
            mv[j] = _HUGE
            us[j] = 0
        while True:
            us[j0] = 1
            i0 = pm[j0]
            delta = _HUGE
            j1 = 0
            ui = u[i0]
            for j in range(1, n + 1):
                if not us[j]:
                    cur = c[i0 - 1, j - 1] - ui - v[j]
                    if cur < mv[j]:
                        mv[j] = cur
                        wy[j] = j0
                    if mv[j] < delta:
                        delta = mv[j]
                        j1 = j
            for j in range(n + 1):
                if us[j]:
                    u[pm[j]] += delta
                    v[j] -= delta
                else:
                    mv[j] -= delta
            j0 = j1
            if pm[j0] == 0:
                break
        while True:
            j1 = wy[j0]
            pm[j0] = pm[j1]
            j0 = j1
            if j0 == 0:
                break

    for j in range(1, n + 1):
        assign[pm[j] - 1] = j - 1
    return assign, u_arr[1:].copy(), v_arr[1:].copy()


def scan_best_move(cost_obj,
                   order_obj,
                   tabu_obj,
                   Py_ssize_t band_size,
                   i64 iteration,
                   i64 current_cost,
                   i64 best_cost,
                   bint enable_reversal):
    """Best admissible tabu move; see fallback.scan_best_move for the spec."""
    cdef const i64[:, :] c = cost_obj
    cdef const i64[:] o = order_obj
    cdef const i64[:, :] tabu = tabu_obj
    cdef Py_ssize_t n = o.shape[0]
    cdef int best_kind = -1
    cdef Py_ssize_t best_a = -1, best_b = -1
    cdef i64 best_delta = _HUGE
    cdef Py_ssize_t i, j, s, t, seg_len, p_idx, q_idx, newpos
    cdef i64 x, y, a_node, b_node, cc, d_node, pb, sx, first, last, xx, yy
    cdef i64 delta, gain, fwd, bwd

    # kind 0: swaps
    if n >= 3:
        for i in range(n - 1):
            x = o[i]
            a_node = o[(i + n - 1) % n]
            b_node = o[i + 1]
            for j in range(i + 1, n):
                y = o[j]
                if j == i + 1:
                    d_node = o[(j + 1) % n]
                    delta = (c[a_node, y] + c[y, x] + c[x, d_node]
                             - c[a_node, x] - c[x, y] - c[y, d_node])
                elif i == 0 and j == n - 1:
                    pb = o[j - 1]
                    sx = o[1]
                    delta = (c[pb, x] + c[x, y] + c[y, sx]
                             - c[pb, y] - c[y, x] - c[x, sx])
                else:
                    cc = o[j - 1]
                    d_node = o[(j + 1) % n]
                    delta = (c[a_node, y] + c[y, b_node] + c[cc, x] + c[x, d_node]
                             - c[a_node, x] - c[x, b_node] - c[cc, y] - c[y, d_node])
                if delta < best_delta:
                    if (tabu[x, j // band_size] <= iteration
                            and tabu[y, i // band_size] <= iteration) \
                            or current_cost + delta < best_cost:
                        best_kind = 0
                        best_a = i
                        best_b = j
                        best_delta = delta

    # kinds 1..3: or-opt segment relocation
    for seg_len in range(1, 4):
        if n - seg_len < 2:
            break
        for s in range(n - seg_len + 1):
            p_idx = (s + n - 1) % n
            q_idx = (s + seg_len) % n
            first = o[s]
            last = o[s + seg_len - 1]
            gain = c[o[p_idx], o[q_idx]] - c[o[p_idx], first] - c[last, o[q_idx]]
            for t in range(n):
                if (s <= t and t <= s + seg_len - 1) or t == p_idx:
                    continue
                xx = o[t]
                yy = o[(t + 1) % n]
                delta = gain - c[xx, yy] + c[xx, first] + c[last, yy]
                if delta < best_delta:
                    newpos = (t if t < s else t - seg_len) + 1
                    if tabu[first, newpos // band_size] <= iteration \
                            or current_cost + delta < best_cost:
                        best_kind = <int>seg_len
                        best_a = s
                        best_b = t
                        best_delta = delta

    # kind 4: segment reversal
    if enable_reversal and n >= 3:
        for i in range(n - 1):
            x = o[i]
            a_node = o[(i + n - 1) % n]
            fwd = 0
            bwd = 0
            for j in range(i + 1, n):
                fwd += c[o[j - 1], o[j]]
                bwd += c[o[j], o[j - 1]]
                y = o[j]
                if i == 0 and j == n - 1:
                    delta = bwd + c[x, y] - fwd - c[y, x]
                else:
                    d_node = o[(j + 1) % n]
                    delta = (c[a_node, y] + bwd + c[x, d_node]
                             - c[a_node, x] - fwd - c[y, d_node])
                if delta < best_delta:
                    if (tabu[x, j // band_size] <= iteration
                            and tabu[y, i // band_size] <= iteration) \
                            or current_cost + delta < best_cost:
                        best_kind = 4
                        best_a = i
                        best_b = j
                        best_delta = delta

    if best_kind < 0:
        return -1, -1, -1, 0
    return best_kind, best_a, best_b, best_delta


cdef void _bf_rec(const i64[:, :] c, Py_ssize_t n, Py_ssize_t pos, i64 acc,
                  i64 min_off, i64* best_cost, i64[:] path, i64[:] best,
                  cnp.uint8_t[:] used):
    cdef Py_ssize_t nxt, k
    cdef i64 total, prev
    if acc + (n - pos + 1) * min_off > best_cost[0]:
        return
    if pos == n:
        total = acc + c[path[n - 1], 0]
        if total < best_cost[0]:
            best_cost[0] = total
            for k in range(n):
                best[k] = path[k]
        return
    prev = path[pos - 1]
    for nxt in range(1, n):
        if not used[nxt]:
            used[nxt] = 1
            path[pos] = nxt
            _bf_rec(c, n, pos + 1, acc + c[prev, nxt], min_off,
                    best_cost, path, best, used)
            used[nxt] = 0


def brute_force_search(cost_obj):
    """Lexicographically smallest optimal tour by exhaustive search."""
    cdef const i64[:, :] c = cost_obj
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t i, j
    cdef i64 min_off = _HUGE
    for i in range(n):
        for j in range(n):
            if i != j and c[i, j] < min_off:
                min_off = c[i, j]
    cdef cnp.ndarray[i64, ndim=1] path_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] best_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] used_arr = np.zeros(n, dtype=np.uint8)
    cdef i64[:] path = path_arr
    cdef i64[:] best = best_arr
    cdef cnp.uint8_t[:] used = used_arr
    cdef i64 best_cost = _HUGE
    used[0] = 1
    _bf_rec(c, n, 1, 0, min_off, &best_cost, path, best, used)
    return best_arr, best_cost
