"""Pure-Python kernel implementations (the fallback backend).

Kept line-for-line parallel with the compiled extension so both backends
make identical move choices. Any change here must be mirrored in
_kernels.pyx.
"""

from __future__ import annotations

import numpy as np


def cut_weight(eptr, eind, ew, parts) -> int:
    """Total weight of hyperedges spanning more than one part."""
    total = 0
    for e in range(len(ew)):
        first = parts[eind[eptr[e]]]
        for i in range(eptr[e] + 1, eptr[e + 1]):
            if parts[eind[i]] != first:
                total += ew[e]
                break
    return int(total)


def _build_pins(eptr, eind, parts, k, num_edges):
    pins = [[0] * k for _ in range(num_edges)]
    for e in range(num_edges):
        row = pins[e]
        for i in range(eptr[e], eptr[e + 1]):
            row[parts[eind[i]]] += 1
    return pins


def _incidence(eptr, eind, num_vertices, num_edges):
    inc = [[] for _ in range(num_vertices)]
    for e in range(num_edges):
        for i in range(eptr[e], eptr[e + 1]):
            inc[eind[i]].append(e)
    return inc


def _move_gain(inc_v, pins, eptr, ew, a, b):
    gain = 0
    for e in inc_v:
        cnt = eptr[e + 1] - eptr[e]
        if cnt < 2:
            continue
        row = pins[e]
        if row[a] == 1 and row[b] == cnt - 1:
            gain += ew[e]
        elif row[a] == cnt:
            gain -= ew[e]
    return gain


def refine(eptr, eind, ew, vsize, vacc, parts, k, cap_size, cap_access, max_passes) -> int:
    """Move-based refinement; mutates ``parts``; returns the final cut.

    Each pass runs two phases. Phase A is a locked move sequence: every
    vertex moves at most once per pass, the best cap-admissible move is
    applied regardless of sign (zero and negative gains let the search walk
    off plateaus), and the pass rolls back to its best-seen prefix, so the
    cut never increases. Phase B, when some part exceeds a cap, applies
    gain>=0 moves that strictly shrink the total overload without pushing
    the target over a cap. Terminates on monotone potentials plus the pass
    cap.
    """
    num_vertices = len(vsize)
    num_edges = len(ew)
    parts_out = parts
    # plain lists index much faster than array scalars in this interpreter
    eptr = [int(x) for x in eptr]
    eind = [int(x) for x in eind]
    ew = [int(x) for x in ew]
    vsize = [int(x) for x in vsize]
    vacc = [int(x) for x in vacc]
    parts = [int(x) for x in parts]
    cap_size = int(cap_size)
    cap_access = int(cap_access)
    pins = _build_pins(eptr, eind, parts, k, num_edges)
    inc = _incidence(eptr, eind, num_vertices, num_edges)
    load_s = [0] * k
    load_a = [0] * k
    for v in range(num_vertices):
        load_s[parts[v]] += vsize[v]
        load_a[parts[v]] += vacc[v]

    def apply_move(v, b):
        a = parts[v]
        for e in inc[v]:
            pins[e][a] -= 1
            pins[e][b] += 1
        load_s[a] -= vsize[v]
        load_a[a] -= vacc[v]
        load_s[b] += vsize[v]
        load_a[b] += vacc[v]
        parts[v] = b

    def overload():
        total = 0
        for p in range(k):
            if load_s[p] > cap_size:
                total += load_s[p] - cap_size
            if load_a[p] > cap_access:
                total += load_a[p] - cap_access
        return total

    for _pass in range(max_passes):
        moved = False
        # phase A: locked move sequence with best-prefix rollback
        locked = [False] * num_vertices
        log = []  # (vertex, from, to)
        cur_cut = cut_weight(eptr, eind, ew, parts)
        start_cut = cur_cut
        best_cut = cur_cut
        best_pos = 0
        while True:
            best_gain = 0
            best_v = -1
            best_b = -1
            first = True
            for v in range(num_vertices):
                if locked[v]:
                    continue
                a = parts[v]
                for b in range(k):
                    if b == a:
                        continue
                    if load_s[b] + vsize[v] > cap_size or load_a[b] + vacc[v] > cap_access:
                        continue
                    g = _move_gain(inc[v], pins, eptr, ew, a, b)
                    if first or g > best_gain:
                        best_gain, best_v, best_b, first = g, v, b, False
            if best_v < 0:
                break
            log.append((best_v, parts[best_v], best_b))
            apply_move(best_v, best_b)
            locked[best_v] = True
            cur_cut -= best_gain
            if cur_cut < best_cut:
                best_cut = cur_cut
                best_pos = len(log)
        for v, a, _b in reversed(log[best_pos:]):
            apply_move(v, a)
        if best_cut < start_cut:
            moved = True
        # phase B: overload repair with non-negative gain
        over = overload()
        while over > 0:
            best_gain = -1
            best_v = -1
            best_b = -1
            best_over = over
            for v in range(num_vertices):
                a = parts[v]
                for b in range(k):
                    if b == a:
                        continue
                    if load_s[b] + vsize[v] > cap_size or load_a[b] + vacc[v] > cap_access:
                        continue
                    g = _move_gain(inc[v], pins, eptr, ew, a, b)
                    if g < 0:
                        continue
                    reduced = 0
                    if load_s[a] > cap_size:
                        reduced += min(vsize[v], load_s[a] - cap_size)
                    if load_a[a] > cap_access:
                        reduced += min(vacc[v], load_a[a] - cap_access)
                    if reduced <= 0:
                        continue
                    new_over = over - reduced
                    if g > best_gain or (g == best_gain and new_over < best_over):
                        best_gain, best_v, best_b, best_over = g, v, b, new_over
            if best_v < 0:
                break
            apply_move(best_v, best_b)
            moved = True
            over = overload()
        if not moved:
            break
    for v in range(num_vertices):
        parts_out[v] = parts[v]
    return cut_weight(eptr, eind, ew, parts)


def brute_force(eptr, eind, ew, vsize, vacc, k, cap_size, cap_access):
    """Exhaustive minimum cut over restricted-growth labelings.

    Returns (balanced_cut, any_cut, balanced_parts). balanced_cut is -1 and
    balanced_parts is None when no labeling fits both caps. Label symmetry is
    broken by restricted growth (label[i] <= max(label[:i]) + 1), which is
    exact because every part shares the same caps.
    """
    n = len(vsize)
    labels = np.zeros(n, dtype=np.int64)
    best_bal = -1
    best_any = -1
    best_parts = None
    maxes = np.zeros(n, dtype=np.int64)  # max label among 0..i

    def loads_ok():
        ls = [0] * k
        la = [0] * k
        for v in range(n):
            ls[labels[v]] += vsize[v]
            la[labels[v]] += vacc[v]
        return all(s <= cap_size for s in ls) and all(a <= cap_access for a in la)

    while True:
        cut = cut_weight(eptr, eind, ew, labels)
        if best_any < 0 or cut < best_any:
            best_any = cut
        if (best_bal < 0 or cut < best_bal) and loads_ok():
            best_bal = cut
            best_parts = labels.copy()
        # advance restricted-growth string
        i = n - 1
        while i > 0:
            prev_max = maxes[i - 1]
            if labels[i] < min(prev_max + 1, k - 1):
                labels[i] += 1
                maxes[i] = max(prev_max, labels[i])
                for j in range(i + 1, n):
                    labels[j] = 0
                    maxes[j] = maxes[i]
                break
            i -= 1
        else:
            break
    return best_bal, best_any, best_parts
