# cython: language_level=3
"""Compiled kernel implementations.

Control flow, move selection, and tie-breaking mirror _kernels_py.py exactly;
the two backends must stay interchangeable. All buffers are int64.
"""

import numpy as np


cdef long long _gain(long long[::1] vptr, long long[::1] vinc,
                     long long[:, ::1] pins, long long[::1] eptr,
                     long long[::1] ew, Py_ssize_t v,
                     long long a, long long b):
    cdef long long gain = 0
    cdef Py_ssize_t ii, e
    cdef long long cnt
    for ii in range(vptr[v], vptr[v + 1]):
        e = <Py_ssize_t> vinc[ii]
        cnt = eptr[e + 1] - eptr[e]
        if cnt < 2:
            continue
        if pins[e, a] == 1 and pins[e, b] == cnt - 1:
            gain += ew[e]
        elif pins[e, a] == cnt:
            gain -= ew[e]
    return gain


def cut_weight(long long[::1] eptr, long long[::1] eind,
               long long[::1] ew, long long[::1] parts):
    """Total weight of hyperedges spanning more than one part."""
    cdef long long total = 0
    cdef Py_ssize_t e, i
    cdef long long first
    for e in range(ew.shape[0]):
        first = parts[eind[eptr[e]]]
        for i in range(eptr[e] + 1, eptr[e + 1]):
            if parts[eind[i]] != first:
                total += ew[e]
                break
    return total


def refine(long long[::1] eptr, long long[::1] eind, long long[::1] ew,
           long long[::1] vsize, long long[::1] vacc, long long[::1] parts,
           long long k, long long cap_size, long long cap_access,
           long long max_passes):
    """Move-based refinement; mutates ``parts``; returns the final cut.

    Phase A is a locked move sequence with best-prefix rollback (cut never
    increases); phase B applies gain>=0 moves that strictly shrink the total
    overload. See the pure twin for the full contract.
    """
    cdef Py_ssize_t V = vsize.shape[0]
    cdef Py_ssize_t E = ew.shape[0]
    cdef Py_ssize_t e, i, v, ii
    cdef long long a, b, g

    pins_arr = np.zeros((E if E > 0 else 1, k), dtype=np.int64)
    cdef long long[:, ::1] pins = pins_arr
    for e in range(E):
        for i in range(eptr[e], eptr[e + 1]):
            pins[e, parts[eind[i]]] += 1

    vptr_arr = np.zeros(V + 1, dtype=np.int64)
    cdef long long[::1] vptr = vptr_arr
    for i in range(eind.shape[0]):
        vptr[eind[i] + 1] += 1
    for v in range(V):
        vptr[v + 1] += vptr[v]
    vinc_arr = np.zeros(eind.shape[0] if eind.shape[0] > 0 else 1, dtype=np.int64)
    cdef long long[::1] vinc = vinc_arr
    fill_arr = np.zeros(V, dtype=np.int64)
    cdef long long[::1] fill = fill_arr
    for e in range(E):
        for i in range(eptr[e], eptr[e + 1]):
            v = <Py_ssize_t> eind[i]
            vinc[vptr[v] + fill[v]] = e
            fill[v] += 1

    loads_arr = np.zeros(2 * k, dtype=np.int64)
    cdef long long[::1] load_s = loads_arr[:k]
    cdef long long[::1] load_a = loads_arr[k:]
    for v in range(V):
        load_s[parts[v]] += vsize[v]
        load_a[parts[v]] += vacc[v]

    locked_arr = np.zeros(V, dtype=np.int64)
    cdef long long[::1] locked = locked_arr
    log_arr = np.zeros((V, 3), dtype=np.int64)
    cdef long long[:, ::1] log = log_arr

    cdef long long best_gain, best_v, best_b, best_over
    cdef long long over, reduced, new_over
    cdef long long p, cur_cut, start_cut, best_cut
    cdef Py_ssize_t log_len, best_pos, li
    cdef bint moved, first
    cdef long long _pass

    for _pass in range(max_passes):
        moved = False
        # phase A: locked move sequence with best-prefix rollback
        for v in range(V):
            locked[v] = 0
        log_len = 0
        cur_cut = cut_weight(eptr, eind, ew, parts)
        start_cut = cur_cut
        best_cut = cur_cut
        best_pos = 0
        while True:
            best_gain = 0
            best_v = -1
            best_b = -1
            first = True
            for v in range(V):
                if locked[v]:
                    continue
                a = parts[v]
                for b in range(k):
                    if b == a:
                        continue
                    if load_s[b] + vsize[v] > cap_size or load_a[b] + vacc[v] > cap_access:
                        continue
                    g = _gain(vptr, vinc, pins, eptr, ew, v, a, b)
                    if first or g > best_gain:
                        best_gain = g
                        best_v = v
                        best_b = b
                        first = False
            if best_v < 0:
                break
            a = parts[best_v]
            log[log_len, 0] = best_v
            log[log_len, 1] = a
            log[log_len, 2] = best_b
            log_len += 1
            for ii in range(vptr[best_v], vptr[best_v + 1]):
                e = <Py_ssize_t> vinc[ii]
                pins[e, a] -= 1
                pins[e, best_b] += 1
            load_s[a] -= vsize[best_v]
            load_a[a] -= vacc[best_v]
            load_s[best_b] += vsize[best_v]
            load_a[best_b] += vacc[best_v]
            parts[best_v] = best_b
            locked[best_v] = 1
            cur_cut -= best_gain
            if cur_cut < best_cut:
                best_cut = cur_cut
                best_pos = log_len
        for li in range(log_len - 1, best_pos - 1, -1):
            v = <Py_ssize_t> log[li, 0]
            a = log[li, 2]  # currently here
            b = log[li, 1]  # roll back to origin
            for ii in range(vptr[v], vptr[v + 1]):
                e = <Py_ssize_t> vinc[ii]
                pins[e, a] -= 1
                pins[e, b] += 1
            load_s[a] -= vsize[v]
            load_a[a] -= vacc[v]
            load_s[b] += vsize[v]
            load_a[b] += vacc[v]
            parts[v] = b
        if best_cut < start_cut:
            moved = True
        # phase B: overload repair with non-negative gain
        over = 0
        for p in range(k):
            if load_s[p] > cap_size:
                over += load_s[p] - cap_size
            if load_a[p] > cap_access:
                over += load_a[p] - cap_access
        while over > 0:
            best_gain = -1
            best_v = -1
            best_b = -1
            best_over = over
            for v in range(V):
                a = parts[v]
                for b in range(k):
                    if b == a:
                        continue
                    if load_s[b] + vsize[v] > cap_size or load_a[b] + vacc[v] > cap_access:
                        continue
                    g = _gain(vptr, vinc, pins, eptr, ew, v, a, b)
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
                        best_gain = g
                        best_v = v
                        best_b = b
                        best_over = new_over
            if best_v < 0:
                break
            a = parts[best_v]
            for ii in range(vptr[best_v], vptr[best_v + 1]):
                e = <Py_ssize_t> vinc[ii]
                pins[e, a] -= 1
                pins[e, best_b] += 1
            load_s[a] -= vsize[best_v]
            load_a[a] -= vacc[best_v]
            load_s[best_b] += vsize[best_v]
            load_a[best_b] += vacc[best_v]
            parts[best_v] = best_b
            moved = True
            over = 0
            for p in range(k):
                if load_s[p] > cap_size:
                    over += load_s[p] - cap_size
                if load_a[p] > cap_access:
                    over += load_a[p] - cap_access
        if not moved:
            break
    return cut_weight(eptr, eind, ew, parts)


def brute_force(long long[::1] eptr, long long[::1] eind, long long[::1] ew,
                long long[::1] vsize, long long[::1] vacc,
                long long k, long long cap_size, long long cap_access):
    """Exhaustive minimum cut over restricted-growth labelings.

    Returns (balanced_cut, any_cut, balanced_parts); -1/None when no labeling
    fits both caps.
    """
    cdef Py_ssize_t n = vsize.shape[0]
    labels_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] labels = labels_arr
    maxes_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] maxes = maxes_arr
    loads_arr = np.zeros(2 * k, dtype=np.int64)
    cdef long long[::1] ls = loads_arr[:k]
    cdef long long[::1] la = loads_arr[k:]
    cdef long long best_bal = -1
    cdef long long best_any = -1
    best_parts = None
    cdef long long cut
    cdef Py_ssize_t i, j, v
    cdef long long p, prev_max
    cdef bint ok, done

    done = False
    while not done:
        cut = cut_weight(eptr, eind, ew, labels)
        if best_any < 0 or cut < best_any:
            best_any = cut
        if best_bal < 0 or cut < best_bal:
            for p in range(k):
                ls[p] = 0
                la[p] = 0
            for v in range(n):
                ls[labels[v]] += vsize[v]
                la[labels[v]] += vacc[v]
            ok = True
            for p in range(k):
                if ls[p] > cap_size or la[p] > cap_access:
                    ok = False
                    break
            if ok:
                best_bal = cut
                best_parts = labels_arr.copy()
        # advance restricted-growth string
        i = n - 1
        done = True
        while i > 0:
            prev_max = maxes[i - 1]
            if labels[i] < min(prev_max + 1, k - 1):
                labels[i] += 1
                if labels[i] > prev_max:
                    maxes[i] = labels[i]
                else:
                    maxes[i] = prev_max
                for j in range(i + 1, n):
                    labels[j] = 0
                    maxes[j] = maxes[i]
                done = False
                break
            i -= 1
    return best_bal, best_any, best_parts
