"""Multilevel balanced hypergraph partitioning.

Pipeline: pairwise coarsening by heaviest shared edge weight, multi-start
greedy placement at the coarsest level, then move-based refinement while
projecting back through the levels. Each restart runs the whole chain; the
best final assignment wins on (total overload, cut, restart index).

Every step is deterministic under the configured seed: ties break on vertex
ids, restart ordering comes from a keyed hash, and no set iteration order
leaks into decisions.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass

import numpy as np

from . import _core
from ._core import _kernels_py as _pk
from .errors import InputError
from .hypergraph import Hypergraph


@dataclass
class PartitionConfig:
    k: int
    eps_size: float = 0.10
    eps_access: float = 0.10
    seed: int = 0
    coarsen_target: int = 0  # 0 means 30*k
    fm_passes: int = 8
    restarts: int = 8

    def __post_init__(self):
        if self.k < 1:
            raise InputError("k must be at least 1")
        if self.eps_size < 0 or self.eps_access < 0:
            raise InputError("imbalance tolerances must be non-negative")
        if self.fm_passes < 1 or self.restarts < 1:
            raise InputError("fm_passes and restarts must be positive")

    def effective_coarsen_target(self) -> int:
        return self.coarsen_target if self.coarsen_target > 0 else 30 * self.k


@dataclass
class Assignment:
    parts: list[int]
    cut: int
    size_loads: list[int]
    access_loads: list[int]
    cap_size: int
    cap_access: int
    balance_ok: bool


def capacity(total: int, k: int, eps: float) -> int:
    """Per-part load cap: (1+eps) times the perfectly balanced ceiling."""
    return int((1.0 + eps) * math.ceil(total / k) + 1e-9)


def _restart_rng(seed: int, restart: int) -> random.Random:
    key = hashlib.blake2b(f"{seed}:{restart}".encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(key, "big"))


# ---------------------------------------------------------------------------
# coarsening
# ---------------------------------------------------------------------------


class _Level:
    """One graph in the coarsening hierarchy (plain arrays, no relations)."""

    def __init__(self, edges, vsize, vacc):
        self.edges = edges  # list of (vertex tuple, weight)
        self.vsize = vsize
        self.vacc = vacc
        self.fine_map = None  # fine vertex -> this level's vertex
        eptr = np.zeros(len(edges) + 1, dtype=np.int64)
        eind = np.zeros(sum(len(vs) for vs, _ in edges), dtype=np.int64)
        ew = np.zeros(len(edges), dtype=np.int64)
        pos = 0
        for e, (vs, w) in enumerate(edges):
            ew[e] = w
            for v in vs:
                eind[pos] = v
                pos += 1
            eptr[e + 1] = pos
        self.csr = (
            eptr,
            eind,
            ew,
            np.asarray(vsize, dtype=np.int64),
            np.asarray(vacc, dtype=np.int64),
        )

    @property
    def num_vertices(self):
        return len(self.vsize)


def _match_pass(level: _Level) -> list[int] | None:
    """One pass of heaviest-shared-weight pairwise matching.

    Returns fine->coarse map, or None when nothing matched.
    """
    n = level.num_vertices
    incident: list[list[int]] = [[] for _ in range(n)]
    for e, (vs, _w) in enumerate(level.edges):
        for v in vs:
            incident[v].append(e)
    mate = [-1] * n
    matched_any = False
    for v in range(n):
        if mate[v] >= 0:
            continue
        shared: dict[int, int] = {}
        for e in incident[v]:
            vs, w = level.edges[e]
            for u in vs:
                if u != v and mate[u] < 0:
                    shared[u] = shared.get(u, 0) + w
        best_u = -1
        best_w = 0
        best_comb = 0
        for u in sorted(shared):
            w = shared[u]
            comb = level.vsize[v] + level.vsize[u]
            if w > best_w or (w == best_w and (comb < best_comb or (comb == best_comb and u < best_u))):
                best_u, best_w, best_comb = u, w, comb
        if best_u >= 0:
            mate[v] = best_u
            mate[best_u] = v
            matched_any = True
    if not matched_any:
        return None
    fine_to_coarse = [-1] * n
    nxt = 0
    for v in range(n):
        if fine_to_coarse[v] >= 0:
            continue
        fine_to_coarse[v] = nxt
        if mate[v] > v:
            fine_to_coarse[mate[v]] = nxt
        nxt += 1
    return fine_to_coarse


def _contract(level: _Level, fine_to_coarse: list[int]) -> _Level:
    nc = max(fine_to_coarse) + 1
    vsize = [0] * nc
    vacc = [0] * nc
    for v in range(level.num_vertices):
        c = fine_to_coarse[v]
        vsize[c] += level.vsize[v]
        vacc[c] += level.vacc[v]
    agg: dict[tuple[int, ...], int] = {}
    for vs, w in level.edges:
        coarse = tuple(sorted({fine_to_coarse[v] for v in vs}))
        if len(coarse) < 2:
            continue  # internal to one coarse vertex; can never be cut here
        agg[coarse] = agg.get(coarse, 0) + w
    out = _Level(sorted(agg.items()), vsize, vacc)
    out.fine_map = fine_to_coarse
    return out


def _build_hierarchy(hg: Hypergraph, target: int) -> list[_Level]:
    base = _Level(list(hg.edges), list(hg.size_weights), list(hg.access_weights))
    levels = [base]
    while levels[-1].num_vertices > target:
        mapping = _match_pass(levels[-1])
        if mapping is None:
            break
        coarse = _contract(levels[-1], mapping)
        if coarse.num_vertices >= levels[-1].num_vertices:
            break
        levels.append(coarse)
    return levels


# ---------------------------------------------------------------------------
# initial placement
# ---------------------------------------------------------------------------


def _greedy_initial(level: _Level, k: int, cap_s: int, cap_a: int, rng: random.Random | None):
    """Connectivity-driven growth: fill parts one at a time from a seed.

    Each part grows by repeatedly absorbing the unassigned vertex most
    strongly connected to it (ties: heavier, then lower id) until it reaches
    the balanced share in either dimension; the last part takes the rest.
    Restarts (rng set) perturb only the seed choice.
    """
    n = level.num_vertices
    incident: list[list[int]] = [[] for _ in range(n)]
    for e, (vs, _w) in enumerate(level.edges):
        for v in vs:
            incident[v].append(e)
    total_s = sum(level.vsize)
    total_a = sum(level.vacc)
    target_s = math.ceil(total_s / k)
    target_a = math.ceil(total_a / k)
    unassigned = [True] * n
    remaining = n
    parts = [0] * n
    for p in range(k - 1):
        if remaining <= k - 1 - p:
            break  # leave at least one vertex for each later part
        pool = sorted(
            (v for v in range(n) if unassigned[v]),
            key=lambda v: (-level.vsize[v], -level.vacc[v], v),
        )
        seed = pool[0] if rng is None else pool[rng.randrange(min(len(pool), 8))]
        conn = [0] * n
        part_s = 0
        part_a = 0
        current = seed
        while True:
            parts[current] = p
            unassigned[current] = False
            remaining -= 1
            part_s += level.vsize[current]
            part_a += level.vacc[current]
            if part_s >= target_s or part_a >= target_a:
                break
            if remaining <= k - 1 - p:
                break
            for e in incident[current]:
                vs, w = level.edges[e]
                for u in vs:
                    if unassigned[u]:
                        conn[u] += w
            best = None
            for v in range(n):
                if not unassigned[v]:
                    continue
                key = (-conn[v], -level.vsize[v], -level.vacc[v], v)
                if best is None or key < best:
                    best = key
            if best is None:
                break
            current = best[3]
    last = k - 1
    for v in range(n):
        if unassigned[v]:
            parts[v] = last
    return parts


# ---------------------------------------------------------------------------
# main entry points
# ---------------------------------------------------------------------------


def _loads(hg: Hypergraph, parts, k: int):
    return hg.part_loads(parts, k)


def _overload(load_s, load_a, cap_s, cap_a) -> int:
    over = sum(max(0, x - cap_s) for x in load_s)
    over += sum(max(0, x - cap_a) for x in load_a)
    return over


def _force_balance(hg: Hypergraph, parts: list[int], k: int, cap_s: int, cap_a: int) -> None:
    """Trade cut for feasibility: overload-reducing moves of any gain.

    The kernel's rebalance phase never applies negative-gain moves (that
    keeps refinement cut-monotone for warm starts); a cold partition wants
    feasibility first, so this pass takes the least-damaging move that
    strictly shrinks total overload until none exists.
    """
    edges = hg.edges
    n = hg.num_vertices
    eptr = [0]
    eind = []
    ew = []
    for vs, w in edges:
        eind.extend(vs)
        ew.append(w)
        eptr.append(len(eind))
    pins = _pk._build_pins(eptr, eind, parts, k, len(edges))
    inc = _pk._incidence(eptr, eind, n, len(edges))
    load_s, load_a = hg.part_loads(parts, k)
    while True:
        over = _overload(load_s, load_a, cap_s, cap_a)
        if over == 0:
            break
        best = None  # (-gain, v, b)
        for v in range(n):
            a = parts[v]
            for b in range(k):
                if b == a:
                    continue
                if (
                    load_s[b] + hg.size_weights[v] > cap_s
                    or load_a[b] + hg.access_weights[v] > cap_a
                ):
                    continue
                reduced = 0
                if load_s[a] > cap_s:
                    reduced += min(hg.size_weights[v], load_s[a] - cap_s)
                if load_a[a] > cap_a:
                    reduced += min(hg.access_weights[v], load_a[a] - cap_a)
                if reduced <= 0:
                    continue
                g = _pk._move_gain(inc[v], pins, eptr, ew, a, b)
                key = (-g, v, b)
                if best is None or key < best:
                    best = key
        if best is None:
            break  # caps genuinely unachievable from here
        _g, v, b = best
        a = parts[v]
        for e in inc[v]:
            pins[e][a] -= 1
            pins[e][b] += 1
        load_s[a] -= hg.size_weights[v]
        load_a[a] -= hg.access_weights[v]
        load_s[b] += hg.size_weights[v]
        load_a[b] += hg.access_weights[v]
        parts[v] = b


def _repair_nonempty(hg: Hypergraph, parts: list[int], k: int) -> None:
    """Move cheapest vertices into empty parts (only when V >= k)."""
    counts = [0] * k
    for p in parts:
        counts[p] += 1
    for target in range(k):
        if counts[target] > 0:
            continue
        before = hg.cut_weight(parts)
        best = None  # (cut delta, vertex)
        for v in range(hg.num_vertices):
            if counts[parts[v]] < 2:
                continue
            old = parts[v]
            parts[v] = target
            delta = hg.cut_weight(parts) - before
            parts[v] = old
            if best is None or delta < best[0]:
                best = (delta, v)
        if best is not None:
            v = best[1]
            counts[parts[v]] -= 1
            parts[v] = target
            counts[target] += 1


def _finish(hg: Hypergraph, parts: list[int], k: int, cap_s: int, cap_a: int) -> Assignment:
    load_s, load_a = _loads(hg, parts, k)
    return Assignment(
        parts=list(parts),
        cut=hg.cut_weight(parts),
        size_loads=load_s,
        access_loads=load_a,
        cap_size=cap_s,
        cap_access=cap_a,
        balance_ok=all(x <= cap_s for x in load_s) and all(x <= cap_a for x in load_a),
    )


#: exhaustive initial partitioning fires below this labeling-count estimate
EXACT_SEARCH_LIMIT = 200_000


def _exact_coarsest(levels, k, cap_s, cap_a, config) -> list[int] | None:
    """Exhaustive coarsest-level search when the labeling space is tiny.

    Returns a level-0 assignment, or None when the space is too large or no
    labeling satisfies the caps (the heuristic path handles those).
    """
    coarsest = levels[-1]
    n = coarsest.num_vertices
    if n > 16 or k ** max(n - 1, 1) > EXACT_SEARCH_LIMIT:
        return None
    eptr, eind, ew, vs, va = coarsest.csr
    bal, _any_cut, bparts = _core.brute_force(eptr, eind, ew, vs, va, k, cap_s, cap_a)
    if bparts is None:
        return None
    arr = np.asarray(bparts, dtype=np.int64)
    for li in range(len(levels) - 2, -1, -1):
        fine = levels[li]
        mapping = levels[li + 1].fine_map
        projected = np.asarray(
            [arr[mapping[v]] for v in range(fine.num_vertices)], dtype=np.int64
        )
        eptr, eind, ew, vs, va = fine.csr
        _core.refine(eptr, eind, ew, vs, va, projected, k, cap_s, cap_a, config.fm_passes)
        arr = projected
    return [int(x) for x in arr]


def partition(hg: Hypergraph, config: PartitionConfig) -> Assignment:
    k = config.k
    n = hg.num_vertices
    if k > n:
        raise InputError(f"cannot split {n} tuple groups across {k} nodes")
    cap_s = capacity(sum(hg.size_weights), k, config.eps_size)
    cap_a = capacity(sum(hg.access_weights), k, config.eps_access)
    if k == 1:
        return _finish(hg, [0] * n, 1, cap_s, cap_a)

    levels = _build_hierarchy(hg, config.effective_coarsen_target())

    # tiny coarsest graphs: exhaustive search beats any heuristic start
    exact = _exact_coarsest(levels, k, cap_s, cap_a, config)
    if exact is not None:
        _repair_nonempty(hg, exact, k)
        return _finish(hg, exact, k, cap_s, cap_a)

    best: tuple[int, int, int] | None = None
    best_parts: list[int] | None = None
    for restart in range(config.restarts):
        rng = None if restart == 0 else _restart_rng(config.seed, restart)
        coarsest = levels[-1]
        parts = _greedy_initial(coarsest, k, cap_s, cap_a, rng)
        arr = np.asarray(parts, dtype=np.int64)
        eptr, eind, ew, vs, va = coarsest.csr
        _core.refine(eptr, eind, ew, vs, va, arr, k, cap_s, cap_a, config.fm_passes)
        for li in range(len(levels) - 2, -1, -1):
            fine = levels[li]
            mapping = levels[li + 1].fine_map
            projected = np.asarray([arr[mapping[v]] for v in range(fine.num_vertices)], dtype=np.int64)
            eptr, eind, ew, vs, va = fine.csr
            _core.refine(eptr, eind, ew, vs, va, projected, k, cap_s, cap_a, config.fm_passes)
            arr = projected
        cand = [int(x) for x in arr]
        load_s, load_a = _loads(hg, cand, k)
        over = _overload(load_s, load_a, cap_s, cap_a)
        if over > 0:
            _force_balance(hg, cand, k, cap_s, cap_a)
            arr2 = np.asarray(cand, dtype=np.int64)
            eptr, eind, ew, vs, va = levels[0].csr
            _core.refine(eptr, eind, ew, vs, va, arr2, k, cap_s, cap_a, config.fm_passes)
            cand = [int(x) for x in arr2]
            load_s, load_a = _loads(hg, cand, k)
            over = _overload(load_s, load_a, cap_s, cap_a)
        score = (over, hg.cut_weight(cand), restart)
        if best is None or score < best:
            best = score
            best_parts = cand
    assert best_parts is not None
    _repair_nonempty(hg, best_parts, k)
    return _finish(hg, best_parts, k, cap_s, cap_a)


def repartition(hg: Hypergraph, config: PartitionConfig, inherited: list[int]) -> Assignment:
    """Refine an inherited assignment without rebuilding from scratch.

    All applied moves have non-negative gain, so the result's cut never
    exceeds the inherited cut.
    """
    k = config.k
    n = hg.num_vertices
    if len(inherited) != n:
        raise InputError("inherited assignment length does not match the graph")
    if any(p < 0 or p >= k for p in inherited):
        raise InputError("inherited assignment references unknown node")
    cap_s = capacity(sum(hg.size_weights), k, config.eps_size)
    cap_a = capacity(sum(hg.access_weights), k, config.eps_access)
    arr = np.asarray(inherited, dtype=np.int64)
    if k > 1:
        eptr, eind, ew, vs, va = hg.csr()
        _core.refine(eptr, eind, ew, vs, va, arr, k, cap_s, cap_a, config.fm_passes)
    return _finish(hg, [int(x) for x in arr], k, cap_s, cap_a)
