"""Vertex splitting: rank, pick the top-k, bisect the tightest range literal.

Splitting replaces one group of tuples by two halves along the group's most
restrictive range attribute, cut at the equi-mass point of the histogram.
Hyperedges incident to the parent keep their weight and gain both children,
so any assignment that gives both children the parent's label has exactly
the old cut: the refined search space subsumes the old one.
"""

from __future__ import annotations

import math
from dataclasses import replace

from . import model
from .errors import InputError
from .hypergraph import Hypergraph
from .minterm import (
    CategoricalRegion,
    Literal,
    MinTerm,
    NumericRegion,
    _domain_region,
    _interval_mass,
    build_regions,
    region_selectivity,
    simplify,
)
from .model import Attribute, Predicate, Relation, Schema

DEFAULT_TOP_K = 20


# ---------------------------------------------------------------------------
# ranking
# ---------------------------------------------------------------------------


def rank_vertices(hg: Hypergraph, mode: str = "size") -> list[int]:
    """Vertex ids ordered by splitting priority.

    "size": descending size weight. "ratio": descending size/access, with
    never-accessed vertices first (they are free to move). Ties break toward
    the lower vertex id in both modes.
    """
    n = len(hg.size_weights)
    if mode == "size":
        return sorted(range(n), key=lambda v: (-hg.size_weights[v], v))
    if mode == "ratio":

        def ratio(v: int) -> float:
            a = hg.access_weights[v]
            return math.inf if a == 0 else hg.size_weights[v] / a

        return sorted(range(n), key=lambda v: (-ratio(v), v))
    raise InputError(f"unknown ranking mode {mode!r}")


# ---------------------------------------------------------------------------
# split-point selection
# ---------------------------------------------------------------------------


def _region_splittable(attr: Attribute, region) -> bool:
    if isinstance(region, CategoricalRegion):
        return False
    c = region.canonical()
    if c.has_eq or c.lo >= c.hi:
        return False
    return True


def _candidate_regions(m: MinTerm, relation: Relation) -> list[tuple[str, object]]:
    """Attribute regions eligible for bisection, with the universal fallback.

    A min-term's own literals define its candidate regions. A literal-free
    (universal) min-term instead offers the full domain of every numeric
    attribute; a min-term whose literals are all points stays unsplittable
    even if the relation has other, unconstrained numeric attributes.
    """
    if m.literals:
        regions = build_regions(relation, m.literals)
        if regions is None:
            return []
        return sorted(regions.items())
    out = []
    for attr in relation.attributes:
        if attr.kind != model.CATEGORICAL:
            out.append((attr.name, _domain_region(attr)))
    return sorted(out)


def _choose_split(m: MinTerm, relation: Relation) -> tuple[str, NumericRegion] | None:
    """Lowest-selectivity splittable region; ties by attribute name, then
    lower interval bound. Falls back to the largest-fraction splittable
    region when the overall lowest is a point."""
    scored = []
    for name, region in _candidate_regions(m, relation):
        attr = relation.attribute(name)
        sel = region_selectivity(attr, region)
        lo = region.canonical().lo if isinstance(region, NumericRegion) else 0.0
        scored.append((sel, name, lo, region))
    scored.sort(key=lambda t: t[:3])
    splittable = [t for t in scored if _region_splittable(relation.attribute(t[1]), t[3])]
    if not splittable:
        return None
    if _region_splittable(relation.attribute(scored[0][1]), scored[0][3]):
        _, name, _, region = scored[0]
    else:
        # the tightest region is a point: split the widest splittable one
        _, name, _, region = sorted(splittable, key=lambda t: (-t[0], t[1], t[2]))[0]
    return name, region.canonical()


def is_splittable(m: MinTerm, schema: Schema) -> bool:
    return _choose_split(m, schema.relation(m.relation)) is not None


def _excluded_below(excluded: list, x: float) -> int:
    # excluded is sorted; count of excluded points strictly below x
    lo, hi = 0, len(excluded)
    while lo < hi:
        mid = (lo + hi) // 2
        if excluded[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _integer_split_point(attr: Attribute, region: NumericRegion) -> int:
    """Smallest boundary s in (lo, hi] minimizing |mass(<s) - mass(>=s)|."""
    lo, hi = int(region.lo), int(region.hi)
    excl = sorted(region.excluded)

    def mass_left(s: int) -> float:
        m = _interval_mass(attr, lo, True, s - 1, True)
        return m - _excluded_below(excl, s) / attr.distinct

    total = mass_left(hi + 1)
    a, b = lo + 1, hi
    while a < b:
        mid = (a + b) // 2
        if 2.0 * mass_left(mid) >= total:
            b = mid
        else:
            a = mid + 1
    best = a
    if a > lo + 1:
        d_prev = abs(2.0 * mass_left(a - 1) - total)
        d_here = abs(2.0 * mass_left(a) - total)
        if d_prev <= d_here + 1e-9:
            best = a - 1
    return best


def _real_split_point(attr: Attribute, region: NumericRegion) -> float:
    """Equi-mass point of the interval under the histogram interpolation."""
    lo, hi = region.lo, region.hi

    def mass_left(x: float) -> float:
        return _interval_mass(attr, lo, region.lo_incl, x, False)

    total = _interval_mass(attr, lo, region.lo_incl, hi, region.hi_incl)
    target = total / 2.0
    a, b = lo, hi
    for _ in range(80):
        mid = (a + b) / 2.0
        if mass_left(mid) < target:
            a = mid
        else:
            b = mid
    return (a + b) / 2.0


def split_vertex(m: MinTerm, schema: Schema) -> tuple[MinTerm, MinTerm]:
    """Bisect ``m`` along its tightest range attribute.

    Children partition the parent's region: left takes values below the
    equi-mass boundary, right the rest. Sizes are the ceil/floor halves of
    the parent's size; both children keep the parent's id (callers
    renumber). Raises InputError when no literal admits an interval split.
    """
    relation = schema.relation(m.relation)
    chosen = _choose_split(m, relation)
    if chosen is None:
        raise InputError(f"min-term {m.id} of {m.relation!r} is unsplittable")
    name, region = chosen
    attr = relation.attribute(name)
    if attr.kind == model.INTEGER:
        s: object = _integer_split_point(attr, region)
    else:
        s = _real_split_point(attr, region)
    left_lits = simplify(relation, list(m.literals) + [Literal(Predicate(name, "lt", s))])
    right_lits = simplify(relation, list(m.literals) + [Literal(Predicate(name, "ge", s))])
    attrs = m.attrs if name in m.attrs else m.attrs + (name,)
    left_size = (m.size + 1) // 2
    left = replace(m, attrs=attrs, literals=left_lits, size=left_size)
    right = replace(m, attrs=attrs, literals=right_lits, size=m.size - left_size)
    return left, right


# ---------------------------------------------------------------------------
# graph refinement
# ---------------------------------------------------------------------------


def refine_graph(
    hg: Hypergraph,
    minterms: list[MinTerm],
    schema: Schema,
    top_k: int = DEFAULT_TOP_K,
    overrides: list[int] | None = None,
    rank_mode: str = "size",
) -> tuple[Hypergraph, list[MinTerm], list[int]]:
    """Split the chosen vertices; return (refined graph, min-terms, lineage).

    Without overrides the top-k ranked splittable vertices are split
    (fewer exist: split them all). With overrides, exactly the given
    vertex ids are split; unknown or unsplittable ids are rejected.
    Lineage maps each new vertex id to the old id it came from (identity
    for unsplit vertices, the parent for children).
    """
    n = len(minterms)
    if overrides is not None:
        for v in overrides:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0 or v >= n:
                raise InputError(f"unknown vertex id {v!r}")
            if not is_splittable(minterms[v], schema):
                raise InputError(f"vertex {v} is unsplittable")
        targets = sorted(set(overrides))
    else:
        targets = []
        for v in rank_vertices(hg, rank_mode):
            if len(targets) >= top_k:
                break
            if is_splittable(minterms[v], schema):
                targets.append(v)
        targets.sort()
    target_set = set(targets)

    new_minterms: list[MinTerm] = []
    parent_of: list[int] = []
    children_of: dict[int, tuple[int, int]] = {}
    for old in range(n):
        if old in target_set:
            left, right = split_vertex(minterms[old], schema)
            i = len(new_minterms)
            new_minterms.append(replace(left, id=i))
            new_minterms.append(replace(right, id=i + 1))
            children_of[old] = (i, i + 1)
            parent_of.extend([old, old])
        else:
            new_minterms.append(replace(minterms[old], id=len(new_minterms)))
            parent_of.append(old)

    # old id -> new ids (single image for unsplit vertices, pair for split)
    old_to_new: dict[int, tuple[int, ...]] = {}
    for j, old in enumerate(parent_of):
        if old not in children_of:
            old_to_new[old] = (j,)
    old_to_new.update(children_of)

    new_edges = []
    for verts, w in hg.edges:
        mapped: list[int] = []
        for v in verts:
            mapped.extend(old_to_new[v])
        new_edges.append((tuple(sorted(mapped)), w))
    new_edges.sort()

    hg2 = Hypergraph(
        size_weights=[m.size for m in new_minterms],
        access_weights=[hg.access_weights[parent_of[j]] for j in range(len(new_minterms))],
        edges=new_edges,
        singleton_edge_count=hg.singleton_edge_count,
        relation_of=[m.relation for m in new_minterms],
    )
    return hg2, new_minterms, parent_of
