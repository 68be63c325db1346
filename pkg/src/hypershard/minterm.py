"""Min-term predicate algebra.

A min-term over a set of simple predicates is a conjunction taking every
predicate in either natural or negated form. Satisfiable min-terms partition
the attribute space of a relation into disjoint tuple groups; those groups are
the vertices of the access hypergraph and the rows of the routing table.

The algebra is implemented per attribute: every satisfiable conjunction
collapses to one region per attribute (an interval plus excluded points for
numeric attributes, an include/exclude set for categorical ones). Integer
attributes are normalized to closed integer bounds, so `A > 5` and `A >= 6`
describe the same region.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import model
from .errors import PredicateCapError
from .model import Attribute, Predicate, Relation, Schema, Workload

#: hard cap on distinct predicates per relation; 2^n min-term candidates
PREDICATE_CAP = 12
#: attributes kept per relation (the most accessed ones)
DEFAULT_TOP_ATTRS = 2

_NEGATION = {"eq": "ne", "ne": "eq", "lt": "ge", "ge": "lt", "gt": "le", "le": "gt"}
_OP_ORDER = {op: i for i, op in enumerate(model.OPS)}


@dataclass(frozen=True)
class Literal:
    """A predicate in natural (negated=False) or negated form."""

    predicate: Predicate
    negated: bool = False

    def effective(self) -> tuple[str, object]:
        """Operator/constant after folding the negation into the operator."""
        op = self.predicate.op
        return (_NEGATION[op] if self.negated else op), self.predicate.value


@dataclass
class MinTerm:
    id: int
    relation: str
    attrs: tuple[str, ...]  # attribute universe the literals are interpreted over
    literals: tuple[Literal, ...]
    size: int  # estimated tuple count


# ---------------------------------------------------------------------------
# per-attribute regions
# ---------------------------------------------------------------------------


@dataclass
class NumericRegion:
    kind: str  # model.INTEGER or model.REAL
    distinct: int
    lo: float
    lo_incl: bool
    hi: float
    hi_incl: bool
    excluded: frozenset = field(default_factory=frozenset)
    has_eq: bool = False  # an equality literal pinned this region to a point

    def canonical(self) -> "NumericRegion":
        """Normalize so equal regions compare equal."""
        lo, lo_incl, hi, hi_incl = self.lo, self.lo_incl, self.hi, self.hi_incl
        excluded = set(self.excluded)
        if self.kind == model.INTEGER:
            # integer bounds are always closed ints after construction
            changed = True
            while changed:
                changed = False
                if lo in excluded and lo <= hi:
                    excluded.discard(lo)
                    lo += 1
                    changed = True
                if hi in excluded and lo <= hi:
                    excluded.discard(hi)
                    hi -= 1
                    changed = True
            excluded = {v for v in excluded if lo < v < hi}
        else:
            if lo in excluded:
                excluded.discard(lo)
                lo_incl = False
            if hi in excluded:
                excluded.discard(hi)
                hi_incl = False
            excluded = {v for v in excluded if lo < v < hi}
        return NumericRegion(
            self.kind, self.distinct, lo, lo_incl, hi, hi_incl, frozenset(excluded), self.has_eq
        )

    def empty(self) -> bool:
        c = self.canonical()
        if c.lo > c.hi:
            return True
        if c.lo == c.hi:
            return not (c.lo_incl and c.hi_incl)
        if self.kind == model.INTEGER:
            return (c.hi - c.lo + 1) <= len(c.excluded)
        return False

    def key(self):
        c = self.canonical()
        return (c.lo, c.lo_incl, c.hi, c.hi_incl, tuple(sorted(c.excluded)))


@dataclass
class CategoricalRegion:
    distinct: int
    required: object | None = None
    excluded: frozenset = field(default_factory=frozenset)
    impossible: bool = False  # two equality literals on different constants

    def empty(self) -> bool:
        if self.impossible:
            return True
        if self.required is not None:
            return self.required in self.excluded
        return len(self.excluded) >= self.distinct

    def key(self):
        if self.required is not None and self.required not in self.excluded:
            return ("req", self.required)
        return ("exc", tuple(sorted(self.excluded)))


def _domain_region(attr: Attribute) -> NumericRegion | CategoricalRegion:
    if attr.kind == model.CATEGORICAL:
        return CategoricalRegion(distinct=attr.distinct)
    return NumericRegion(
        kind=attr.kind,
        distinct=attr.distinct,
        lo=attr.min,
        lo_incl=True,
        hi=attr.max,
        hi_incl=True,
    )


def _apply(region, attr: Attribute, op: str, value) -> None:
    """Intersect ``region`` with ``attr op value`` in place."""
    if isinstance(region, CategoricalRegion):
        if op == "eq":
            if region.required is None:
                region.required = value
            elif region.required != value:
                region.impossible = True
        elif op == "ne":
            region.excluded = region.excluded | {value}
        return
    if region.kind == model.INTEGER:
        if op == "eq":
            region.lo = max(region.lo, value)
            region.hi = min(region.hi, value)
            region.has_eq = True
        elif op == "ne":
            region.excluded = region.excluded | {value}
        elif op == "lt":
            region.hi = min(region.hi, value - 1)
        elif op == "le":
            region.hi = min(region.hi, value)
        elif op == "gt":
            region.lo = max(region.lo, value + 1)
        elif op == "ge":
            region.lo = max(region.lo, value)
        return
    # real
    if op == "eq":
        inside = (region.lo < value or (region.lo == value and region.lo_incl)) and (
            value < region.hi or (value == region.hi and region.hi_incl)
        )
        region.lo = region.hi = value
        region.lo_incl = region.hi_incl = inside
        region.has_eq = True
    elif op == "ne":
        region.excluded = region.excluded | {value}
    elif op == "lt":
        if value < region.hi:
            region.hi, region.hi_incl = value, False
        elif value == region.hi:
            region.hi_incl = False
    elif op == "le":
        if value < region.hi:
            region.hi, region.hi_incl = value, True
    elif op == "gt":
        if value > region.lo:
            region.lo, region.lo_incl = value, False
        elif value == region.lo:
            region.lo_incl = False
    elif op == "ge":
        if value > region.lo:
            region.lo, region.lo_incl = value, True


def build_regions(relation: Relation, literals) -> dict[str, object] | None:
    """Collapse literals to one region per attribute; None when contradictory."""
    regions: dict[str, object] = {}
    for lit in literals:
        attr = relation.attribute(lit.predicate.attr)
        region = regions.get(attr.name)
        if region is None:
            region = _domain_region(attr)
            regions[attr.name] = region
        op, value = lit.effective()
        _apply(region, attr, op, value)
    for region in regions.values():
        if region.empty():
            return None
    return regions


def satisfiable(relation: Relation, literals) -> bool:
    return build_regions(relation, literals) is not None


def _value_sort_key(value) -> tuple:
    if isinstance(value, bool):  # excluded by validation, but stay total
        return (2, str(value))
    if isinstance(value, (int, float)):
        return (0, float(value))
    return (1, str(value))


def literal_sort_key(lit: Literal) -> tuple:
    return (
        lit.predicate.attr,
        _value_sort_key(lit.predicate.value),
        _OP_ORDER[lit.predicate.op],
        lit.negated,
    )


def _region_fingerprint(relation: Relation, literals) -> tuple | None:
    regions = build_regions(relation, literals)
    if regions is None:
        return None
    out = []
    for name, region in regions.items():
        # an attribute constrained to its whole domain is unconstrained
        if region.key() == _domain_region(relation.attribute(name)).key():
            continue
        out.append((name, region.key()))
    return tuple(sorted(out))


def simplify(relation: Relation, literals) -> tuple[Literal, ...]:
    """Drop literals whose removal leaves the region unchanged.

    The result is canonically ordered; every kept literal is load-bearing
    (removing it strictly enlarges the region). Raises on contradictions.
    """
    current = sorted(set(literals), key=literal_sort_key)
    fp = _region_fingerprint(relation, current)
    if fp is None:
        raise ValueError("cannot simplify an unsatisfiable conjunction")
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            trial = current[:i] + current[i + 1:]
            if _region_fingerprint(relation, trial) == fp:
                current = trial
                changed = True
                break
    return tuple(current)


# ---------------------------------------------------------------------------
# region selectivity and size estimation
# ---------------------------------------------------------------------------


def _interval_mass(attr: Attribute, lo: float, lo_incl: bool, hi: float, hi_incl: bool) -> float:
    below_hi = model._mass_below(attr, hi, inclusive=hi_incl)
    below_lo = model._mass_below(attr, lo, inclusive=not lo_incl)
    return max(below_hi - below_lo, 0.0)


def region_selectivity(attr: Attribute, region) -> float:
    """Estimated fraction of rows falling in ``region``."""
    if isinstance(region, CategoricalRegion):
        if region.empty():
            return 0.0
        if region.required is not None:
            return min(max(1.0 / region.distinct, 0.0), 1.0)
        return min(max(1.0 - len(region.excluded) / region.distinct, 0.0), 1.0)
    if region.empty():
        return 0.0
    c = region.canonical()
    if c.lo == c.hi:
        # a single point: equality literals use the 1/distinct convention,
        # degenerate range intersections fall back to interval mass
        if c.has_eq:
            return min(1.0 / attr.distinct, 1.0)
        if attr.kind == model.INTEGER:
            return min(max(_interval_mass(attr, c.lo, True, c.hi, True), 0.0), 1.0)
        return 0.0
    mass = _interval_mass(attr, c.lo, c.lo_incl, c.hi, c.hi_incl)
    mass -= len(c.excluded) / attr.distinct
    return min(max(mass, 0.0), 1.0)


def estimate_size(relation: Relation, literals) -> int:
    """Cardinality share of the conjunction, assuming attribute independence.

    Rounded half-up; zero-sized groups are retained (callers keep them).
    """
    regions = build_regions(relation, literals)
    if regions is None:
        return 0
    sel = 1.0
    for name, region in regions.items():
        sel *= region_selectivity(relation.attribute(name), region)
    return int(math.floor(relation.cardinality * sel + 0.5))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _collect_predicates(
    workload: Workload, relation: Relation, attrs: tuple[str, ...]
) -> list[tuple[Predicate, int]]:
    """Distinct predicates on ``attrs`` with their statement frequencies."""
    counts: dict[Predicate, int] = {}
    for t in workload.transactions:
        for s in t.statements:
            if s.relation != relation.name:
                continue
            for p in set(s.predicates):
                if p.attr in attrs:
                    counts[p] = counts.get(p, 0) + 1
    preds = sorted(
        counts,
        key=lambda p: (p.attr, _value_sort_key(p.value), _OP_ORDER[p.op]),
    )
    return [(p, counts[p]) for p in preds]


def relation_minterms(
    schema: Schema,
    workload: Workload,
    relation_name: str,
    top_attrs: int = DEFAULT_TOP_ATTRS,
    predicate_cap: int = PREDICATE_CAP,
) -> list[tuple[tuple[str, ...], tuple[Literal, ...], int]]:
    """Enumerate satisfiable, simplified min-terms for one relation.

    Returns (attr-universe, literals, size) triples in deterministic order.
    The most-accessed ``top_attrs`` attributes participate; the distinct
    predicates on them are capped at ``predicate_cap`` (most frequent kept,
    ties broken canonically).
    """
    relation = schema.relation(relation_name)
    ranking = model.attribute_access_ranking(workload, relation_name)
    attrs = tuple(ranking[:top_attrs])
    preds = _collect_predicates(workload, relation, attrs)
    if len(preds) > predicate_cap:
        keep = sorted(
            preds,
            key=lambda pc: (
                -pc[1],
                pc[0].attr,
                _value_sort_key(pc[0].value),
                _OP_ORDER[pc[0].op],
            ),
        )[:predicate_cap]
        kept_set = {p for p, _ in keep}
        preds = [(p, c) for p, c in preds if p in kept_set]
    n = len(preds)
    if n > 20:
        raise PredicateCapError(relation_name, n, predicate_cap)
    out = []
    plist = [p for p, _ in preds]
    for mask in range(1 << n):
        literals = tuple(
            Literal(plist[i], negated=bool(mask >> i & 1)) for i in range(n)
        )
        if not satisfiable(relation, literals):
            continue
        simplified = simplify(relation, literals)
        out.append((attrs, simplified, estimate_size(relation, simplified)))
    return out


def enumerate_minterms(
    schema: Schema,
    workload: Workload,
    top_attrs: int = DEFAULT_TOP_ATTRS,
    predicate_cap: int = PREDICATE_CAP,
) -> list[MinTerm]:
    """All relations' min-terms with dense global ids (relation name order)."""
    minterms: list[MinTerm] = []
    for relation in sorted(schema.relations, key=lambda r: r.name):
        for attrs, literals, size in relation_minterms(
            schema, workload, relation.name, top_attrs, predicate_cap
        ):
            minterms.append(MinTerm(len(minterms), relation.name, attrs, literals, size))
    return minterms


# ---------------------------------------------------------------------------
# transaction access
# ---------------------------------------------------------------------------


def statement_consistent(relation: Relation, minterm: MinTerm, statement) -> bool:
    """True when the statement's restriction can touch the min-term's group.

    Only predicates on the min-term's attribute universe constrain the check;
    a statement with no such predicates conservatively touches every group.
    """
    extra = [
        Literal(p) for p in statement.predicates if p.attr in minterm.attrs
    ]
    if not extra:
        return True
    return satisfiable(relation, list(minterm.literals) + extra)


@dataclass
class AccessList:
    """Which min-terms each transaction touches, plus per-min-term counts."""

    txn_accesses: list[tuple[object, tuple[int, ...]]]  # (txn id, sorted minterm ids)
    counts: dict[int, int]
    full_scan_statements: int  # statements with no predicate on the attr universe


def compute_access(schema: Schema, minterms: list[MinTerm], workload: Workload) -> AccessList:
    by_relation: dict[str, list[MinTerm]] = {}
    for m in minterms:
        by_relation.setdefault(m.relation, []).append(m)
    txn_accesses = []
    counts: dict[int, int] = {m.id: 0 for m in minterms}
    full_scan = 0
    for t in workload.transactions:
        touched: set[int] = set()
        for s in t.statements:
            group = by_relation.get(s.relation, ())
            relation = schema.relation(s.relation)
            scoped = False
            for m in group:
                if any(p.attr in m.attrs for p in s.predicates):
                    scoped = True
                if statement_consistent(relation, m, s):
                    touched.add(m.id)
            if group and not scoped:
                full_scan += 1
        ordered = tuple(sorted(touched))
        txn_accesses.append((t.id, ordered))
        for mid in ordered:
            counts[mid] += 1
    return AccessList(txn_accesses, counts, full_scan)


# ---------------------------------------------------------------------------
# serialization (diagnostic dump + shared literal codecs)
# ---------------------------------------------------------------------------


def literal_to_dict(lit: Literal) -> dict:
    return {
        "attr": lit.predicate.attr,
        "op": lit.predicate.op,
        "value": lit.predicate.value,
        "negated": lit.negated,
    }


def literal_from_dict(obj: dict) -> Literal:
    return Literal(
        Predicate(obj["attr"], obj["op"], obj["value"]), bool(obj.get("negated", False))
    )


def minterms_to_dict(minterms: list[MinTerm], access: AccessList | None = None) -> dict:
    counts = access.counts if access is not None else {}
    return {
        "minterms": [
            {
                "id": m.id,
                "relation": m.relation,
                "attrs": list(m.attrs),
                "literals": [literal_to_dict(lit) for lit in m.literals],
                "size": m.size,
                "access": counts.get(m.id, 0),
            }
            for m in minterms
        ],
        "full_scan_statements": access.full_scan_statements if access is not None else 0,
    }


def dump_minterms(minterms: list[MinTerm], access: AccessList | None = None) -> str:
    return json.dumps(minterms_to_dict(minterms, access), sort_keys=True, separators=(",", ":"))
