"""Group-to-node lookup table: build, serialize, route tuples and workloads.

Routing happens at the granularity of the partitioned tuple groups, so the
table stays tiny compared to the data it routes. Per relation the entries
are indexed by a sorted interval on the relation's leading attribute with
the full literal list as a residual check; anything not interval-shaped
simply degrades to the linear scan, which is always correct because the
groups are pairwise disjoint and cover the whole space.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import DocumentSemanticError, DocumentSyntaxError, InputError, RoutingError
from .minterm import Literal, MinTerm, literal_from_dict, literal_to_dict, statement_consistent
from .model import Schema, Transaction, Workload

_NEG = {"eq": "ne", "ne": "eq", "lt": "ge", "ge": "lt", "le": "gt", "gt": "le"}


@dataclass
class Entry:
    literals: tuple[Literal, ...]
    node: int
    # half-open-ish bounds on the index attribute, derived from literals
    lo: float = -math.inf
    lo_incl: bool = True
    hi: float = math.inf
    hi_incl: bool = True


@dataclass
class RelationTable:
    attrs: tuple[str, ...]  # attribute universe of this relation's groups
    index_attr: str | None
    default_node: int | None
    entries: list[Entry] = field(default_factory=list)
    _los: list[float] = field(default_factory=list, repr=False, compare=False)
    _minterms: list[MinTerm] = field(default_factory=list, repr=False, compare=False)


@dataclass
class LookupTable:
    k: int
    relations: dict[str, RelationTable]


def _entry_bounds(entry: Entry, index_attr: str | None) -> None:
    """Tighten the entry's index interval from its own literals."""
    if index_attr is None:
        return
    for lit in entry.literals:
        p = lit.predicate
        if p.attr != index_attr:
            continue
        op = _NEG[p.op] if lit.negated else p.op
        if not isinstance(p.value, (int, float)) or isinstance(p.value, bool):
            continue
        v = float(p.value)
        if op == "eq":
            if v > entry.lo or (v == entry.lo and entry.lo_incl):
                entry.lo, entry.lo_incl = v, True
            if v < entry.hi or (v == entry.hi and entry.hi_incl):
                entry.hi, entry.hi_incl = v, True
        elif op in ("lt", "le"):
            incl = op == "le"
            if v < entry.hi or (v == entry.hi and entry.hi_incl and not incl):
                entry.hi, entry.hi_incl = v, incl
        elif op in ("gt", "ge"):
            incl = op == "ge"
            if v > entry.lo or (v == entry.lo and entry.lo_incl and not incl):
                entry.lo, entry.lo_incl = v, incl


def _index_entries(rt: RelationTable) -> None:
    for e in rt.entries:
        _entry_bounds(e, rt.index_attr)
    rt.entries.sort(key=lambda e: (e.lo, not e.lo_incl, e.hi, e.node))
    rt._los = [e.lo for e in rt.entries]


def build_table(minterms: list[MinTerm], parts: list[int], k: int) -> LookupTable:
    """Freeze an assignment into a routing table.

    ``parts[m.id]`` must name a node below ``k`` for every group; ids are
    the post-refinement (lineage-resolved) ids.
    """
    if len(parts) < len(minterms):
        raise InputError("assignment does not cover every group")
    relations: dict[str, RelationTable] = {}
    by_rel: dict[str, list[MinTerm]] = {}
    for m in minterms:
        node = parts[m.id]
        if not isinstance(node, int) or node < 0 or node >= k:
            raise InputError(f"group {m.id} has no valid node (got {node!r})")
        by_rel.setdefault(m.relation, []).append(m)
    for name, ms in by_rel.items():
        attrs = ms[0].attrs
        for m in ms:
            if m.attrs != attrs:
                raise InputError(f"relation {name!r} has mixed attribute universes")
        if len(ms) == 1 and not ms[0].literals:
            relations[name] = RelationTable(attrs, None, parts[ms[0].id])
            continue
        index_attr = attrs[0] if attrs else None
        rt = RelationTable(attrs, index_attr, None)
        for m in ms:
            rt.entries.append(Entry(tuple(m.literals), parts[m.id]))
        _index_entries(rt)
        relations[name] = rt
    return LookupTable(k, relations)


# ---------------------------------------------------------------------------
# routing
# ---------------------------------------------------------------------------


def _holds(lit: Literal, value) -> bool:
    op, c = (_NEG[lit.predicate.op] if lit.negated else lit.predicate.op), lit.predicate.value
    if op == "eq":
        return value == c
    if op == "ne":
        return value != c
    if op == "lt":
        return value < c
    if op == "le":
        return value <= c
    if op == "gt":
        return value > c
    return value >= c


def _matches(entry: Entry, values: dict) -> bool:
    for lit in entry.literals:
        attr = lit.predicate.attr
        if attr not in values:
            raise RoutingError(f"tuple is missing a value for attribute {attr!r}")
        if not _holds(lit, values[attr]):
            return False
    return True


def route_tuple(table: LookupTable, relation: str, values: dict) -> int:
    """Node of the unique group containing the tuple."""
    rt = table.relations.get(relation)
    if rt is None:
        raise RoutingError(f"unknown relation {relation!r}")
    if rt.default_node is not None:
        return rt.default_node
    candidates = rt.entries
    if rt.index_attr is not None and rt.index_attr in values:
        x = values[rt.index_attr]
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            # entries whose lower bound exceeds x can never contain it
            candidates = rt.entries[: bisect_right(rt._los, float(x))]
    matches = [e for e in candidates if _matches(e, values)]
    if len(matches) != 1:
        raise RoutingError(
            f"tuple matched {len(matches)} groups of relation {relation!r}; expected exactly 1"
        )
    return matches[0].node


def _rebuild_minterms(rt: RelationTable, relation_name: str) -> list[MinTerm]:
    if not rt._minterms and rt.entries:
        rt._minterms = [
            MinTerm(i, relation_name, rt.attrs, e.literals, 0)
            for i, e in enumerate(rt.entries)
        ]
    return rt._minterms


def route_transaction(table: LookupTable, schema: Schema, txn: Transaction) -> tuple[int, ...]:
    """Sorted node set the transaction must touch; distributed iff > 1 node.

    Statement consistency is decided exactly as during access-list
    construction, so the workload-wide distributed count reproduces the
    partitioner's cut weight for the same assignment.
    """
    nodes: set[int] = set()
    for stmt in txn.statements:
        rt = table.relations.get(stmt.relation)
        if rt is None:
            raise RoutingError(f"unknown relation {stmt.relation!r}")
        if rt.default_node is not None:
            nodes.add(rt.default_node)
            continue
        relation = schema.relation(stmt.relation)
        for m, entry in zip(_rebuild_minterms(rt, stmt.relation), rt.entries):
            if statement_consistent(relation, m, stmt):
                nodes.add(entry.node)
    return tuple(sorted(nodes))


def count_distributed(table: LookupTable, schema: Schema, workload: Workload) -> int:
    """Transactions whose node set spans more than one node."""
    return sum(
        1 for t in workload.transactions if len(route_transaction(table, schema, t)) > 1
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def table_to_dict(table: LookupTable) -> dict:
    rels = {}
    for name in sorted(table.relations):
        rt = table.relations[name]
        rels[name] = {
            "attrs": list(rt.attrs),
            "index_attr": rt.index_attr,
            "default_node": rt.default_node,
            "entries": [
                {"literals": [literal_to_dict(l) for l in e.literals], "node": e.node}
                for e in rt.entries
            ],
        }
    return {"k": table.k, "relations": rels}


def serialize_table(table: LookupTable) -> str:
    return json.dumps(table_to_dict(table), sort_keys=True, separators=(",", ":")) + "\n"


def table_from_dict(obj: object) -> LookupTable:
    if not isinstance(obj, dict) or "k" not in obj or "relations" not in obj:
        raise DocumentSemanticError("lookup-shape", "table document needs 'k' and 'relations'")
    k = obj["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DocumentSemanticError("lookup-k", "k must be a positive integer")
    relations: dict[str, RelationTable] = {}
    for name, spec in obj["relations"].items():
        default = spec.get("default_node")
        entries = []
        for raw in spec.get("entries", []):
            node = raw.get("node")
            if not isinstance(node, int) or node < 0 or node >= k:
                raise DocumentSemanticError("lookup-node", f"entry node {node!r} out of range")
            entries.append(Entry(tuple(literal_from_dict(l) for l in raw["literals"]), node))
        if default is not None and (not isinstance(default, int) or not 0 <= default < k):
            raise DocumentSemanticError("lookup-node", f"default node {default!r} out of range")
        rt = RelationTable(
            tuple(spec.get("attrs", [])), spec.get("index_attr"), default, entries
        )
        _index_entries(rt)
        relations[name] = rt
    return LookupTable(k, relations)


def parse_table(text: str) -> LookupTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    return table_from_dict(obj)
