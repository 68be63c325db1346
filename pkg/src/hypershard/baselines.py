"""Classic partitioning schemes used as comparison baselines.

Six routers: schema-driven hashing (sh), primary-key hash (pkh),
primary-key range (pkr), primary-key round-robin (pkrr), column-use
round-robin (cmrr), and full replication (allr). Each maps a statement
to the set of nodes that must take part; a transaction counts as
distributed when the union of those sets holds more than one node.

Routing is deliberately pessimistic: a statement that does not pin the
relation's partitioning key falls back to every node, since a
shared-nothing store without secondary indexes must consult them all.
"""

from __future__ import annotations

import hashlib
import json
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import InputError
from .model import (
    INTEGER,
    READ,
    Relation,
    Schema,
    Statement,
    Transaction,
    Workload,
    attribute_access_ranking,
)

SCHEMES = ("sh", "pkh", "pkr", "pkrr", "cmrr", "allr")

# Routing methods a relation can carry inside a router.
_HASH = "hash"
_RANGE = "range"
_MOD = "mod"
_RR_ATTR = "rr-attr"
_ALL = "all"


@dataclass(frozen=True)
class RelationRule:
    """How one relation routes: a method plus the key attributes it needs."""

    method: str
    key: tuple[str, ...] = ()
    # mins/radices describe the integer key lattice for range and
    # round-robin methods; boundaries are the k+1 range split points.
    mins: tuple[int, ...] = ()
    radices: tuple[int, ...] = ()
    boundaries: tuple[int, ...] = ()


@dataclass(frozen=True)
class SchemeRouter:
    scheme: str
    k: int
    schema: Schema = field(compare=False)
    rules: dict[str, RelationRule] = field(compare=False)


def _hash_node(values: tuple, k: int) -> int:
    """Deterministic 64-bit hash of the canonical key encoding, mod k.

    Encodes values only, not the relation name, so equal key values
    land together even when they come from different relations.
    """
    enc = json.dumps(list(values), sort_keys=True, separators=(",", ":"))
    digest = hashlib.blake2b(enc.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % k


def _mixed_radix_index(values, mins, radices) -> int:
    idx = 0
    for v, lo, r in zip(values, mins, radices):
        off = min(max(int(v) - lo, 0), r - 1)
        idx = idx * r + off
    return idx


def _integer_lattice(relation: Relation, attrs) -> tuple[tuple, tuple] | None:
    """(mins, radices) when every key attribute is a bounded integer."""
    mins = []
    radices = []
    for name in attrs:
        a = relation.attribute(name)
        if a.kind != INTEGER or a.min is None or a.max is None:
            return None
        mins.append(int(a.min))
        radices.append(int(a.max) - int(a.min) + 1)
    return tuple(mins), tuple(radices)


def _range_rule(relation: Relation, k: int) -> RelationRule:
    lattice = _integer_lattice(relation, relation.primary_key)
    if lattice is None:
        # No total order worth splitting on; every statement fans out.
        return RelationRule(_ALL)
    mins, radices = lattice
    total = 1
    for r in radices:
        total *= r
    boundaries = tuple(n * total // k for n in range(k + 1))
    return RelationRule(_RANGE, relation.primary_key, mins, radices, boundaries)


def _mod_rule(relation: Relation) -> RelationRule:
    lattice = _integer_lattice(relation, relation.primary_key)
    if lattice is None:
        return RelationRule(_ALL)
    mins, radices = lattice
    return RelationRule(_MOD, relation.primary_key, mins, radices)


def _cmrr_rule(relation: Relation, workload: Workload) -> RelationRule:
    ranking = attribute_access_ranking(workload, relation.name)
    if not ranking:
        # Untouched relation: nothing to rank, spread its rows by pk.
        return _mod_rule(relation)
    top = relation.attribute(ranking[0])
    if top.kind != INTEGER or top.min is None:
        return RelationRule(_ALL, (top.name,))
    return RelationRule(_RR_ATTR, (top.name,), (int(top.min),))


def _sh_rules(schema: Schema, k: int) -> dict[str, RelationRule]:
    """Walk each relation's foreign-key chain to its root and key on the
    attributes that map onto the root's primary key.

    A relation whose chains cannot be composed down to a root keeps its
    own primary key under plain hashing.
    """
    memo: dict[str, tuple[int, str, tuple[str, ...]]] = {}

    def resolve(name: str) -> tuple[int, str, tuple[str, ...]]:
        if name in memo:
            return memo[name]
        rel = schema.relation(name)
        if not rel.foreign_keys:
            memo[name] = (0, name, rel.primary_key)
            return memo[name]
        best = None
        for fk in sorted(rel.foreign_keys, key=lambda f: (f.references, f.attrs)):
            depth, root, parent_key = resolve(fk.references)
            target_pk = schema.relation(fk.references).primary_key
            mapping = dict(zip(target_pk, fk.attrs))
            if not all(a in mapping for a in parent_key):
                continue  # parent keyed off-pk; chain does not compose
            cand = (depth + 1, root, tuple(mapping[a] for a in parent_key))
            if best is None or cand < best:
                best = cand
        if best is None:
            best = (0, name, rel.primary_key)
        memo[name] = best
        return best

    rules = {}
    for rel in schema.relations:
        _, _, key = resolve(rel.name)
        rules[rel.name] = RelationRule(_HASH, key)
    return rules


def build_scheme(scheme: str, schema: Schema, workload: Workload, k: int) -> SchemeRouter:
    if scheme not in SCHEMES:
        raise InputError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")
    if k < 1:
        raise InputError("node count k must be a positive integer")
    rules: dict[str, RelationRule] = {}
    for rel in schema.relations:
        if scheme == "pkh":
            rules[rel.name] = RelationRule(_HASH, rel.primary_key)
        elif scheme == "pkr":
            rules[rel.name] = _range_rule(rel, k)
        elif scheme == "pkrr":
            rules[rel.name] = _mod_rule(rel)
        elif scheme == "cmrr":
            rules[rel.name] = _cmrr_rule(rel, workload)
        elif scheme == "allr":
            rules[rel.name] = RelationRule(_ALL)
    if scheme == "sh":
        rules = _sh_rules(schema, k)
    return SchemeRouter(scheme, k, schema, rules)


def _equalities(statement: Statement) -> dict[str, object]:
    values: dict[str, object] = {}
    for p in statement.predicates:
        if p.op == "eq" and values.setdefault(p.attr, p.value) != p.value:
            return {}  # contradictory equalities; treat as unpinned
    return values


def _attr_window(statement: Statement, attr: str, lo: int, radix: int) -> tuple[int, int]:
    """Offset window [a, b] this statement allows for one key digit."""
    a, b = 0, radix - 1
    for p in statement.predicates:
        if p.attr != attr or not isinstance(p.value, int):
            continue
        off = p.value - lo
        if p.op == "eq":
            a, b = max(a, off), min(b, off)
        elif p.op == "lt":
            b = min(b, off - 1)
        elif p.op == "le":
            b = min(b, off)
        elif p.op == "gt":
            a = max(a, off + 1)
        elif p.op == "ge":
            a = max(a, off)
        # ne punches a hole; it never shrinks the node window
    return a, b


def _route_range(rule: RelationRule, statement: Statement, k: int) -> frozenset[int]:
    width = 1
    for r in rule.radices:
        width *= r
    lo = 0
    for attr, amin, radix in zip(rule.key, rule.mins, rule.radices):
        width //= radix
        a, b = _attr_window(statement, attr, amin, radix)
        if a > b:
            return frozenset(range(k))  # contradictory; fan out
        lo += a * width
        if a != b:
            width *= b - a + 1
            break
        # digit pinned exactly; descend to the next one
    else:
        width = 1
    hi = lo + width - 1
    bounds = rule.boundaries
    first = max(bisect_right(bounds, lo) - 1, 0)
    last = max(bisect_right(bounds, hi) - 1, 0)
    nodes = {n for n in range(first, min(last, k - 1) + 1) if bounds[n] < bounds[n + 1]}
    return frozenset(nodes) if nodes else frozenset(range(k))


def route_statement(router: SchemeRouter, statement: Statement) -> frozenset[int]:
    k = router.k
    everywhere = frozenset(range(k))
    if router.scheme == "allr":
        return frozenset((0,)) if statement.access == READ else everywhere
    rule = router.rules.get(statement.relation)
    if rule is None:
        raise InputError(f"statement on unknown relation {statement.relation!r}")
    if rule.method == _ALL:
        return everywhere
    values = _equalities(statement)
    if rule.method == _RANGE:
        return _route_range(rule, statement, k)
    if not all(a in values for a in rule.key):
        return everywhere
    key_values = tuple(values[a] for a in rule.key)
    if rule.method == _HASH:
        return frozenset((_hash_node(key_values, k),))
    if rule.method == _MOD:
        if not all(isinstance(v, int) for v in key_values):
            return everywhere
        return frozenset((_mixed_radix_index(key_values, rule.mins, rule.radices) % k,))
    # rr-attr: round-robin on the workload's favorite attribute
    v = key_values[0]
    if not isinstance(v, int):
        return everywhere
    return frozenset(((v - rule.mins[0]) % k,))


def route_transaction(router: SchemeRouter, txn: Transaction) -> tuple[int, ...]:
    nodes: set[int] = set()
    for s in txn.statements:
        nodes |= route_statement(router, s)
    return tuple(sorted(nodes))


def count_distributed(router: SchemeRouter, workload: Workload) -> int:
    return sum(1 for t in workload.transactions if len(route_transaction(router, t)) > 1)
