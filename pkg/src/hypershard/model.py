"""Schema, workload, and cluster-constraint documents.

This module owns the three JSON input formats, their validation, and the
statistics primitives (attribute selectivity, attribute access ranking) that
the rest of the pipeline builds on.

Selectivity follows the classic System-R conventions:

* equality        -> 1 / distinct
* inequality (!=) -> 1 - 1 / distinct
* range ops       -> cumulative mass from the attribute's equi-depth histogram,
                     with uniform interpolation inside a bucket; attributes
                     without a histogram are treated as uniform over [min, max]

Integer attributes use counting semantics (a domain [1, 100] has 100 values),
real attributes use interval-length semantics. All results are clamped to
[0, 1].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DocumentSemanticError, DocumentSyntaxError

INTEGER = "integer"
REAL = "real"
CATEGORICAL = "categorical"
KINDS = (INTEGER, REAL, CATEGORICAL)

OPS = ("eq", "ne", "lt", "gt", "le", "ge")
RANGE_OPS = ("lt", "gt", "le", "ge")

READ = "read"
WRITE = "write"


# ---------------------------------------------------------------------------
# document types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bucket:
    """One histogram bucket covering [lo, hi] with a fraction of the rows."""

    lo: float
    hi: float
    fraction: float


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: str
    min: float | None = None
    max: float | None = None
    distinct: int = 1
    histogram: tuple[Bucket, ...] | None = None

    @property
    def numeric(self) -> bool:
        return self.kind in (INTEGER, REAL)


@dataclass(frozen=True)
class ForeignKey:
    attrs: tuple[str, ...]
    references: str


@dataclass
class Relation:
    name: str
    cardinality: int
    primary_key: tuple[str, ...]
    foreign_keys: tuple[ForeignKey, ...]
    attributes: tuple[Attribute, ...]
    _by_name: dict[str, Attribute] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._by_name = {a.name: a for a in self.attributes}

    def attribute(self, name: str) -> Attribute:
        return self._by_name[name]

    def has_attribute(self, name: str) -> bool:
        return name in self._by_name


@dataclass
class Schema:
    relations: list[Relation]
    _by_name: dict[str, Relation] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._by_name = {r.name: r for r in self.relations}

    def relation(self, name: str) -> Relation:
        return self._by_name[name]

    def has_relation(self, name: str) -> bool:
        return name in self._by_name


@dataclass(frozen=True)
class Predicate:
    """A simple predicate: attribute op constant."""

    attr: str
    op: str
    value: object

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        sym = {"eq": "=", "ne": "!=", "lt": "<", "gt": ">", "le": "<=", "ge": ">="}[self.op]
        return f"{self.attr} {sym} {self.value!r}"


@dataclass(frozen=True)
class Statement:
    relation: str
    access: str  # READ or WRITE
    predicates: tuple[Predicate, ...]


@dataclass(frozen=True)
class Transaction:
    id: object
    statements: tuple[Statement, ...]


@dataclass
class Workload:
    transactions: list[Transaction]


@dataclass
class Constraints:
    """Cluster description: node count, balance tolerances, capacities."""

    k: int
    eps_size: float = 0.10
    eps_access: float = 0.10
    alpha: float = 0.5
    beta: float = 0.5
    max_iterations: int = 8
    storage_capacity: tuple[float, ...] = ()
    processing_capacity: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DocumentSemanticError("constraints-k", "k must be a positive integer")
        if self.alpha < 0 or self.beta < 0 or abs(self.alpha + self.beta - 1.0) > 1e-9:
            raise DocumentSemanticError(
                "constraints-weights", "alpha and beta must be >= 0 and sum to 1"
            )
        for label, caps in (
            ("storage_capacity", self.storage_capacity),
            ("processing_capacity", self.processing_capacity),
        ):
            if caps and len(caps) != self.k:
                raise DocumentSemanticError(
                    "constraints-capacity",
                    f"{label} must list one value per node (k={self.k})",
                )


# ---------------------------------------------------------------------------
# parsing and validation
# ---------------------------------------------------------------------------


def _load(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc


def _require(obj: dict, key: str, ctx: str) -> object:
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentSemanticError("required-field", f"{ctx} is missing {key!r}")
    return obj[key]


def _is_int(v: object) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_num(v: object) -> bool:
    return _is_int(v) or isinstance(v, float)


def _attribute_from_dict(obj: dict, ctx: str) -> Attribute:
    name = _require(obj, "name", ctx)
    kind = _require(obj, "kind", ctx)
    if kind not in KINDS:
        raise DocumentSemanticError("attribute-kind", f"{ctx}.{name}: unknown kind {kind!r}")
    amin = obj.get("min")
    amax = obj.get("max")
    distinct = _require(obj, "distinct", f"{ctx}.{name}")
    if not _is_int(distinct) or distinct < 1:
        raise DocumentSemanticError(
            "attribute-distinct", f"{ctx}.{name}: distinct must be a positive integer"
        )
    if kind == CATEGORICAL:
        if amin is not None or amax is not None:
            raise DocumentSemanticError(
                "attribute-bounds", f"{ctx}.{name}: categorical attributes take no min/max"
            )
    else:
        if not _is_num(amin) or not _is_num(amax):
            raise DocumentSemanticError(
                "attribute-bounds", f"{ctx}.{name}: numeric attributes need numeric min and max"
            )
        if amin > amax:
            raise DocumentSemanticError(
                "attribute-bounds", f"{ctx}.{name}: min {amin} exceeds max {amax}"
            )
        if kind == INTEGER and (not _is_int(amin) or not _is_int(amax)):
            raise DocumentSemanticError(
                "attribute-bounds", f"{ctx}.{name}: integer attribute bounds must be integers"
            )
    histogram = None
    if obj.get("histogram") is not None:
        if kind == CATEGORICAL:
            raise DocumentSemanticError(
                "histogram-kind", f"{ctx}.{name}: histograms apply to numeric attributes only"
            )
        buckets = []
        prev_hi = None
        total = 0.0
        for i, b in enumerate(obj["histogram"]):
            lo = _require(b, "lo", f"{ctx}.{name}.histogram[{i}]")
            hi = _require(b, "hi", f"{ctx}.{name}.histogram[{i}]")
            fr = _require(b, "fraction", f"{ctx}.{name}.histogram[{i}]")
            if not (_is_num(lo) and _is_num(hi) and _is_num(fr)):
                raise DocumentSemanticError(
                    "histogram-bucket", f"{ctx}.{name}.histogram[{i}]: non-numeric field"
                )
            if lo > hi or fr < 0:
                raise DocumentSemanticError(
                    "histogram-bucket", f"{ctx}.{name}.histogram[{i}]: lo>hi or negative fraction"
                )
            if prev_hi is not None and lo <= prev_hi:
                raise DocumentSemanticError(
                    "histogram-order",
                    f"{ctx}.{name}.histogram[{i}]: buckets must be ordered and non-overlapping",
                )
            prev_hi = hi
            total += fr
            buckets.append(Bucket(lo, hi, fr))
        if abs(total - 1.0) > 1e-9:
            raise DocumentSemanticError(
                "histogram-mass", f"{ctx}.{name}: bucket fractions sum to {total}, expected 1"
            )
        histogram = tuple(buckets)
    return Attribute(name, kind, amin, amax, distinct, histogram)


def schema_from_dict(obj: object) -> Schema:
    relations_raw = _require(obj, "relations", "schema")
    if not isinstance(relations_raw, list) or not relations_raw:
        raise DocumentSemanticError("schema-relations", "schema needs a non-empty relation list")
    relations = []
    seen = set()
    for r in relations_raw:
        name = _require(r, "name", "relation")
        if name in seen:
            raise DocumentSemanticError("relation-unique", f"duplicate relation {name!r}")
        seen.add(name)
        card = _require(r, "cardinality", f"relation {name}")
        if not _is_int(card) or card < 0:
            raise DocumentSemanticError(
                "relation-cardinality", f"relation {name}: cardinality must be a non-negative int"
            )
        attrs = tuple(
            _attribute_from_dict(a, f"relation {name}") for a in _require(r, "attributes", name)
        )
        attr_names = [a.name for a in attrs]
        if len(set(attr_names)) != len(attr_names):
            raise DocumentSemanticError(
                "attribute-unique", f"relation {name}: duplicate attribute names"
            )
        pk = tuple(_require(r, "primary_key", f"relation {name}"))
        for a in pk:
            if a not in attr_names:
                raise DocumentSemanticError(
                    "primary-key-attrs", f"relation {name}: unknown pk attribute {a!r}"
                )
        if not pk:
            raise DocumentSemanticError("primary-key-attrs", f"relation {name}: empty primary key")
        fks = []
        for fk in r.get("foreign_keys", []):
            fk_attrs = tuple(_require(fk, "attrs", f"relation {name} fk"))
            ref = _require(fk, "references", f"relation {name} fk")
            for a in fk_attrs:
                if a not in attr_names:
                    raise DocumentSemanticError(
                        "foreign-key-attrs", f"relation {name}: unknown fk attribute {a!r}"
                    )
            fks.append(ForeignKey(fk_attrs, ref))
        relations.append(Relation(name, card, pk, tuple(fks), attrs))

    schema = Schema(relations)
    for r in schema.relations:
        for fk in r.foreign_keys:
            if not schema.has_relation(fk.references):
                raise DocumentSemanticError(
                    "foreign-key-target", f"relation {r.name}: fk references unknown {fk.references!r}"
                )
            target_pk = schema.relation(fk.references).primary_key
            if len(fk.attrs) != len(target_pk):
                raise DocumentSemanticError(
                    "foreign-key-arity",
                    f"relation {r.name}: fk to {fk.references} has {len(fk.attrs)} attrs, "
                    f"target pk has {len(target_pk)}",
                )
    _check_fk_cycles(schema)
    return schema


def _check_fk_cycles(schema: Schema) -> None:
    # Self-references are allowed and ignored; cycles among distinct relations are not.
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {r.name: WHITE for r in schema.relations}

    def visit(name: str, stack: list[str]) -> None:
        color[name] = GRAY
        stack.append(name)
        for fk in schema.relation(name).foreign_keys:
            tgt = fk.references
            if tgt == name:
                continue
            if color[tgt] == GRAY:
                cyc = stack[stack.index(tgt):] + [tgt]
                raise DocumentSemanticError(
                    "foreign-key-acyclic", "cycle " + " -> ".join(cyc)
                )
            if color[tgt] == WHITE:
                visit(tgt, stack)
        stack.pop()
        color[name] = BLACK

    for r in schema.relations:
        if color[r.name] == WHITE:
            visit(r.name, [])


def parse_schema(text: str) -> Schema:
    return schema_from_dict(_load(text))


def _value_matches_kind(value: object, kind: str) -> bool:
    if kind == INTEGER:
        return _is_int(value)
    if kind == REAL:
        return _is_num(value)
    return isinstance(value, str)


def workload_from_dict(obj: object, schema: Schema) -> Workload:
    txns_raw = _require(obj, "transactions", "workload")
    if not isinstance(txns_raw, list):
        raise DocumentSemanticError("workload-transactions", "transactions must be a list")
    txns = []
    seen_ids = set()
    for t in txns_raw:
        tid = _require(t, "id", "transaction")
        if tid in seen_ids:
            raise DocumentSemanticError("transaction-unique", f"duplicate transaction id {tid!r}")
        seen_ids.add(tid)
        stmts = []
        for s in _require(t, "statements", f"transaction {tid}"):
            rel_name = _require(s, "relation", f"transaction {tid} statement")
            if not schema.has_relation(rel_name):
                raise DocumentSemanticError(
                    "statement-relation", f"transaction {tid}: unknown relation {rel_name!r}"
                )
            access = _require(s, "access", f"transaction {tid} statement")
            if access not in (READ, WRITE):
                raise DocumentSemanticError(
                    "statement-access", f"transaction {tid}: access must be read or write"
                )
            rel = schema.relation(rel_name)
            preds = []
            for p in s.get("predicates", []):
                attr_name = _require(p, "attr", f"transaction {tid} predicate")
                op = _require(p, "op", f"transaction {tid} predicate")
                value = _require(p, "value", f"transaction {tid} predicate")
                if not rel.has_attribute(attr_name):
                    raise DocumentSemanticError(
                        "predicate-attr",
                        f"transaction {tid}: {rel_name} has no attribute {attr_name!r}",
                    )
                if op not in OPS:
                    raise DocumentSemanticError(
                        "predicate-op", f"transaction {tid}: unknown op {op!r}"
                    )
                attr = rel.attribute(attr_name)
                if not _value_matches_kind(value, attr.kind):
                    raise DocumentSemanticError(
                        "predicate-value-kind",
                        f"transaction {tid}: value {value!r} does not match "
                        f"{attr.kind} attribute {attr_name!r}",
                    )
                if op in RANGE_OPS and attr.kind == CATEGORICAL:
                    raise DocumentSemanticError(
                        "predicate-range-kind",
                        f"transaction {tid}: range op on categorical attribute {attr_name!r}",
                    )
                preds.append(Predicate(attr_name, op, value))
            stmts.append(Statement(rel_name, access, tuple(preds)))
        txns.append(Transaction(tid, tuple(stmts)))
    return Workload(txns)


def parse_workload(text: str, schema: Schema) -> Workload:
    return workload_from_dict(_load(text), schema)


def constraints_from_dict(obj: object) -> Constraints:
    k = _require(obj, "k", "constraints")
    if not _is_int(k) or k < 1:
        raise DocumentSemanticError("constraints-k", "k must be a positive integer")
    eps_size = obj.get("eps_size", 0.10)
    eps_access = obj.get("eps_access", 0.10)
    for label, eps in (("eps_size", eps_size), ("eps_access", eps_access)):
        if not _is_num(eps) or not (0.0 <= eps <= 1.0):
            raise DocumentSemanticError("constraints-eps", f"{label} must lie in [0, 1]")
    alpha = obj.get("alpha", 0.5)
    beta = obj.get("beta", 0.5)
    for label, w in (("alpha", alpha), ("beta", beta)):
        if not _is_num(w) or w < 0:
            raise DocumentSemanticError("constraints-weights", f"{label} must be >= 0")
    if abs(alpha + beta - 1.0) > 1e-9:
        raise DocumentSemanticError("constraints-weights", "alpha and beta must sum to 1")
    max_iterations = obj.get("max_iterations", 8)
    if not _is_int(max_iterations) or max_iterations < 1:
        raise DocumentSemanticError(
            "constraints-iterations", "max_iterations must be a positive integer"
        )
    caps = {}
    for label in ("storage_capacity", "processing_capacity"):
        vals = obj.get(label, [])
        if vals:
            if len(vals) != k:
                raise DocumentSemanticError(
                    "constraints-capacity", f"{label} must list one value per node (k={k})"
                )
            for v in vals:
                if not _is_num(v) or v <= 0:
                    raise DocumentSemanticError(
                        "constraints-capacity", f"{label} entries must be positive numbers"
                    )
        caps[label] = tuple(vals)
    return Constraints(
        k=k,
        eps_size=eps_size,
        eps_access=eps_access,
        alpha=alpha,
        beta=beta,
        max_iterations=max_iterations,
        storage_capacity=caps["storage_capacity"],
        processing_capacity=caps["processing_capacity"],
    )


def parse_constraints(text: str) -> Constraints:
    return constraints_from_dict(_load(text))


# ---------------------------------------------------------------------------
# serialization (canonical: sorted keys, fixed separators)
# ---------------------------------------------------------------------------


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def schema_to_dict(schema: Schema) -> dict:
    out = []
    for r in schema.relations:
        attrs = []
        for a in r.attributes:
            d: dict[str, object] = {"name": a.name, "kind": a.kind, "distinct": a.distinct}
            if a.numeric:
                d["min"] = a.min
                d["max"] = a.max
            if a.histogram is not None:
                d["histogram"] = [
                    {"lo": b.lo, "hi": b.hi, "fraction": b.fraction} for b in a.histogram
                ]
            attrs.append(d)
        out.append(
            {
                "name": r.name,
                "cardinality": r.cardinality,
                "primary_key": list(r.primary_key),
                "foreign_keys": [
                    {"attrs": list(fk.attrs), "references": fk.references}
                    for fk in r.foreign_keys
                ],
                "attributes": attrs,
            }
        )
    return {"relations": out}


def serialize_schema(schema: Schema) -> str:
    return _dump(schema_to_dict(schema))


def workload_to_dict(workload: Workload) -> dict:
    return {
        "transactions": [
            {
                "id": t.id,
                "statements": [
                    {
                        "relation": s.relation,
                        "access": s.access,
                        "predicates": [
                            {"attr": p.attr, "op": p.op, "value": p.value}
                            for p in s.predicates
                        ],
                    }
                    for s in t.statements
                ],
            }
            for t in workload.transactions
        ]
    }


def serialize_workload(workload: Workload) -> str:
    return _dump(workload_to_dict(workload))


def constraints_to_dict(c: Constraints) -> dict:
    return {
        "k": c.k,
        "eps_size": c.eps_size,
        "eps_access": c.eps_access,
        "alpha": c.alpha,
        "beta": c.beta,
        "max_iterations": c.max_iterations,
        "storage_capacity": list(c.storage_capacity),
        "processing_capacity": list(c.processing_capacity),
    }


def serialize_constraints(c: Constraints) -> str:
    return _dump(constraints_to_dict(c))


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


def _mass_below(attr: Attribute, c: float, inclusive: bool) -> float:
    """Fraction of rows with value < c (or <= c when inclusive)."""
    if attr.histogram is not None:
        total = 0.0
        for b in attr.histogram:
            if attr.kind == INTEGER:
                n = b.hi - b.lo + 1
                cnt = c - b.lo + (1 if inclusive else 0)
                cnt = min(max(cnt, 0), n)
                total += b.fraction * (cnt / n)
            else:
                if b.hi == b.lo:
                    # Degenerate bucket: a point mass.
                    if c > b.lo or (inclusive and c == b.lo):
                        total += b.fraction
                else:
                    frac = (c - b.lo) / (b.hi - b.lo)
                    total += b.fraction * min(max(frac, 0.0), 1.0)
        return min(max(total, 0.0), 1.0)
    lo, hi = attr.min, attr.max
    if attr.kind == INTEGER:
        n = hi - lo + 1
        cnt = c - lo + (1 if inclusive else 0)
        return min(max(cnt / n, 0.0), 1.0)
    if hi == lo:
        return 1.0 if (c > lo or (inclusive and c == lo)) else 0.0
    return min(max((c - lo) / (hi - lo), 0.0), 1.0)


def selectivity(attr: Attribute, op: str, value: object) -> float:
    """Estimated fraction of rows satisfying ``attr op value``."""
    if op == "eq":
        return min(max(1.0 / attr.distinct, 0.0), 1.0)
    if op == "ne":
        return min(max(1.0 - 1.0 / attr.distinct, 0.0), 1.0)
    if not attr.numeric:
        raise ValueError(f"range selectivity undefined for categorical {attr.name!r}")
    if op == "lt":
        return _mass_below(attr, value, inclusive=False)
    if op == "le":
        return _mass_below(attr, value, inclusive=True)
    if op == "gt":
        return min(max(1.0 - _mass_below(attr, value, inclusive=True), 0.0), 1.0)
    if op == "ge":
        return min(max(1.0 - _mass_below(attr, value, inclusive=False), 0.0), 1.0)
    raise ValueError(f"unknown op {op!r}")


def attribute_access_ranking(workload: Workload, relation: str) -> list[str]:
    """Attributes of ``relation`` ordered by how many statements filter on them.

    Descending count, ties broken by attribute name ascending. Attributes never
    mentioned in a predicate are omitted; a relation with no predicates at all
    yields an empty list.
    """
    counts: dict[str, int] = {}
    for t in workload.transactions:
        for s in t.statements:
            if s.relation != relation:
                continue
            for attr in {p.attr for p in s.predicates}:
                counts[attr] = counts.get(attr, 0) + 1
    return sorted(counts, key=lambda a: (-counts[a], a))


def statement_counts(workload: Workload) -> dict[str, int]:
    """Number of statements touching each relation."""
    out: dict[str, int] = {}
    for t in workload.transactions:
        for s in t.statements:
            out[s.relation] = out.get(s.relation, 0) + 1
    return out
