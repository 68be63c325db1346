"""Seeded desk-scale benchmark generators and the exhaustive cut oracle.

Three generators produce (schema document, workload document) pairs:

* a warehouse-centric order-processing trace where almost every
  transaction names its home warehouse,
* a telecom subscriber trace where most transactions pin one subscriber,
* a review/trust trace whose co-access structure is invisible to any
  single-column key.

Documents are plain dicts that round-trip through parse_schema and
parse_workload; identical parameters and seed give identical documents.
All transaction parameters are constants baked into the trace.
"""

from __future__ import annotations

import random

from . import _core
from .errors import InputError
from .hypergraph import Hypergraph
from .model import schema_from_dict, workload_from_dict
from .partitioner import Assignment, capacity

AREA_CODES = ("E", "N", "S", "W")


def _int_attr(name: str, lo: int, hi: int, distinct: int | None = None) -> dict:
    return {
        "name": name,
        "kind": "integer",
        "min": lo,
        "max": hi,
        "distinct": distinct if distinct is not None else hi - lo + 1,
    }


def _cat_attr(name: str, distinct: int) -> dict:
    return {"name": name, "kind": "categorical", "distinct": distinct}


def _validate(schema_doc: dict, workload_doc: dict) -> None:
    schema = schema_from_dict(schema_doc)
    workload_from_dict(workload_doc, schema)


def _read(relation: str, **eq) -> dict:
    return {
        "relation": relation,
        "access": "read",
        "predicates": [{"attr": a, "op": "eq", "value": v} for a, v in eq.items()],
    }


def _write(relation: str, **eq) -> dict:
    s = _read(relation, **eq)
    s["access"] = "write"
    return s


def _pick_template(rng: random.Random, cumulative: list[tuple[float, str]]) -> str:
    x = rng.random()
    for edge, name in cumulative:
        if x < edge:
            return name
    return cumulative[-1][1]


def _cumulative(weights: list[tuple[str, float]]) -> list[tuple[float, str]]:
    edge = 0.0
    out = []
    for name, w in weights:
        edge += w
        out.append((edge, name))
    return out


# --------------------------------------------------------------------------
# warehouse-centric trace


def gen_tpcc_like(warehouses: int = 2, n_txns: int = 1000, seed: int = 0) -> tuple[dict, dict]:
    """Order-processing trace over nine relations.

    Every transaction carries an equality on its home warehouse id
    (branch_no); order-entry and payment transactions reach into a
    remote warehouse with probability 0.10.
    """
    if warehouses < 1:
        raise InputError("warehouses must be at least 1")
    if n_txns < 0:
        raise InputError("n_txns must be non-negative")
    w_count = warehouses
    customers = 300 * w_count
    base_orders = 400 * w_count
    parts = 100
    id_ceiling = base_orders + max(n_txns, 1)

    schema_doc = {
        "relations": [
            {
                "name": "warehouse",
                "cardinality": w_count,
                "attributes": [_int_attr("branch_no", 1, w_count)],
                "primary_key": ["branch_no"],
            },
            {
                "name": "district",
                "cardinality": 10 * w_count,
                "attributes": [
                    _cat_attr("area_code", len(AREA_CODES)),
                    _int_attr("branch_no", 1, w_count),
                    _int_attr("precinct_no", 1, 10),
                ],
                "primary_key": ["branch_no", "precinct_no"],
                "foreign_keys": [{"attrs": ["branch_no"], "references": "warehouse"}],
            },
            {
                "name": "customer",
                "cardinality": customers,
                "attributes": [
                    _int_attr("area_no", 1, 10),
                    _int_attr("branch_no", 1, w_count),
                    _int_attr("shopper_no", 1, customers),
                    _cat_attr("surname", 50),
                ],
                "primary_key": ["shopper_no"],
                "foreign_keys": [
                    {"attrs": ["branch_no", "area_no"], "references": "district"}
                ],
            },
            {
                "name": "history",
                "cardinality": base_orders,
                "attributes": [
                    _int_attr("area_no", 1, 10),
                    _int_attr("branch_no", 1, w_count),
                    _int_attr("hist_no", 1, id_ceiling),
                    _int_attr("shopper_no", 1, customers),
                ],
                "primary_key": ["hist_no"],
                "foreign_keys": [
                    {"attrs": ["shopper_no"], "references": "customer"},
                    {"attrs": ["branch_no", "area_no"], "references": "district"},
                ],
            },
            {
                "name": "orders",
                "cardinality": base_orders,
                "attributes": [
                    _int_attr("area_no", 1, 10),
                    _int_attr("branch_no", 1, w_count),
                    _int_attr("order_no", 1, id_ceiling),
                ],
                "primary_key": ["order_no"],
                "foreign_keys": [
                    {"attrs": ["branch_no", "area_no"], "references": "district"}
                ],
            },
            {
                "name": "order_queue",
                "cardinality": 120 * w_count,
                "attributes": [
                    _int_attr("area_no", 1, 10),
                    _int_attr("branch_no", 1, w_count),
                    _int_attr("order_no", 1, id_ceiling),
                ],
                "primary_key": ["order_no"],
                "foreign_keys": [
                    {"attrs": ["order_no"], "references": "orders"},
                    {"attrs": ["branch_no", "area_no"], "references": "district"},
                ],
            },
            {
                "name": "order_line",
                "cardinality": 1200 * w_count,
                "attributes": [
                    _int_attr("area_no", 1, 10),
                    _int_attr("branch_no", 1, w_count),
                    _int_attr("item_slot", 1, 12),
                    _int_attr("order_no", 1, id_ceiling),
                ],
                "primary_key": ["order_no", "item_slot"],
                "foreign_keys": [
                    {"attrs": ["order_no"], "references": "orders"},
                    {"attrs": ["branch_no", "area_no"], "references": "district"},
                ],
            },
            {
                "name": "stock",
                "cardinality": parts * w_count,
                "attributes": [
                    _int_attr("part_no", 1, parts),
                    _int_attr("warehouse_ref", 1, w_count),
                ],
                "primary_key": ["warehouse_ref", "part_no"],
                "foreign_keys": [{"attrs": ["warehouse_ref"], "references": "warehouse"}],
            },
            {
                # catalog relation: deliberately outside the foreign-key tree
                "name": "item",
                "cardinality": parts,
                "attributes": [_int_attr("part_no", 1, parts)],
                "primary_key": ["part_no"],
            },
        ]
    }

    rng = random.Random(seed)
    code = lambda d: AREA_CODES[(d - 1) % len(AREA_CODES)]

    def customer_of(w: int, d: int) -> int:
        # customer ids interleave warehouses: branch(c) = (c-1) % W + 1
        j = rng.randrange(30)
        return (j * 10 + d - 1) * w_count + w

    def skewed_part() -> int:
        return rng.randrange(1, 11) if rng.random() < 0.5 else rng.randrange(1, parts + 1)

    def other_warehouse(w: int) -> int:
        if w_count == 1:
            return w
        o = rng.randrange(1, w_count)
        return o if o < w else o + 1

    mix = _cumulative(
        [
            ("new_order", 0.18),
            ("payment", 0.36),
            ("order_update", 0.11),
            ("delivery", 0.045),
            ("customer_update", 0.125),
            ("restock", 0.045),
            ("stock_level", 0.055),
            ("audit", 0.08),
        ]
    )

    next_order = base_orders
    next_hist = base_orders
    txns = []
    for i in range(n_txns):
        kind = _pick_template(rng, mix)
        w = rng.randrange(1, w_count + 1)
        # districts 9 and 10 are reserved for the cross-warehouse audit
        d = rng.randrange(1, 9)
        stmts: list[dict]
        if kind == "new_order":
            next_order += 1
            o = next_order
            c = customer_of(w, d)
            stmts = [
                _read("warehouse", branch_no=w),
                _read("district", branch_no=w, precinct_no=d, area_code=code(d)),
                _read("customer", area_no=d, branch_no=w, shopper_no=c),
                _write("orders", area_no=d, branch_no=w, order_no=o),
                _write("order_queue", area_no=d, branch_no=w, order_no=o),
            ]
            lines = rng.randrange(4, 9)
            remote_line = rng.randrange(lines) if rng.random() < 0.10 else -1
            chosen = rng.sample(range(1, parts + 1), lines)
            for slot in range(1, lines + 1):
                stmts.append(
                    _write("order_line", area_no=d, branch_no=w, item_slot=slot, order_no=o)
                )
            for slot, p in enumerate(chosen):
                supply = other_warehouse(w) if slot == remote_line else w
                stmts.append(_write("stock", part_no=p, warehouse_ref=supply))
        elif kind == "payment":
            if rng.random() < 0.10:
                w_c, d_c = other_warehouse(w), rng.randrange(1, 9)
            else:
                w_c, d_c = w, d
            next_hist += 1
            c = customer_of(w_c, d_c)
            stmts = [
                _read("warehouse", branch_no=w),
                _write("district", branch_no=w, precinct_no=d, area_code=code(d)),
            ]
            if rng.random() < 0.06:
                stmts.append(
                    _write("customer", area_no=d_c, branch_no=w_c, surname=f"S{c % 50:02d}")
                )
            else:
                stmts.append(_write("customer", area_no=d_c, branch_no=w_c, shopper_no=c))
            stmts.append(
                _write(
                    "history", area_no=d_c, branch_no=w_c, hist_no=next_hist, shopper_no=c
                )
            )
        elif kind == "order_update":
            c = customer_of(w, d)
            o = rng.randrange(1, base_orders + 1)
            stmts = [
                _read("district", branch_no=w, precinct_no=d, area_code=code(d)),
                _read("customer", area_no=d, branch_no=w, shopper_no=c),
                _write("orders", area_no=d, branch_no=w, order_no=o),
            ]
        elif kind == "delivery":
            c = customer_of(w, d)
            o = rng.randrange(1, base_orders + 1)
            stmts = [
                _read("district", branch_no=w, precinct_no=d, area_code=code(d)),
                _read("order_queue", area_no=d, branch_no=w, order_no=o),
                _write("orders", area_no=d, branch_no=w, order_no=o),
                _write("customer", area_no=d, branch_no=w, shopper_no=c),
            ]
        elif kind == "customer_update":
            c = customer_of(w, d)
            stmts = [_write("customer", area_no=d, branch_no=w, shopper_no=c)]
        elif kind == "restock":
            picked: list[int] = []
            while len(picked) < 3:
                p = skewed_part()
                if p not in picked:
                    picked.append(p)
            stmts = [_read("warehouse", branch_no=w)]
            stmts += [_write("stock", part_no=p, warehouse_ref=w) for p in picked]
        elif kind == "stock_level":
            stmts = [_read("district", branch_no=w, precinct_no=d, area_code=code(d))]
            for p in rng.sample(range(1, parts + 1), 4):
                stmts.append(_read("stock", part_no=p, warehouse_ref=w))
        else:  # audit: paired balance adjustment across two warehouses
            w_a = rng.randrange(1, w_count + 1)
            w_b = w_a % w_count + 1
            stmts = [
                _write("customer", area_no=9, branch_no=w_a, shopper_no=customer_of(w_a, 9)),
                _write("customer", area_no=10, branch_no=w_b, shopper_no=customer_of(w_b, 10)),
            ]
        txns.append({"id": i, "statements": stmts})

    workload_doc = {"transactions": txns}
    _validate(schema_doc, workload_doc)
    return schema_doc, workload_doc


# --------------------------------------------------------------------------
# subscriber-centric trace


def gen_tatp_like(subscribers: int = 1000, n_txns: int = 2000, seed: int = 0) -> tuple[dict, dict]:
    """Telecom trace: one root relation and three descendants, with at
    least 80% of transactions pinned to a single subscriber id."""
    if subscribers < 1:
        raise InputError("subscribers must be at least 1")
    if n_txns < 0:
        raise InputError("n_txns must be non-negative")
    s_count = subscribers

    schema_doc = {
        "relations": [
            {
                "name": "subscriber",
                "cardinality": s_count,
                "attributes": [_int_attr("sub_no", 1, s_count)],
                "primary_key": ["sub_no"],
            },
            {
                "name": "access_info",
                "cardinality": 2 * s_count,
                "attributes": [
                    _int_attr("sub_no", 1, s_count),
                    _int_attr("svc_kind", 1, 4),
                ],
                "primary_key": ["sub_no", "svc_kind"],
                "foreign_keys": [{"attrs": ["sub_no"], "references": "subscriber"}],
            },
            {
                # kind-major key order: rows cluster by service kind first
                "name": "special_facility",
                "cardinality": 2 * s_count,
                "attributes": [
                    _int_attr("sub_no", 1, s_count),
                    _int_attr("svc_kind", 1, 4),
                ],
                "primary_key": ["svc_kind", "sub_no"],
                "foreign_keys": [{"attrs": ["sub_no"], "references": "subscriber"}],
            },
            {
                "name": "call_forwarding",
                "cardinality": 3 * s_count,
                "attributes": [
                    _int_attr("sub_no", 1, s_count),
                    _int_attr("svc_kind", 1, 4),
                    _int_attr("window_hour", 0, 23),
                ],
                "primary_key": ["sub_no", "svc_kind", "window_hour"],
                "foreign_keys": [
                    {"attrs": ["svc_kind", "sub_no"], "references": "special_facility"}
                ],
            },
        ]
    }

    mix = _cumulative(
        [
            ("get_subscriber", 0.24),
            ("get_access", 0.15),
            ("update_location", 0.15),
            ("update_subscriber", 0.17),
            ("get_destination", 0.10),
            ("upsert_forwarding", 0.13),
            ("pair_probe", 0.06),
        ]
    )

    rng = random.Random(seed)
    txns = []
    for i in range(n_txns):
        kind = _pick_template(rng, mix)
        s = rng.randrange(1, s_count + 1)
        f = rng.randrange(1, 5)
        if kind == "get_subscriber":
            stmts = [_read("subscriber", sub_no=s)]
        elif kind == "get_access":
            stmts = [_read("access_info", sub_no=s, svc_kind=f)]
        elif kind == "update_location":
            stmts = [_write("subscriber", sub_no=s)]
        elif kind == "update_subscriber":
            stmts = [
                _write("subscriber", sub_no=s),
                _write("special_facility", sub_no=s),
            ]
        elif kind == "get_destination":
            stmts = [
                _read("special_facility", sub_no=s, svc_kind=f),
                _read("call_forwarding", sub_no=s, svc_kind=f),
            ]
        elif kind == "upsert_forwarding":
            stmts = [
                _read("special_facility", sub_no=s),
                _write(
                    "call_forwarding",
                    sub_no=s,
                    svc_kind=f,
                    window_hour=rng.randrange(0, 24),
                ),
            ]
        else:  # pair_probe: two adjacent subscriber ids
            s = rng.randrange(1, max(s_count, 2))
            stmts = [
                _read("subscriber", sub_no=s),
                _read("subscriber", sub_no=min(s + 1, s_count)),
            ]
        txns.append({"id": i, "statements": stmts})

    workload_doc = {"transactions": txns}
    _validate(schema_doc, workload_doc)
    return schema_doc, workload_doc


# --------------------------------------------------------------------------
# review/trust trace


def gen_epinions_like(
    users: int = 100, items: int = 60, n_txns: int = 600, seed: int = 0
) -> tuple[dict, dict]:
    """Review/trust trace whose hot pairs cross both n-to-n relations, so
    no single partitioning key keeps transactions on one node."""
    if users < 2 or items < 1:
        raise InputError("need at least 2 users and 1 item")
    if n_txns < 0:
        raise InputError("n_txns must be non-negative")

    schema_doc = {
        "relations": [
            {
                "name": "users",
                "cardinality": users,
                "attributes": [_int_attr("user_no", 1, users)],
                "primary_key": ["user_no"],
            },
            {
                "name": "items",
                "cardinality": items,
                "attributes": [_int_attr("item_no", 1, items)],
                "primary_key": ["item_no"],
            },
            {
                "name": "reviews",
                "cardinality": 4 * users,
                "attributes": [
                    _int_attr("item_no", 1, items),
                    _int_attr("rating", 1, 5),
                    _int_attr("reviewer_no", 1, users),
                ],
                "primary_key": ["reviewer_no", "item_no"],
                "foreign_keys": [
                    {"attrs": ["reviewer_no"], "references": "users"},
                    {"attrs": ["item_no"], "references": "items"},
                ],
            },
            {
                "name": "trust",
                "cardinality": 3 * users,
                "attributes": [
                    _int_attr("trustee_no", 1, users),
                    _int_attr("truster_no", 1, users),
                ],
                "primary_key": ["truster_no", "trustee_no"],
                "foreign_keys": [
                    {"attrs": ["truster_no"], "references": "users"},
                    {"attrs": ["trustee_no"], "references": "users"},
                ],
            },
        ]
    }

    mix = _cumulative(
        [
            ("review_write", 0.35),
            ("trust_write", 0.25),
            ("browse_item", 0.20),
            ("profile", 0.20),
        ]
    )

    rng = random.Random(seed)
    txns = []
    for i in range(n_txns):
        kind = _pick_template(rng, mix)
        u = rng.randrange(1, users + 1)
        it = rng.randrange(1, items + 1)
        if kind == "review_write":
            stmts = [
                _read("users", user_no=u),
                _read("items", item_no=it),
                _write("reviews", reviewer_no=u, item_no=it, rating=rng.randrange(1, 6)),
            ]
        elif kind == "trust_write":
            v = rng.randrange(1, users)
            if v >= u:
                v += 1
            stmts = [
                _read("users", user_no=u),
                _read("users", user_no=v),
                _write("trust", truster_no=u, trustee_no=v),
            ]
        elif kind == "browse_item":
            stmts = [
                _read("items", item_no=it),
                _read("reviews", item_no=it),
            ]
        else:  # profile
            stmts = [
                _read("users", user_no=u),
                _read("reviews", reviewer_no=u),
                _read("trust", truster_no=u),
            ]
        txns.append({"id": i, "statements": stmts})

    workload_doc = {"transactions": txns}
    _validate(schema_doc, workload_doc)
    return schema_doc, workload_doc


# --------------------------------------------------------------------------
# exhaustive oracle


def brute_force_min_cut(
    hg: Hypergraph, k: int, eps_size: float = 0.1, eps_access: float = 0.1
) -> tuple[int, Assignment]:
    """Exhaustive minimum cut over all labelings modulo label permutation.

    Returns the minimal cut among balance-satisfying labelings; when no
    labeling fits both caps, falls back to the unconstrained optimum and
    marks the assignment's balance_ok flag False.
    """
    n = hg.num_vertices
    if n == 0:
        raise InputError("hypergraph has no vertices")
    if n > 16:
        raise InputError(f"exhaustive search capped at 16 vertices, got {n}")
    if not 1 <= k <= 4:
        raise InputError(f"exhaustive search supports 1 <= k <= 4, got {k}")
    eptr, eind, ew, vsize, vacc = hg.csr()
    total_s = int(vsize.sum())
    total_a = int(vacc.sum())
    cap_s = capacity(total_s, k, eps_size)
    cap_a = capacity(total_a, k, eps_access)
    bal_cut, _any_cut, bal_parts = _core.brute_force(
        eptr, eind, ew, vsize, vacc, k, cap_s, cap_a
    )
    if bal_parts is not None:
        parts = [int(p) for p in bal_parts]
        cut = int(bal_cut)
        balanced = True
    else:
        # caps equal to the totals admit every labeling
        cut0, _cut1, parts0 = _core.brute_force(
            eptr, eind, ew, vsize, vacc, k, total_s, total_a
        )
        parts = [int(p) for p in parts0]
        cut = int(cut0)
        balanced = False
    size_loads, access_loads = hg.part_loads(parts, k)
    return cut, Assignment(parts, cut, size_loads, access_loads, cap_s, cap_a, balanced)
