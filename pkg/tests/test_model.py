"""Document parsing, validation, and selectivity estimation."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from hypershard import model
from hypershard.errors import DocumentSemanticError, DocumentSyntaxError

from .oracles import counted_range_selectivity


def make_attr(**kw):
    base = dict(name="a", kind=model.INTEGER, min=1, max=100, distinct=100, histogram=None)
    base.update(kw)
    return model.Attribute(**base)


SCHEMA_DOC = {
    "relations": [
        {
            "name": "part",
            "cardinality": 1000,
            "primary_key": ["part_no"],
            "foreign_keys": [],
            "attributes": [
                {"name": "part_no", "kind": "integer", "min": 1, "max": 1000, "distinct": 1000},
                {"name": "grade", "kind": "categorical", "distinct": 5},
                {"name": "weight", "kind": "real", "min": 0.0, "max": 10.0, "distinct": 500},
            ],
        },
        {
            "name": "supply",
            "cardinality": 5000,
            "primary_key": ["supply_no"],
            "foreign_keys": [{"attrs": ["ref_part"], "references": "part"}],
            "attributes": [
                {"name": "supply_no", "kind": "integer", "min": 1, "max": 5000, "distinct": 5000},
                {"name": "ref_part", "kind": "integer", "min": 1, "max": 1000, "distinct": 1000},
            ],
        },
    ]
}

WORKLOAD_DOC = {
    "transactions": [
        {
            "id": "t1",
            "statements": [
                {
                    "relation": "part",
                    "access": "read",
                    "predicates": [{"attr": "part_no", "op": "eq", "value": 7}],
                },
                {
                    "relation": "supply",
                    "access": "write",
                    "predicates": [{"attr": "ref_part", "op": "eq", "value": 7}],
                },
            ],
        },
        {
            "id": "t2",
            "statements": [
                {
                    "relation": "part",
                    "access": "read",
                    "predicates": [
                        {"attr": "part_no", "op": "lt", "value": 500},
                        {"attr": "grade", "op": "eq", "value": "A"},
                    ],
                }
            ],
        },
    ]
}


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def test_schema_roundtrip():
    schema = model.schema_from_dict(SCHEMA_DOC)
    text = model.serialize_schema(schema)
    again = model.parse_schema(text)
    assert again == schema
    assert model.serialize_schema(again) == text


def test_workload_roundtrip():
    schema = model.schema_from_dict(SCHEMA_DOC)
    wl = model.workload_from_dict(WORKLOAD_DOC, schema)
    text = model.serialize_workload(wl)
    again = model.parse_workload(text, schema)
    assert again == wl
    assert model.serialize_workload(again) == text


def test_constraints_roundtrip_and_defaults():
    c = model.constraints_from_dict({"k": 4})
    assert c.eps_size == 0.10 and c.eps_access == 0.10
    assert c.alpha == 0.5 and c.beta == 0.5
    assert c.max_iterations == 8
    full = model.constraints_from_dict(
        {
            "k": 2,
            "eps_size": 0.2,
            "eps_access": 0.3,
            "alpha": 0.7,
            "beta": 0.3,
            "max_iterations": 5,
            "storage_capacity": [100, 100],
            "processing_capacity": [50, 50],
        }
    )
    again = model.parse_constraints(model.serialize_constraints(full))
    assert again == full


def test_syntax_error_carries_position():
    with pytest.raises(DocumentSyntaxError) as exc:
        model.parse_schema('{"relations": [,]}')
    assert exc.value.line == 1
    assert exc.value.column is not None


@pytest.mark.parametrize(
    "mutate,invariant",
    [
        (lambda d: d["relations"].append(dict(d["relations"][0])), "relation-unique"),
        (lambda d: d["relations"][0].update(cardinality=-5), "relation-cardinality"),
        (lambda d: d["relations"][0].update(primary_key=["nope"]), "primary-key-attrs"),
        (lambda d: d["relations"][0]["attributes"].append(
            {"name": "part_no", "kind": "integer", "min": 0, "max": 1, "distinct": 1}
        ), "attribute-unique"),
        (lambda d: d["relations"][0]["attributes"][0].update(min=2000), "attribute-bounds"),
        (lambda d: d["relations"][0]["attributes"][0].update(distinct=0), "attribute-distinct"),
        (lambda d: d["relations"][1]["foreign_keys"][0].update(references="ghost"),
         "foreign-key-target"),
    ],
)
def test_schema_semantic_errors(mutate, invariant):
    doc = json.loads(json.dumps(SCHEMA_DOC))
    mutate(doc)
    with pytest.raises(DocumentSemanticError) as exc:
        model.schema_from_dict(doc)
    assert exc.value.invariant == invariant


def test_fk_cycle_rejected_but_self_reference_allowed():
    doc = json.loads(json.dumps(SCHEMA_DOC))
    # self-reference: fine
    doc["relations"][0]["foreign_keys"] = [{"attrs": ["part_no"], "references": "part"}]
    model.schema_from_dict(doc)
    # two-relation cycle: rejected
    doc["relations"][0]["foreign_keys"] = [{"attrs": ["part_no"], "references": "supply"}]
    with pytest.raises(DocumentSemanticError) as exc:
        model.schema_from_dict(doc)
    assert exc.value.invariant == "foreign-key-acyclic"


def test_histogram_validation():
    doc = json.loads(json.dumps(SCHEMA_DOC))
    attr = doc["relations"][0]["attributes"][0]
    attr["histogram"] = [
        {"lo": 1, "hi": 500, "fraction": 0.5},
        {"lo": 501, "hi": 1000, "fraction": 0.5},
    ]
    model.schema_from_dict(doc)  # valid
    attr["histogram"][1]["fraction"] = 0.6
    with pytest.raises(DocumentSemanticError) as exc:
        model.schema_from_dict(doc)
    assert exc.value.invariant == "histogram-mass"
    attr["histogram"][1].update(fraction=0.5, lo=400)
    with pytest.raises(DocumentSemanticError) as exc:
        model.schema_from_dict(doc)
    assert exc.value.invariant == "histogram-order"


@pytest.mark.parametrize(
    "mutate,invariant",
    [
        (lambda d: d["transactions"][0]["statements"][0].update(relation="ghost"),
         "statement-relation"),
        (lambda d: d["transactions"][0]["statements"][0].update(access="scan"),
         "statement-access"),
        (lambda d: d["transactions"][0]["statements"][0]["predicates"][0].update(attr="ghost"),
         "predicate-attr"),
        (lambda d: d["transactions"][0]["statements"][0]["predicates"][0].update(op="like"),
         "predicate-op"),
        (lambda d: d["transactions"][0]["statements"][0]["predicates"][0].update(value="seven"),
         "predicate-value-kind"),
        (lambda d: d["transactions"][1]["statements"][0]["predicates"][1].update(op="lt"),
         "predicate-range-kind"),
        (lambda d: d["transactions"].append(dict(d["transactions"][0])), "transaction-unique"),
    ],
)
def test_workload_semantic_errors(mutate, invariant):
    schema = model.schema_from_dict(SCHEMA_DOC)
    doc = json.loads(json.dumps(WORKLOAD_DOC))
    mutate(doc)
    with pytest.raises(DocumentSemanticError) as exc:
        model.workload_from_dict(doc, schema)
    assert exc.value.invariant == invariant


def test_bool_is_not_an_integer_constant():
    schema = model.schema_from_dict(SCHEMA_DOC)
    doc = json.loads(json.dumps(WORKLOAD_DOC))
    doc["transactions"][0]["statements"][0]["predicates"][0]["value"] = True
    with pytest.raises(DocumentSemanticError):
        model.workload_from_dict(doc, schema)


# ---------------------------------------------------------------------------
# selectivity
# ---------------------------------------------------------------------------

SKEWED = make_attr(
    histogram=(
        model.Bucket(1, 10, 0.25),
        model.Bucket(11, 20, 0.25),
        model.Bucket(21, 60, 0.25),
        model.Bucket(61, 100, 0.25),
    )
)


def test_equality_selectivity_is_inverse_distinct():
    a = make_attr(distinct=40)
    assert model.selectivity(a, "eq", 7) == pytest.approx(1 / 40)
    assert model.selectivity(a, "ne", 7) == pytest.approx(1 - 1 / 40)


def test_equality_ignores_histogram():
    assert model.selectivity(SKEWED, "eq", 5) == pytest.approx(1 / 100)


def test_uniform_integer_ranges():
    a = make_attr()
    # frozen from the point-population oracle
    assert model.selectivity(a, "lt", 25) == pytest.approx(0.24)
    assert model.selectivity(a, "ge", 25) == pytest.approx(0.76)
    assert model.selectivity(a, "le", 25) == pytest.approx(0.25)
    assert model.selectivity(a, "gt", 25) == pytest.approx(0.75)


def test_equidepth_histogram_bucket_boundary():
    # frozen from the point-population oracle: first two buckets = 0.50 exactly
    assert model.selectivity(SKEWED, "le", 20) == pytest.approx(0.50)


def test_equidepth_histogram_interpolation():
    # frozen from the oracle: 0.25 + 0.25 + 0.25 * 20/40 = 0.625
    assert model.selectivity(SKEWED, "lt", 41) == pytest.approx(0.625)
    assert model.selectivity(SKEWED, "gt", 60) == pytest.approx(0.25)
    assert model.selectivity(SKEWED, "ge", 21) == pytest.approx(0.50)


def test_out_of_domain_constants_clamp():
    a = make_attr()
    assert model.selectivity(a, "lt", -5) == 0.0
    assert model.selectivity(a, "le", 1000) == 1.0
    assert model.selectivity(SKEWED, "lt", 1) == 0.0
    assert model.selectivity(SKEWED, "le", 100) == 1.0


@given(st.integers(min_value=1, max_value=100))
def test_range_selectivity_matches_oracle_uniform(c):
    a = make_attr()
    for op in model.RANGE_OPS:
        assert model.selectivity(a, op, c) == pytest.approx(
            counted_range_selectivity(a, op, c), abs=1e-12
        )


@given(st.integers(min_value=1, max_value=100))
def test_range_selectivity_matches_oracle_histogram(c):
    for op in model.RANGE_OPS:
        assert model.selectivity(SKEWED, op, c) == pytest.approx(
            counted_range_selectivity(SKEWED, op, c), abs=1e-9
        )


@given(st.integers(min_value=1, max_value=100))
def test_complement_identity(c):
    # sel(A < c) + sel(A >= c) == 1 for in-domain constants
    for attr in (make_attr(), SKEWED):
        assert model.selectivity(attr, "lt", c) + model.selectivity(attr, "ge", c) == (
            pytest.approx(1.0, abs=1e-9)
        )


def test_real_attribute_ranges():
    a = make_attr(kind=model.REAL, min=0.0, max=10.0, distinct=1000)
    assert model.selectivity(a, "lt", 2.5) == pytest.approx(0.25)
    assert model.selectivity(a, "ge", 7.5) == pytest.approx(0.25)


def test_categorical_range_raises():
    a = model.Attribute("grade", model.CATEGORICAL, distinct=5)
    with pytest.raises(ValueError):
        model.selectivity(a, "lt", "A")


# ---------------------------------------------------------------------------
# access ranking
# ---------------------------------------------------------------------------


def test_attribute_access_ranking_counts_statements_not_predicates():
    schema = model.schema_from_dict(SCHEMA_DOC)
    doc = {
        "transactions": [
            {
                "id": 1,
                "statements": [
                    {
                        "relation": "part",
                        "access": "read",
                        # two predicates on part_no in ONE statement: counts once
                        "predicates": [
                            {"attr": "part_no", "op": "ge", "value": 1},
                            {"attr": "part_no", "op": "le", "value": 10},
                            {"attr": "grade", "op": "eq", "value": "A"},
                        ],
                    },
                ],
            },
            {
                "id": 2,
                "statements": [
                    {
                        "relation": "part",
                        "access": "read",
                        "predicates": [{"attr": "grade", "op": "eq", "value": "B"}],
                    }
                ],
            },
        ]
    }
    wl = model.workload_from_dict(doc, schema)
    assert model.attribute_access_ranking(wl, "part") == ["grade", "part_no"]
    assert model.attribute_access_ranking(wl, "supply") == []


def test_ranking_tie_broken_by_name():
    schema = model.schema_from_dict(SCHEMA_DOC)
    doc = {
        "transactions": [
            {
                "id": 1,
                "statements": [
                    {
                        "relation": "part",
                        "access": "read",
                        "predicates": [
                            {"attr": "weight", "op": "lt", "value": 5.0},
                            {"attr": "grade", "op": "eq", "value": "A"},
                        ],
                    }
                ],
            }
        ]
    }
    wl = model.workload_from_dict(doc, schema)
    assert model.attribute_access_ranking(wl, "part") == ["grade", "weight"]


def test_constraints_weights_must_sum_to_one():
    with pytest.raises(DocumentSemanticError) as exc:
        model.constraints_from_dict({"k": 2, "alpha": 0.7, "beta": 0.7})
    assert exc.value.invariant == "constraints-weights"
    # programmatic construction enforces the same invariant
    with pytest.raises(DocumentSemanticError):
        model.Constraints(k=2, alpha=1.0, beta=0.5)
    with pytest.raises(DocumentSemanticError):
        model.Constraints(k=2, storage_capacity=(10.0,))
    model.Constraints(k=2, alpha=0.2, beta=0.8)
