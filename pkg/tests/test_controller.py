"""Session lifecycle, warm-start soundness, best tracking, auto loop."""

import pytest

from hypershard.benchgen import gen_tatp_like
from hypershard.controller import (
    AUTOMATIC,
    AWAITING,
    DONE,
    FRESH,
    SessionConfig,
    _history_key,
    config_from_dict,
    graph_summary,
    new_session,
    run_auto,
    session_report,
    step,
    user_action,
)
from hypershard.errors import InfeasibleError, InputError
from hypershard.evaluator import Report
from hypershard.lookup import count_distributed
from hypershard.model import (
    constraints_from_dict,
    schema_from_dict,
    workload_from_dict,
)


def _tatp_session(n_txns=150, constraints=None, **cfg):
    schema_doc, workload_doc = gen_tatp_like(subscribers=60, n_txns=n_txns, seed=0)
    schema = schema_from_dict(schema_doc)
    workload = workload_from_dict(workload_doc, schema)
    constraints = constraints_from_dict(constraints or {"k": 2, "eps_size": 0.3, "eps_access": 0.3})
    return schema, workload, new_session(
        schema, workload, constraints, SessionConfig(**cfg)
    )


def _capacity_fixture(storage_cap, splittable=True, max_iterations=8):
    # "events" is never referenced, so it collapses to one universal region
    # holding all 1000 tuples; only splitting can fit it under the caps.
    day = (
        {"name": "day", "kind": "integer", "distinct": 10, "min": 1, "max": 10}
        if splittable
        else {"name": "day", "kind": "integer", "distinct": 1, "min": 1, "max": 1}
    )
    schema = schema_from_dict(
        {
            "relations": [
                {
                    "name": "events",
                    "cardinality": 1000,
                    "primary_key": ["day"],
                    "foreign_keys": [],
                    "attributes": [day],
                },
                {
                    "name": "tiny",
                    "cardinality": 10,
                    "primary_key": ["id"],
                    "foreign_keys": [],
                    "attributes": [
                        {"name": "id", "kind": "integer", "distinct": 10, "min": 1, "max": 10}
                    ],
                },
            ]
        }
    )
    txns = []
    for i in range(12):
        txns.append(
            {
                "id": i,
                "statements": [
                    {
                        "relation": "tiny",
                        "access": "read",
                        "predicates": [{"attr": "id", "op": "eq", "value": (i % 4) + 1}],
                    }
                ],
            }
        )
    workload = workload_from_dict({"transactions": txns}, schema)
    constraints = constraints_from_dict(
        {
            "k": 2,
            "eps_size": 0.2,
            "eps_access": 0.5,
            "max_iterations": max_iterations,
            "storage_capacity": [storage_cap, storage_cap],
            "processing_capacity": [50, 50],
        }
    )
    return schema, workload, constraints


def test_fresh_session_shape():
    _, _, session = _tatp_session()
    assert session.status == FRESH
    assert session.mode == AUTOMATIC
    assert session.history == []
    assert session.best is None
    assert session.table is None
    assert session.hypergraph.num_vertices == len(session.minterms)


def test_new_session_rejects_unknown_mode():
    schema, workload, session = _tatp_session()
    with pytest.raises(InputError):
        new_session(schema, workload, session.constraints, mode="batch")


def test_first_step_awaits_user_without_diff():
    _, _, session = _tatp_session()
    report = step(session)
    assert session.status == AWAITING
    assert report.iteration_index == 1
    assert "diff" not in report.extensions
    assert "warm_start" not in report.extensions
    assert len(session.history) == 1
    assert session.best_index == 0


def test_second_step_reports_diff_and_warm_start():
    _, _, session = _tatp_session()
    first = step(session)
    second = step(session)  # no refine in between: same graph, same labels
    ws = second.extensions["warm_start"]
    assert ws["start_cut"] == first.distributed_txn_count
    assert ws["warm_cut"] <= ws["start_cut"]
    assert ws["adopted"] in ("warm", "fresh")
    diff = second.extensions["diff"]
    assert diff["cut_delta"] == second.distributed_txn_count - first.distributed_txn_count
    assert diff["feasible_before"] is True


def test_warm_start_survives_refinement():
    # after a split the rebuilt graph under inherited labels must start at
    # exactly the previous cut, and the warm candidate must not worsen it
    _, _, session = _tatp_session()
    prev = step(session)
    for _ in range(3):
        user_action(session, "refine")
        report = step(session)
        ws = report.extensions["warm_start"]
        assert ws["start_cut"] == prev.distributed_txn_count
        assert ws["warm_cut"] <= ws["start_cut"]
        prev = report


def test_step_rejected_when_done_or_fresh_action():
    _, _, session = _tatp_session()
    with pytest.raises(InputError):
        user_action(session, "refine")  # nothing to refine against yet
    step(session)
    user_action(session, "abort")
    assert session.status == DONE
    with pytest.raises(InputError):
        step(session)


def test_unknown_action_rejected():
    _, _, session = _tatp_session()
    step(session)
    with pytest.raises(InputError):
        user_action(session, "merge")


def test_accept_freezes_table_matching_cut():
    schema, workload, session = _tatp_session()
    step(session)
    user_action(session, "accept")
    assert session.status == DONE
    assert session.table is not None
    best = session.best
    routed = count_distributed(session.table, schema, workload)
    assert routed == best.report.distributed_txn_count


def test_accept_infeasible_raises_with_report():
    schema, workload, constraints = _capacity_fixture(600)
    session = new_session(schema, workload, constraints)
    report = step(session)
    assert not report.feasible
    with pytest.raises(InfeasibleError) as err:
        user_action(session, "accept")
    assert err.value.report.violations
    assert session.status == AWAITING  # still allowed to refine or abort


def test_refine_override_validation_leaves_session_intact():
    _, _, session = _tatp_session()
    step(session)
    before = session.hypergraph.num_vertices
    with pytest.raises(InputError):
        user_action(session, "refine", vertex_ids=[before + 5])
    assert session.hypergraph.num_vertices == before
    assert session.status == AWAITING


def test_budget_caps_interactive_steps():
    schema, workload, constraints = _capacity_fixture(600, max_iterations=2)
    session = new_session(schema, workload, constraints)
    step(session)
    user_action(session, "refine")
    step(session)
    with pytest.raises(InputError):
        step(session)


def test_run_auto_splits_oversized_region_within_three_iterations():
    schema, workload, constraints = _capacity_fixture(600, max_iterations=3)
    assignment, report, table = run_auto(schema, workload, constraints)
    assert report.feasible
    assert report.iteration_index <= 3
    assert report.distributed_txn_count == 0  # single-statement transactions
    assert max(report.size_loads) <= 600
    assert count_distributed(table, schema, workload) == report.distributed_txn_count
    assert len(assignment.parts) >= 2


def test_run_auto_without_feasible_iteration_raises():
    schema, workload, constraints = _capacity_fixture(
        600, splittable=False, max_iterations=3
    )
    with pytest.raises(InfeasibleError) as err:
        run_auto(schema, workload, constraints)
    report = err.value.report
    assert report.violations
    assert any(v.kind == "storage" for v in report.violations)


def test_run_auto_on_benchmark_keystone():
    schema_doc, workload_doc = gen_tatp_like(subscribers=60, n_txns=150, seed=0)
    schema = schema_from_dict(schema_doc)
    workload = workload_from_dict(workload_doc, schema)
    constraints = constraints_from_dict(
        {"k": 2, "eps_size": 0.3, "eps_access": 0.3, "max_iterations": 4}
    )
    assignment, report, table = run_auto(schema, workload, constraints)
    assert report.feasible
    assert report.iteration_index <= 4
    assert count_distributed(table, schema, workload) == report.distributed_txn_count
    assert assignment.cut == report.distributed_txn_count


def test_graph_summary_shape():
    _, _, session = _tatp_session()
    fresh = graph_summary(session)
    assert fresh["iteration"] == 0
    assert fresh["per_node"] == []
    assert fresh["diff"] is None
    assert len(fresh["split_candidates"]) <= 20
    step(session)
    summary = graph_summary(session)
    assert summary["vertex_count"] == session.hypergraph.num_vertices
    assert summary["iteration"] == 1
    assert len(summary["per_node"]) == session.constraints.k
    for cand in summary["split_candidates"]:
        assert set(cand) == {"rank", "vertex", "relation", "size", "access", "splittable"}
    step(session)
    assert graph_summary(session)["diff"] is not None


def test_session_report_lists_history():
    _, _, session = _tatp_session()
    step(session)
    step(session)
    payload = session_report(session)
    assert payload["status"] == AWAITING
    assert len(payload["reports"]) == 2
    assert payload["best_index"] in (0, 1)
    assert payload["reports"][0]["iteration_index"] == 1


def test_config_from_dict_validation():
    assert config_from_dict(None) == SessionConfig()
    assert config_from_dict({"seed": 3}).seed == 3
    with pytest.raises(InputError):
        config_from_dict({"seed": 3, "bogus": 1})
    with pytest.raises(InputError):
        config_from_dict([1, 2])
    with pytest.raises(InputError):
        SessionConfig(rank_mode="weight")


def _report(feasible, cut, sf, violations=()):
    return Report(
        distributed_txn_count=cut,
        total_txn_count=100,
        distributed_fraction=cut / 100,
        size_loads=[1, 1],
        access_loads=[1, 1],
        sf=sf,
        dsf=sf,
        wsf=sf,
        violations=list(violations),
        feasible=feasible,
        iteration_index=1,
    )


def test_best_ranking_feasibility_then_cut_then_skew_then_age():
    class Rec:
        def __init__(self, report):
            self.report = report

    feas_small = _history_key(Rec(_report(True, 5, 2.0)), 3)
    feas_big = _history_key(Rec(_report(True, 9, 0.1)), 0)
    infeas = _history_key(Rec(_report(False, 0, 0.0)), 1)
    assert feas_small < feas_big < infeas
    tie_a = _history_key(Rec(_report(True, 5, 1.0)), 0)
    tie_b = _history_key(Rec(_report(True, 5, 1.0)), 2)
    assert tie_a < tie_b
    skew = _history_key(Rec(_report(True, 5, 3.0)), 0)
    assert tie_b < skew
