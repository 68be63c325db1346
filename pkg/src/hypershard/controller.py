"""Iteration driver: partition, evaluate, refine, repeat.

Runs the cycle fully automatically or one step at a time with the user
choosing what to split. Tracks the best iteration seen so far ordered by
feasibility, then distributed-transaction count, then skew, then recency,
and freezes the winner into a lookup table on accept.

Each refinement replaces the working hypergraph with one REBUILT from the
refined tuple groups (not the splitter's structural image), so the cut of
any assignment stays equal to the workload's distributed-transaction
count at every iteration. The previous labels are carried over through
the split lineage: the warm candidate starts at exactly the previous cut
and never worsens it. A fresh partition of the rebuilt graph is computed
as a second candidate each cycle because warm-only refinement cannot
escape an infeasible region (its balance phase only applies moves that do
not hurt the cut); the better candidate by (feasible, balanced, cut,
skew) is adopted.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from .errors import InfeasibleError, InputError
from .evaluator import Report, evaluate
from .hypergraph import Hypergraph, build_hypergraph
from .lookup import LookupTable, build_table
from .minterm import MinTerm, compute_access, enumerate_minterms
from .model import Constraints, Schema, Workload
from .partitioner import Assignment, PartitionConfig, partition, repartition
from .refiner import is_splittable, rank_vertices, refine_graph

AUTOMATIC = "automatic"
INTERACTIVE = "interactive"

FRESH = "fresh"
RUNNING = "running"
AWAITING = "awaiting-user"
DONE = "done"


@dataclass
class SessionConfig:
    """Solver knobs not covered by the cluster constraints document."""

    seed: int = 0
    top_k: int = 20
    rank_mode: str = "size"

    def __post_init__(self):
        if not isinstance(self.seed, int):
            raise InputError("seed must be an integer")
        if not isinstance(self.top_k, int) or self.top_k < 1:
            raise InputError("top_k must be a positive integer")
        if self.rank_mode not in ("size", "ratio"):
            raise InputError(f"unknown rank mode {self.rank_mode!r}")


def config_from_dict(obj: object) -> SessionConfig:
    if obj is None:
        return SessionConfig()
    if not isinstance(obj, dict):
        raise InputError("config must be an object")
    known = {f.name for f in fields(SessionConfig)}
    unknown = set(obj) - known
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    return SessionConfig(**obj)


@dataclass
class IterationRecord:
    minterms: list[MinTerm]
    hypergraph: Hypergraph
    assignment: Assignment
    report: Report


@dataclass
class Session:
    schema: Schema
    workload: Workload
    constraints: Constraints
    config: SessionConfig
    mode: str = AUTOMATIC
    status: str = FRESH
    minterms: list[MinTerm] = field(default_factory=list)
    hypergraph: Hypergraph | None = None
    # labels for the current graph inherited from the last assignment
    inherited: list[int] | None = None
    history: list[IterationRecord] = field(default_factory=list)
    best_index: int | None = None
    table: LookupTable | None = None

    @property
    def best(self) -> IterationRecord | None:
        return None if self.best_index is None else self.history[self.best_index]


def new_session(
    schema: Schema,
    workload: Workload,
    constraints: Constraints,
    config: SessionConfig | None = None,
    mode: str = AUTOMATIC,
) -> Session:
    if mode not in (AUTOMATIC, INTERACTIVE):
        raise InputError(f"unknown mode {mode!r}")
    config = config or SessionConfig()
    minterms = enumerate_minterms(schema, workload)
    access = compute_access(schema, minterms, workload)
    hg = build_hypergraph(minterms, access)
    return Session(
        schema=schema,
        workload=workload,
        constraints=constraints,
        config=config,
        mode=mode,
        minterms=minterms,
        hypergraph=hg,
    )


def _violation_excess(report: Report) -> float:
    return sum(v.actual - v.limit for v in report.violations)


def _history_key(record: IterationRecord, index: int):
    r = record.report
    return (not r.feasible, _violation_excess(r), r.distributed_txn_count, r.sf, index)


def _candidate_key(asg: Assignment, report: Report):
    return (
        not report.feasible,
        _violation_excess(report),
        not asg.balance_ok,
        report.distributed_txn_count,
        report.sf,
    )


def _partition_config(session: Session) -> PartitionConfig:
    return PartitionConfig(
        k=session.constraints.k,
        eps_size=session.constraints.eps_size,
        eps_access=session.constraints.eps_access,
        seed=session.config.seed,
    )


def step(session: Session) -> Report:
    """Run one partition+evaluate cycle and pause for the user."""
    if session.status == DONE:
        raise InputError("session is done")
    if session.status == RUNNING:
        raise InputError("an iteration is already in flight")
    if len(session.history) >= session.constraints.max_iterations:
        raise InputError(
            f"iteration budget of {session.constraints.max_iterations} exhausted"
        )
    session.status = RUNNING
    try:
        cfg = _partition_config(session)
        hg = session.hypergraph
        idx = len(session.history) + 1
        total = len(session.workload.transactions)
        prev = session.history[-1] if session.history else None

        if prev is None:
            chosen = partition(hg, cfg)
            report = evaluate(hg, chosen, session.constraints, total, idx)
        else:
            warm = repartition(hg, cfg, session.inherited)
            fresh = partition(hg, cfg)
            warm_report = evaluate(hg, warm, session.constraints, total, idx)
            fresh_report = evaluate(hg, fresh, session.constraints, total, idx)
            if _candidate_key(warm, warm_report) <= _candidate_key(fresh, fresh_report):
                chosen, report, adopted = warm, warm_report, "warm"
            else:
                chosen, report, adopted = fresh, fresh_report, "fresh"
            report.extensions["warm_start"] = {
                "start_cut": hg.cut_weight(session.inherited),
                "warm_cut": warm.cut,
                "fresh_cut": fresh.cut,
                "adopted": adopted,
            }
            report.extensions["diff"] = {
                "cut_delta": report.distributed_txn_count
                - prev.report.distributed_txn_count,
                "sf_delta": report.sf - prev.report.sf,
                "feasible_before": prev.report.feasible,
                "feasible_now": report.feasible,
            }

        record = IterationRecord(session.minterms, hg, chosen, report)
        session.history.append(record)
        session.inherited = list(chosen.parts)
        i = len(session.history) - 1
        if session.best_index is None or _history_key(record, i) < _history_key(
            session.history[session.best_index], session.best_index
        ):
            session.best_index = i
        session.status = AWAITING
        return report
    except BaseException:
        if session.status == RUNNING:
            session.status = AWAITING if session.history else FRESH
        raise


def _apply_refine(session: Session, vertex_ids: list[int] | None) -> None:
    _img, minterms, parent = refine_graph(
        session.hypergraph,
        session.minterms,
        session.schema,
        top_k=session.config.top_k,
        overrides=vertex_ids,
        rank_mode=session.config.rank_mode,
    )
    # rebuild from the refined groups: exact access sets, exact cut identity
    access = compute_access(session.schema, minterms, session.workload)
    session.hypergraph = build_hypergraph(minterms, access)
    session.minterms = minterms
    last = session.history[-1].assignment
    session.inherited = [last.parts[parent[j]] for j in range(len(minterms))]


def user_action(
    session: Session, action: str, vertex_ids: list[int] | None = None
) -> str:
    """Apply one of refine / accept / abort; returns the new status."""
    if session.status != AWAITING:
        raise InputError(f"cannot apply {action!r} while session is {session.status!r}")
    if action == "refine":
        _apply_refine(session, vertex_ids)
        return session.status
    if action == "accept":
        best = session.best
        if not best.report.feasible:
            raise InfeasibleError(best.report)
        session.table = build_table(
            best.minterms, list(best.assignment.parts), session.constraints.k
        )
        session.status = DONE
        return session.status
    if action == "abort":
        session.status = DONE
        return session.status
    raise InputError(f"unknown action {action!r}")


def run_auto(
    schema: Schema,
    workload: Workload,
    constraints: Constraints,
    config: SessionConfig | None = None,
) -> tuple[Assignment, Report, LookupTable]:
    """Automatic loop to the iteration budget or convergence.

    Continues while the latest report is infeasible or while the latest
    iteration improved the best; stops when feasible and non-improving.
    Raises InfeasibleError (carrying the least-violating report) when no
    iteration satisfied the constraints.
    """
    session = new_session(schema, workload, constraints, config, mode=AUTOMATIC)
    budget = session.constraints.max_iterations
    while True:
        report = step(session)
        done = len(session.history)
        if done >= budget:
            break
        if report.feasible and session.best_index != done - 1:
            break
        user_action(session, "refine")
    best = session.best
    if not best.report.feasible:
        session.status = DONE
        raise InfeasibleError(best.report)
    user_action(session, "accept")
    return best.assignment, best.report, session.table


def graph_summary(session: Session, limit: int = 20) -> dict:
    """Current graph at a glance: split candidates, loads, latest diff."""
    hg = session.hypergraph
    candidates = []
    for rank, v in enumerate(rank_vertices(hg, session.config.rank_mode)):
        if len(candidates) >= limit:
            break
        m = session.minterms[v]
        candidates.append(
            {
                "rank": rank,
                "vertex": v,
                "relation": m.relation,
                "size": hg.size_weights[v],
                "access": hg.access_weights[v],
                "splittable": is_splittable(m, session.schema),
            }
        )
    last = session.history[-1] if session.history else None
    per_node = []
    if last is not None:
        per_node = [
            {"node": i, "size_load": s, "access_load": a}
            for i, (s, a) in enumerate(
                zip(last.report.size_loads, last.report.access_loads)
            )
        ]
    return {
        "vertex_count": hg.num_vertices,
        "edge_count": hg.num_edges,
        "iteration": len(session.history),
        "status": session.status,
        "split_candidates": candidates,
        "per_node": per_node,
        "diff": (last.report.extensions.get("diff") if last else None),
    }


def session_report(session: Session) -> dict:
    """All iteration reports plus best index, for the report endpoint."""
    return {
        "status": session.status,
        "mode": session.mode,
        "best_index": session.best_index,
        "reports": [rec.report.to_dict() for rec in session.history],
    }
