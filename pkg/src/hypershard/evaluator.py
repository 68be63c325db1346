"""Placement quality evaluation: skew, feasibility, distribution report.

The skew factor blends per-node deviation from the mean in both dimensions:
    sf = sum_i(alpha*(s_i - s_mean)^2 + beta*(t_i - t_mean)^2) / n
with s_i the stored-tuple load and t_i the access load of node i. The
components dsf and wsf are the unweighted population variances of s and t,
so sf = alpha*dsf + beta*wsf holds exactly.

Feasibility is a hard per-node capacity check (storage and processing),
evaluated only when capacities are configured. Tolerance-based balance,
coefficients of variation, and per-node incident cut weight are reported
as soft diagnostics under "extensions".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .hypergraph import Hypergraph
from .model import Constraints
from .partitioner import Assignment


@dataclass
class Violation:
    node: int
    kind: str  # "storage" or "processing"
    limit: float
    actual: float

    def to_dict(self) -> dict:
        return {"node": self.node, "kind": self.kind, "limit": self.limit, "actual": self.actual}


@dataclass
class Report:
    distributed_txn_count: int
    total_txn_count: int
    distributed_fraction: float
    size_loads: list[int]
    access_loads: list[int]
    sf: float
    dsf: float
    wsf: float
    violations: list[Violation]
    feasible: bool
    iteration_index: int
    extensions: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "distributed_txn_count": self.distributed_txn_count,
            "total_txn_count": self.total_txn_count,
            "distributed_fraction": self.distributed_fraction,
            "per_node": [
                {"node": i, "size_load": s, "access_load": a}
                for i, (s, a) in enumerate(zip(self.size_loads, self.access_loads))
            ],
            "sf": self.sf,
            "dsf": self.dsf,
            "wsf": self.wsf,
            "violations": [v.to_dict() for v in self.violations],
            "feasible": self.feasible,
            "iteration_index": self.iteration_index,
            "extensions": self.extensions,
        }


def skew_factor(size_loads, access_loads, alpha: float, beta: float) -> float:
    """Mean of weighted squared deviations from the per-dimension means."""
    n = len(size_loads)
    if n == 0:
        return 0.0
    s_mean = sum(size_loads) / n
    t_mean = sum(access_loads) / n
    total = 0.0
    for s, t in zip(size_loads, access_loads):
        total += alpha * (s - s_mean) ** 2 + beta * (t - t_mean) ** 2
    return total / n


def data_skew(size_loads) -> float:
    """Population variance of the per-node storage loads."""
    return skew_factor(size_loads, [0] * len(size_loads), 1.0, 0.0)


def workload_skew(access_loads) -> float:
    """Population variance of the per-node access loads."""
    return skew_factor([0] * len(access_loads), access_loads, 0.0, 1.0)


def _cv(loads) -> float:
    """Coefficient of variation (population); 0 for a zero mean."""
    n = len(loads)
    if n == 0:
        return 0.0
    mean = sum(loads) / n
    if mean == 0:
        return 0.0
    var = sum((x - mean) ** 2 for x in loads) / n
    return math.sqrt(var) / mean


def evaluate(
    hg: Hypergraph,
    assignment: Assignment,
    constraints: Constraints,
    total_txn_count: int,
    iteration_index: int = 0,
) -> Report:
    """Build the full quality report for one placement.

    The distributed transaction count equals the hypergraph cut plus nothing
    else: transactions whose access set stays on one node are local by
    construction, and each cut edge accounts for exactly its weight in
    transactions.
    """
    k = constraints.k
    cut = hg.cut_weight(assignment.parts)
    size_loads, access_loads = hg.part_loads(assignment.parts, k)

    violations: list[Violation] = []
    if constraints.storage_capacity:
        for node, (limit, actual) in enumerate(zip(constraints.storage_capacity, size_loads)):
            if actual > limit:
                violations.append(Violation(node, "storage", limit, actual))
    if constraints.processing_capacity:
        for node, (limit, actual) in enumerate(zip(constraints.processing_capacity, access_loads)):
            if actual > limit:
                violations.append(Violation(node, "processing", limit, actual))

    sf = skew_factor(size_loads, access_loads, constraints.alpha, constraints.beta)
    dsf = data_skew(size_loads)
    wsf = workload_skew(access_loads)

    return Report(
        distributed_txn_count=cut,
        total_txn_count=total_txn_count,
        distributed_fraction=(cut / total_txn_count) if total_txn_count else 0.0,
        size_loads=size_loads,
        access_loads=access_loads,
        sf=sf,
        dsf=dsf,
        wsf=wsf,
        violations=violations,
        feasible=not violations,
        iteration_index=iteration_index,
        extensions={
            "cv_size": _cv(size_loads),
            "cv_access": _cv(access_loads),
            "balance_ok": assignment.balance_ok,
            "per_node_incident_cut": hg.incident_cut_per_part(assignment.parts, k),
        },
    )
