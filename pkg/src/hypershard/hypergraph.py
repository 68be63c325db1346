"""Access hypergraph over tuple groups.

Vertices are the min-terms (dense ids), carrying two weights: estimated
tuple count and transaction access count. Hyperedges are the distinct
multi-group access sets of the workload, weighted by how many transactions
share the set. Transactions touching at most one group produce no edge;
they are tallied so that sum(edge weights) + singleton_edge_count equals
the transaction count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _core
from .minterm import AccessList, MinTerm


@dataclass
class Hypergraph:
    size_weights: list[int]
    access_weights: list[int]
    edges: list[tuple[tuple[int, ...], int]]  # (sorted vertex ids, weight)
    singleton_edge_count: int
    relation_of: list[str]
    _csr: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def num_vertices(self) -> int:
        return len(self.size_weights)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def csr(self):
        """(eptr, eind, ew, vsize, vacc) as int64 arrays; cached."""
        if self._csr is None:
            eptr = np.zeros(len(self.edges) + 1, dtype=np.int64)
            eind = np.zeros(sum(len(vs) for vs, _ in self.edges), dtype=np.int64)
            ew = np.zeros(len(self.edges), dtype=np.int64)
            pos = 0
            for e, (vs, w) in enumerate(self.edges):
                ew[e] = w
                for v in vs:
                    eind[pos] = v
                    pos += 1
                eptr[e + 1] = pos
            self._csr = (
                eptr,
                eind,
                ew,
                np.asarray(self.size_weights, dtype=np.int64),
                np.asarray(self.access_weights, dtype=np.int64),
            )
        return self._csr

    def cut_weight(self, parts) -> int:
        eptr, eind, ew, _, _ = self.csr()
        return int(_core.cut_weight(eptr, eind, ew, np.asarray(parts, dtype=np.int64)))

    def part_loads(self, parts, k: int) -> tuple[list[int], list[int]]:
        size = [0] * k
        acc = [0] * k
        for v in range(self.num_vertices):
            size[parts[v]] += self.size_weights[v]
            acc[parts[v]] += self.access_weights[v]
        return size, acc

    def incident_cut_per_part(self, parts, k: int) -> list[int]:
        """Per part: total weight of cut edges touching it (diagnostic)."""
        out = [0] * k
        for vs, w in self.edges:
            touched = {parts[v] for v in vs}
            if len(touched) > 1:
                for p in touched:
                    out[p] += w
        return out


def build_hypergraph(minterms: list[MinTerm], access: AccessList) -> Hypergraph:
    n = len(minterms)
    for i, m in enumerate(minterms):
        if m.id != i:
            raise ValueError("min-term ids must be dense and ordered")
    weights: dict[tuple[int, ...], int] = {}
    singletons = 0
    for _txn, mids in access.txn_accesses:
        if len(mids) <= 1:
            singletons += 1
            continue
        weights[mids] = weights.get(mids, 0) + 1
    edges = sorted(weights.items())
    return Hypergraph(
        size_weights=[m.size for m in minterms],
        access_weights=[access.counts.get(m.id, 0) for m in minterms],
        edges=edges,
        singleton_edge_count=singletons,
        relation_of=[m.relation for m in minterms],
    )


def dump_text(hg: Hypergraph) -> str:
    """Plain-text dump: header 'E V', edge lines 'w v...', vertex lines 's a'."""
    lines = [f"{hg.num_edges} {hg.num_vertices}"]
    for vs, w in hg.edges:
        lines.append(" ".join([str(w)] + [str(v) for v in vs]))
    for v in range(hg.num_vertices):
        lines.append(f"{hg.size_weights[v]} {hg.access_weights[v]}")
    return "\n".join(lines) + "\n"
