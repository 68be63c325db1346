"""Time the compiled kernels against their pure-Python twins.

Run as a script: python3 benchmarks/bench_kernels.py [--reps N]

Builds graphs from the bundled generators plus a dense random instance,
runs each kernel on both backends with identical inputs, checks the
results agree, and prints a speedup table.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from hypershard._core import _kernels_py

try:
    from hypershard._core import _kernels
except ImportError:
    _kernels = None

from hypershard.benchgen import gen_tatp_like, gen_tpcc_like
from hypershard.hypergraph import Hypergraph, build_hypergraph
from hypershard.minterm import compute_access, enumerate_minterms
from hypershard.model import schema_from_dict, workload_from_dict
from hypershard.partitioner import capacity


def generated_graph(kind: str) -> Hypergraph:
    if kind == "tatp":
        schema_doc, workload_doc = gen_tatp_like(subscribers=1000, n_txns=2000, seed=0)
    else:
        schema_doc, workload_doc = gen_tpcc_like(warehouses=2, n_txns=1000, seed=0)
    schema = schema_from_dict(schema_doc)
    workload = workload_from_dict(workload_doc, schema)
    minterms = enumerate_minterms(schema, workload)
    return build_hypergraph(minterms, compute_access(schema, minterms, workload))


def dense_graph(n=14, seed=0) -> Hypergraph:
    rng = random.Random(seed)
    edges = {}
    for _ in range(3 * n):
        arity = rng.randint(2, 4)
        vs = tuple(sorted(rng.sample(range(n), arity)))
        edges[vs] = edges.get(vs, 0) + rng.randint(1, 9)
    return Hypergraph(
        size_weights=[rng.randint(1, 20) for _ in range(n)],
        access_weights=[rng.randint(1, 20) for _ in range(n)],
        edges=list(edges.items()),
        singleton_edge_count=0,
        relation_of=["r"] * n,
    )


def timeit(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_cut(hg: Hypergraph, k: int, reps: int):
    eptr, eind, ew, vsize, vacc = hg.csr()
    parts = np.arange(hg.num_vertices, dtype=np.int64) % k
    rows = []
    for name, impl in backends():
        dt = timeit(lambda: impl.cut_weight(eptr, eind, ew, parts), reps)
        rows.append((name, impl.cut_weight(eptr, eind, ew, parts), dt))
    return rows


def bench_refine(hg: Hypergraph, k: int, reps: int):
    eptr, eind, ew, vsize, vacc = hg.csr()
    cap_s = capacity(int(vsize.sum()), k, 0.1)
    cap_a = capacity(int(vacc.sum()), k, 0.1)
    init = np.arange(hg.num_vertices, dtype=np.int64) % k
    rows = []
    for name, impl in backends():
        def run():
            parts = init.copy()
            return impl.refine(eptr, eind, ew, vsize, vacc, parts, k, cap_s, cap_a, 8)
        dt = timeit(run, reps)
        rows.append((name, run(), dt))
    return rows


def bench_brute(hg: Hypergraph, k: int, reps: int):
    eptr, eind, ew, vsize, vacc = hg.csr()
    cap_s = capacity(int(vsize.sum()), k, 0.3)
    cap_a = capacity(int(vacc.sum()), k, 0.3)
    rows = []
    for name, impl in backends():
        def run():
            bal, _any_cut, _parts = impl.brute_force(
                eptr, eind, ew, vsize, vacc, k, cap_s, cap_a
            )
            return bal
        dt = timeit(run, reps)
        rows.append((name, run(), dt))
    return rows


def backends():
    out = [("pure", _kernels_py)]
    if _kernels is not None:
        out.insert(0, ("compiled", _kernels))
    return out


def report(label: str, rows) -> None:
    values = {r[1] for r in rows}
    assert len(values) == 1, f"{label}: backends disagree: {rows}"
    base = dict((name, dt) for name, _, dt in rows)
    line = f"{label:<34}"
    for name, _, dt in rows:
        line += f" {name}={dt * 1e3:8.3f}ms"
    if "compiled" in base and base["compiled"] > 0:
        line += f"  speedup={base['pure'] / base['compiled']:6.1f}x"
    print(line)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not built; timing the pure backend only")

    tatp = generated_graph("tatp")
    tpcc = generated_graph("tpcc")
    dense = dense_graph()
    print(f"tatp graph: {tatp.num_vertices} vertices, {tatp.num_edges} edges")
    print(f"tpcc graph: {tpcc.num_vertices} vertices, {tpcc.num_edges} edges")
    print(f"dense graph: {dense.num_vertices} vertices, {dense.num_edges} edges")
    print()
    report("cut_weight tatp k=4", bench_cut(tatp, 4, args.reps * 20))
    report("cut_weight tpcc k=4", bench_cut(tpcc, 4, args.reps * 20))
    report("refine tatp k=4", bench_refine(tatp, 4, args.reps))
    report("refine tpcc k=2", bench_refine(tpcc, 2, args.reps))
    report("brute_force dense n=14 k=3", bench_brute(dense, 3, args.reps))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
