"""Command line front end.

analyze    dump tuple-group regions and hypergraph statistics
partition  run the iterative search and freeze a routing table
compare    distributed-transaction counts of the search vs static schemes
gen        write a seeded benchmark schema/workload pair
serve      run the HTTP API

Exit codes: 0 on success, 2 when no feasible placement was found within
the iteration budget, 1 on bad input (files, documents, arguments).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import baselines, controller
from .errors import InfeasibleError, InputError
from .hypergraph import build_hypergraph
from .lookup import count_distributed, serialize_table
from .minterm import compute_access, enumerate_minterms
from .model import (
    Constraints,
    Schema,
    Workload,
    parse_constraints,
    parse_schema,
    parse_workload,
)


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load_inputs(args) -> tuple[Schema, Workload]:
    schema = parse_schema(_read_file(args.schema))
    workload = parse_workload(_read_file(args.workload), schema)
    return schema, workload


def _load_constraints(args) -> Constraints:
    constraints = parse_constraints(_read_file(args.constraints))
    if getattr(args, "iters", None) is not None:
        if args.iters < 1:
            raise InputError("--iters must be a positive integer")
        constraints = dataclasses.replace(constraints, max_iterations=args.iters)
    return constraints


def _dump_json(path: str, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _literal_text(lit) -> str:
    op, value = lit.effective()
    return f"{lit.predicate.attr} {op} {value!r}"


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    schema, workload = _load_inputs(args)
    minterms = enumerate_minterms(schema, workload)
    access = compute_access(schema, minterms, workload)
    hg = build_hypergraph(minterms, access)

    per_rel: dict[str, int] = {}
    for m in minterms:
        per_rel[m.relation] = per_rel.get(m.relation, 0) + 1
    print(f"tuple groups: {len(minterms)} across {len(per_rel)} relations")
    for name in sorted(per_rel):
        print(f"  {name}: {per_rel[name]}")
    print(
        f"hypergraph: {hg.num_vertices} vertices, {hg.num_edges} edges, "
        f"{sum(w for _, w in hg.edges)} total edge weight"
    )
    if access.full_scan_statements:
        print(f"full-scan statements: {access.full_scan_statements}")
    print()
    for m in minterms:
        lits = " & ".join(_literal_text(l) for l in m.literals) or "(whole relation)"
        print(
            f"[{m.id:>4}] {m.relation:<20} size={m.size:<8} "
            f"access={access.counts.get(m.id, 0):<6} {lits}"
        )
    return 0


# ---------------------------------------------------------------------------
# partition
# ---------------------------------------------------------------------------


def _print_report(report, out=print) -> None:
    out(
        f"iteration {report.iteration_index}: "
        f"distributed {report.distributed_txn_count}/{report.total_txn_count} "
        f"({report.distributed_fraction:.1%}), skew {report.sf:.4f}, "
        f"{'feasible' if report.feasible else 'INFEASIBLE'}"
    )
    for v in report.violations:
        out(f"  violation: node {v.node} {v.kind} {v.actual} > limit {v.limit}")


def _write_outputs(args, report, table) -> None:
    if getattr(args, "report", None):
        _dump_json(args.report, report.to_dict())
    if getattr(args, "out", None) and table is not None:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(serialize_table(table))


def _run_interactive(session, args, lines) -> int:
    """One command per line: step | refine [ids] | accept | abort."""
    print("commands: step | refine [vertex ids] | accept | abort")
    for raw in lines:
        words = raw.split()
        if not words:
            continue
        verb, rest = words[0], words[1:]
        try:
            if verb == "step":
                report = controller.step(session)
                _print_report(report)
                best = session.best
                if best is not None:
                    print(
                        f"  best so far: iteration {best.report.iteration_index} "
                        f"(distributed {best.report.distributed_txn_count})"
                    )
            elif verb == "refine":
                ids = [int(w) for w in rest] if rest else None
                controller.user_action(session, "refine", ids)
                print(f"graph now has {session.hypergraph.num_vertices} vertices")
            elif verb == "accept":
                controller.user_action(session, "accept")
                best = session.best
                _write_outputs(args, best.report, session.table)
                print(f"accepted iteration {best.report.iteration_index}")
                return 0
            elif verb == "abort":
                controller.user_action(session, "abort")
                print("aborted")
                return 0
            else:
                print(f"unknown command {verb!r}", file=sys.stderr)
        except InfeasibleError as e:
            print(f"cannot accept: {e}", file=sys.stderr)
        except (InputError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
    # input exhausted without an explicit accept or abort
    if session.status != controller.DONE and session.history:
        controller.user_action(session, "abort")
    return 0


def cmd_partition(args) -> int:
    schema, workload = _load_inputs(args)
    constraints = _load_constraints(args)
    config = controller.SessionConfig(seed=args.seed)
    if args.mode == "interactive":
        session = controller.new_session(
            schema, workload, constraints, config, mode=controller.INTERACTIVE
        )
        return _run_interactive(session, args, sys.stdin)
    try:
        _assignment, report, table = controller.run_auto(
            schema, workload, constraints, config
        )
    except InfeasibleError as e:
        _print_report(e.report, out=lambda s: print(s, file=sys.stderr))
        if args.report:
            _dump_json(args.report, e.report.to_dict())
        print("no feasible placement within the iteration budget", file=sys.stderr)
        return 2
    _print_report(report)
    routed = count_distributed(table, schema, workload)
    print(f"routing table covers {len(table.relations)} relations, k={table.k}; "
          f"replay distributes {routed}")
    _write_outputs(args, report, table)
    return 0


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def cmd_compare(args) -> int:
    schema, workload = _load_inputs(args)
    constraints = _load_constraints(args)
    schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
    known = ("hgp",) + baselines.SCHEMES
    for s in schemes:
        if s not in known:
            raise InputError(f"unknown scheme {s!r}; pick from {', '.join(known)}")

    total = len(workload.transactions)
    rows = []
    for s in schemes:
        note = ""
        if s == "hgp":
            try:
                _asg, report, _table = controller.run_auto(
                    schema, workload, constraints, controller.SessionConfig(seed=args.seed)
                )
                count = report.distributed_txn_count
            except InfeasibleError as e:
                count = e.report.distributed_txn_count
                note = "infeasible"
        else:
            router = baselines.build_scheme(s, schema, workload, constraints.k)
            count = baselines.count_distributed(router, workload)
        rows.append((s, count, note))

    print(f"{'scheme':<8} {'distributed':>11} {'fraction':>9}")
    for s, count, note in rows:
        frac = count / total if total else 0.0
        suffix = f"  ({note})" if note else ""
        print(f"{s:<8} {count:>11} {frac:>8.1%}{suffix}")
    return 0


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    from . import benchgen

    if args.scale <= 0:
        raise InputError("--scale must be positive")
    if args.name == "tpcc":
        schema_doc, workload_doc = benchgen.gen_tpcc_like(
            warehouses=max(1, round(2 * args.scale)),
            n_txns=args.txns if args.txns is not None else 1000,
            seed=args.seed,
        )
    elif args.name == "tatp":
        schema_doc, workload_doc = benchgen.gen_tatp_like(
            subscribers=max(2, round(1000 * args.scale)),
            n_txns=args.txns if args.txns is not None else 2000,
            seed=args.seed,
        )
    else:
        schema_doc, workload_doc = benchgen.gen_epinions_like(
            users=max(4, round(100 * args.scale)),
            items=max(4, round(60 * args.scale)),
            n_txns=args.txns if args.txns is not None else 600,
            seed=args.seed,
        )
    schema_path = f"{args.out_prefix}.schema.json"
    workload_path = f"{args.out_prefix}.workload.json"
    _dump_json(schema_path, schema_doc)
    _dump_json(workload_path, workload_doc)
    print(schema_path)
    print(workload_path)
    return 0


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app()
    if args.ui is not None:
        if not os.path.isfile(os.path.join(args.ui, "index.html")):
            raise InputError(f"--ui directory {args.ui!r} has no index.html")
        from starlette.staticfiles import StaticFiles

        # mounted last, so the API routes keep precedence
        app.mount("/", StaticFiles(directory=args.ui, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypershard",
        description="workload-driven horizontal partitioning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="dump tuple groups and graph statistics")
    p.add_argument("schema")
    p.add_argument("workload")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("partition", help="search for a placement, emit table + report")
    p.add_argument("schema")
    p.add_argument("workload")
    p.add_argument("constraints")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=None,
                   help="override the constraints document's iteration budget")
    p.add_argument("--mode", choices=("auto", "interactive"), default="auto")
    p.add_argument("--out", default=None, help="routing table JSON path")
    p.add_argument("--report", default=None, help="evaluation report JSON path")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("compare", help="distributed counts across schemes")
    p.add_argument("schema")
    p.add_argument("workload")
    p.add_argument("constraints")
    p.add_argument("--schemes", default="hgp," + ",".join(baselines.SCHEMES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="write a seeded benchmark instance")
    p.add_argument("name", choices=("tpcc", "tatp", "epinions"))
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--txns", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8100)
    p.add_argument("--ui", default=None, metavar="DIR",
                   help="also serve a built web client from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # stdout went away (e.g. piped into head); die quietly
        try:
            sys.stdout.close()
        except Exception:
            pass
        return 0
    except (InputError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
