#!/usr/bin/env python3
"""Record one interactive session against the in-process HTTP service.

Produces tests/fixtures/recorded-session.json: the ordered request and
response exchanges of a create / step / refine / step / accept / table
flow, exactly as the browser client issues it. The web test suite replays
the UI against these bytes, and the Python suite replays the bytes
against a live service instance, so together they pin the wire contract
from both sides.

The flow is recorded twice from scratch and the runs must agree byte for
byte (session id and creation time aside) before the fixture is written.
Rerun only when the wire format changes on purpose.
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from hypershard import benchgen
from hypershard.service import create_app

FIXTURE = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "recorded-session.json"


def compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def drive(client: TestClient):
    """Issue the scripted flow; returns (session_id, exchange list)."""
    exchanges = []

    def call(method: str, path: str, body=None, expect: int = 200):
        payload = None if body is None else compact(body)
        if payload is None:
            resp = client.request(method, path)
        else:
            resp = client.request(
                method, path, content=payload,
                headers={"content-type": "application/json"},
            )
        assert resp.status_code == expect, (method, path, resp.status_code, resp.text)
        exchanges.append(
            {
                "method": method,
                "path": path,
                "body": payload,
                "status": resp.status_code,
                "response": resp.text,
            }
        )
        return resp.json()

    schema_doc, workload_doc = benchgen.gen_tatp_like(subscribers=60, n_txns=200, seed=0)
    constraints = {"k": 2, "eps_size": 0.3, "eps_access": 0.3, "max_iterations": 4}
    create_body = {
        "schema": schema_doc,
        "workload": workload_doc,
        "constraints": constraints,
        "mode": "interactive",
        "config": {"seed": 0},
    }

    created = call("POST", "/sessions", create_body, expect=201)
    sid = created["sessionId"]
    base = f"/sessions/{sid}"

    step1 = call("POST", f"{base}/step")
    call("GET", f"{base}/report")

    # same rule the UI test applies: the two top-ranked splittable
    # candidates, ids sent in ascending order
    ranked = [c["vertex"] for c in step1["graph"]["split_candidates"] if c["splittable"]]
    assert len(ranked) >= 2, "fixture instance must offer two splittable groups"
    picks = sorted(ranked[:2])
    call("POST", f"{base}/action", {"action": "refine", "vertexIds": picks})

    call("POST", f"{base}/step")
    call("GET", f"{base}/report")
    call("POST", f"{base}/action", {"action": "accept"})
    call("GET", f"{base}/table")
    return sid, exchanges


def normalized(sid: str, exchanges):
    """Exchanges with the volatile parts blanked, for the agreement check."""
    out = []
    for i, ex in enumerate(exchanges):
        body = ex["body"]
        response = ex["response"]
        if i == 0:
            doc = json.loads(response)
            doc["sessionId"] = "<sid>"
            doc["createdAt"] = 0.0
            response = json.dumps(doc, sort_keys=True)
        else:
            assert sid not in response, f"volatile session id leaked into {ex['path']}"
        out.append(
            {
                "method": ex["method"],
                "path": ex["path"].replace(sid, "<sid>"),
                "body": body,
                "status": ex["status"],
                "response": response,
            }
        )
    return out


def main() -> int:
    sid_a, run_a = drive(TestClient(create_app()))
    sid_b, run_b = drive(TestClient(create_app()))
    if normalized(sid_a, run_a) != normalized(sid_b, run_b):
        print("service is not deterministic across runs; not writing fixture", file=sys.stderr)
        return 1

    FIXTURE.parent.mkdir(parents=True, exist_ok=True)
    doc = {
        "note": (
            "Recorded interactive session against the HTTP service "
            "(create / step / refine two groups / step / accept / table). "
            "Replayed verbatim by the web client tests and by the service "
            "contract test; regenerate with scripts/record_session.py only "
            "when the wire format changes on purpose."
        ),
        "sessionId": sid_a,
        "exchanges": run_a,
    }
    FIXTURE.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURE} ({len(run_a)} exchanges)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
