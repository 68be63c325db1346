"""HTTP façade over controller sessions.

Every route maps one-to-one onto a controller call; no partitioning or
evaluation logic lives here. Sessions are held in memory behind per-session
locks (requests for the same session serialize, different sessions run
concurrently) and expire after an hour of inactivity.

Status mapping: 400 malformed documents or bad arguments, 404 unknown or
expired session, 409 operations illegal in the session's current state
(step after done, table before accept, accepting an infeasible best),
422 request bodies that do not match the endpoint shape.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import controller
from .errors import InfeasibleError, InputError
from .lookup import table_to_dict
from .model import constraints_from_dict, schema_from_dict, workload_from_dict

DEFAULT_TTL_SECONDS = 3600.0


@dataclass
class SessionHandle:
    session_id: str
    session: controller.Session
    created_at: float
    touched_at: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class Registry:
    """Thread-safe session store with an idle-expiry sweep on access."""

    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS, clock=time.time):
        self.ttl_seconds = ttl_seconds
        self.clock = clock
        self._guard = threading.Lock()
        self._items: dict[str, SessionHandle] = {}

    def _sweep(self, now: float) -> None:
        dead = [
            sid
            for sid, h in self._items.items()
            if now - h.touched_at > self.ttl_seconds
        ]
        for sid in dead:
            del self._items[sid]

    def add(self, session: controller.Session) -> SessionHandle:
        now = self.clock()
        handle = SessionHandle(uuid.uuid4().hex, session, now, now)
        with self._guard:
            self._sweep(now)
            self._items[handle.session_id] = handle
        return handle

    def get(self, session_id: str) -> SessionHandle:
        now = self.clock()
        with self._guard:
            self._sweep(now)
            handle = self._items.get(session_id)
            if handle is None:
                raise HTTPException(404, f"unknown session {session_id!r}")
            handle.touched_at = now
            return handle


class CreateSessionBody(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_doc: dict = Field(alias="schema")
    workload: dict
    constraints: dict
    config: dict | None = None
    mode: str = controller.AUTOMATIC


class ActionBody(BaseModel):
    action: str
    vertexIds: list[int] | None = None


def create_app(
    ttl_seconds: float = DEFAULT_TTL_SECONDS, clock=time.time
) -> FastAPI:
    app = FastAPI(title="hypershard", version="1.0")
    registry = Registry(ttl_seconds, clock)
    app.state.registry = registry

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            schema = schema_from_dict(body.schema_doc)
            workload = workload_from_dict(body.workload, schema)
            constraints = constraints_from_dict(body.constraints)
            config = controller.config_from_dict(body.config)
            session = controller.new_session(
                schema, workload, constraints, config, mode=body.mode
            )
        except InputError as e:
            raise HTTPException(400, str(e))
        handle = registry.add(session)
        return {
            "sessionId": handle.session_id,
            "status": session.status,
            "createdAt": handle.created_at,
            "graph": controller.graph_summary(session),
        }

    @app.post("/sessions/{session_id}/step")
    def step_session(session_id: str):
        handle = registry.get(session_id)
        with handle.lock:
            try:
                report = controller.step(handle.session)
            except InputError as e:
                # wrong lifecycle state or exhausted budget
                raise HTTPException(409, str(e))
            return {
                "report": report.to_dict(),
                "graph": controller.graph_summary(handle.session),
            }

    @app.post("/sessions/{session_id}/action")
    def apply_action(session_id: str, body: ActionBody):
        if body.action not in ("refine", "accept", "abort"):
            raise HTTPException(400, f"unknown action {body.action!r}")
        handle = registry.get(session_id)
        with handle.lock:
            session = handle.session
            if session.status != controller.AWAITING:
                raise HTTPException(
                    409, f"cannot apply {body.action!r} while session is {session.status!r}"
                )
            try:
                controller.user_action(session, body.action, body.vertexIds)
            except InfeasibleError as e:
                raise HTTPException(
                    409, {"message": str(e), "report": e.report.to_dict()}
                )
            except InputError as e:
                raise HTTPException(400, str(e))
            return {
                "status": session.status,
                "graph": controller.graph_summary(session),
            }

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str):
        handle = registry.get(session_id)
        with handle.lock:
            return controller.session_report(handle.session)

    @app.get("/sessions/{session_id}/table")
    def get_table(session_id: str):
        handle = registry.get(session_id)
        with handle.lock:
            session = handle.session
            if session.table is None:
                raise HTTPException(409, "session has not accepted a placement")
            best = session.best
            return {
                "table": table_to_dict(session.table),
                "iteration": best.report.iteration_index,
            }

    @app.get("/sessions/{session_id}/graph-summary")
    def get_graph_summary(session_id: str):
        handle = registry.get(session_id)
        with handle.lock:
            return controller.graph_summary(handle.session)

    return app
