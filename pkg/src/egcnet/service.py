"""HTTP session service. JSON bodies over plain endpoints:

  POST /sessions                    create a session, returns its id
  POST /sessions/{id}/events        submit a case-frame event (?dry_run=true
                                    evaluates without committing)
  POST /sessions/{id}/feedback      attach the real emotion value, learn
  GET  /sessions/{id}               mood, cost row, FV deltas, last turn
  GET  /sessions/{id}/trace         the replayable JSONL trace

Errors: 404 unknown session, 422 invalid case frame, 409 feedback without a
matching committed event. Sessions share nothing but the read-only initial
FV database; per-session access is serialized with a lock.
"""

from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .emotions import ElicitingContext
from .model import CaseFrame, CaseFrameError, FavoriteValueDB
from .session import EngineConfig, FeedbackOrderError, Session


class EventBody(BaseModel):
    event_type: str
    predicate_kind: str | None = None
    slots: dict[str, str]
    context: dict | None = None


class FeedbackBody(BaseModel):
    ev: float = Field(ge=0.0, le=1.0)
    sign: str = "+"


class SessionStore:
    def __init__(self, db: FavoriteValueDB, config: EngineConfig):
        self.db = db
        self.config = config
        self.sessions: dict[str, Session] = {}
        self.locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def create(self, persona: str | None = None) -> Session:
        sid = uuid.uuid4().hex
        config = self.config
        if persona:
            config = EngineConfig(**{**vars(self.config), "persona": persona})
        session = Session(self.db, config, session_id=sid)
        with self._registry_lock:
            self.sessions[sid] = session
            self.locks[sid] = threading.Lock()
        return session

    def get(self, sid: str) -> tuple[Session, threading.Lock]:
        session = self.sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return session, self.locks[sid]


class CreateBody(BaseModel):
    persona: str | None = None


def create_app(db: FavoriteValueDB | None = None, config: EngineConfig | None = None) -> FastAPI:
    store = SessionStore(db or FavoriteValueDB(), config or EngineConfig())
    app = FastAPI(title="egcnet session service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])
    app.state.store = store

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateBody | None = None):
        session = store.create(body.persona if body else None)
        return {"id": session.id, "state": session.state_view()}

    @app.get("/sessions/{sid}")
    def read_session(sid: str):
        session, lock = store.get(sid)
        with lock:
            return session.state_view()

    @app.post("/sessions/{sid}/events")
    def submit_event(sid: str, body: EventBody, dry_run: bool = False):
        session, lock = store.get(sid)
        try:
            cf = CaseFrame.from_dict(
                {"event_type": body.event_type, "predicate_kind": body.predicate_kind,
                 "slots": body.slots})
            ctx = ElicitingContext.from_dict(body.context)
        except (CaseFrameError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        with lock:
            try:
                record = session.submit_event(cf, ctx, dry_run=dry_run)
            except CaseFrameError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            return record.to_dict()

    @app.post("/sessions/{sid}/feedback")
    def submit_feedback(sid: str, body: FeedbackBody):
        session, lock = store.get(sid)
        sign = -1 if body.sign.startswith("-") else +1
        with lock:
            try:
                report = session.submit_feedback(body.ev, sign)
            except FeedbackOrderError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            return {"report": report.to_dict(), "state": session.state_view()}

    @app.get("/sessions/{sid}/trace")
    def read_trace(sid: str):
        session, lock = store.get(sid)
        with lock:
            return Response(content=session.trace_text(), media_type="application/x-ndjson")

    return app
