"""HTTP session service: a human plays Devil against an auto-playing Angel.

JSON over HTTP/1.1, versioned under /v1:

    POST   /v1/games                 create a session (config, strategy, debug)
    GET    /v1/games/{id}?view=...   devil (default) or spectator view
    POST   /v1/games/{id}/action     play one round with the Devil's site
    DELETE /v1/games/{id}            drop the session

The devil view never carries amplitudes or position distributions; the
spectator view adds them only for sessions created with debug=true.
Sessions are in-memory, mutate under a per-session lock, and expire after an
idle timeout.
"""

from __future__ import annotations

import os
import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from ..angelgame import (
    ANGEL_CAUGHT,
    ANGEL_SURVIVED,
    ONGOING,
    AngelStrategy,
    DevilAction,
    MatchConfig,
    MatchState,
    config_from_dict,
    config_to_dict,
    devil_view,
    new_match,
    play_round,
    spectator_view,
)
from ..statevector import make_rng
from .strategies import make_angel_strategy

DEFAULT_IDLE_TIMEOUT = float(os.environ.get("QEFG_SESSION_TIMEOUT", "3600"))
DEFAULT_PORT = int(os.environ.get("QEFG_PORT", "8000"))


class CreateGameRequest(BaseModel):
    config: dict = Field(default_factory=dict)
    angel_strategy: str = "fixed-coin"
    debug: bool = False


class ActionRequest(BaseModel):
    site: int


@dataclass
class Session:
    id: str
    match: MatchState
    config: MatchConfig
    strategy: AngelStrategy
    debug: bool
    rng: object
    created_at: float = field(default_factory=time.monotonic)
    last_active: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, idle_timeout: float = DEFAULT_IDLE_TIMEOUT):
        self.idle_timeout = idle_timeout
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _sweep(self) -> None:
        now = time.monotonic()
        expired = [
            sid for sid, s in self._sessions.items()
            if now - s.last_active > self.idle_timeout
        ]
        for sid in expired:
            self._sessions.pop(sid, None)

    def create(self, session: Session) -> None:
        with self._lock:
            self._sweep()
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._sweep()
            session = self._sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        session.last_active = time.monotonic()
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            del self._sessions[session_id]


def _session_view(session: Session, perspective: str) -> dict:
    if perspective == "spectator":
        view = spectator_view(session.match) if session.debug else devil_view(session.match)
    else:
        view = devil_view(session.match)
    view["session"] = session.id
    view["angel_strategy"] = session.strategy.name
    view["debug"] = session.debug
    return view


def create_app(idle_timeout: float = DEFAULT_IDLE_TIMEOUT) -> FastAPI:
    app = FastAPI(title="qefg devil-play service", version="1")
    store = SessionStore(idle_timeout=idle_timeout)
    app.state.sessions = store

    @app.post("/v1/games", status_code=201)
    def create_game(request: CreateGameRequest) -> dict:
        try:
            config = config_from_dict(request.config)
            strategy = make_angel_strategy(request.angel_strategy, config)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = Session(
            id=secrets.token_urlsafe(16),
            match=new_match(config),
            config=config,
            strategy=strategy,
            debug=request.debug,
            rng=make_rng(config.seed),
        )
        store.create(session)
        return {"id": session.id, "view": _session_view(session, "devil"),
                "config": config_to_dict(config)}

    @app.get("/v1/games/{session_id}")
    def get_game(session_id: str, view: str = Query(default="devil")) -> dict:
        if view not in ("devil", "spectator"):
            raise HTTPException(status_code=400, detail="view must be devil or spectator")
        session = store.get(session_id)
        return {"id": session.id, "view": _session_view(session, view)}

    @app.post("/v1/games/{session_id}/action")
    def post_action(session_id: str, action: ActionRequest) -> dict:
        session = store.get(session_id)
        with session.lock:
            if session.match.status != ONGOING:
                raise HTTPException(
                    status_code=409,
                    detail=f"match already finished with status {session.match.status}",
                )
            if not 0 <= action.site < session.config.walker.length:
                raise HTTPException(status_code=400, detail="site outside the lattice")
            session.match = play_round(
                session.match, DevilAction(site=action.site), session.strategy, session.rng
            )
        return {"id": session.id, "view": _session_view(session, "devil")}

    @app.delete("/v1/games/{session_id}", status_code=204)
    def delete_game(session_id: str) -> None:
        store.delete(session_id)

    return app


app = create_app()

__all__ = [
    "app",
    "create_app",
    "CreateGameRequest",
    "ActionRequest",
    "SessionStore",
    "Session",
    "DEFAULT_PORT",
    "ANGEL_CAUGHT",
    "ANGEL_SURVIVED",
]
