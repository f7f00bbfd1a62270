"""HTTP facade over the session store, for the facilitator console.

All request and response bodies use the same serialization as the engine
types; errors come back as {"code", "message"} with the domain error codes.
The service holds no in-memory game state beyond per-session locks: every
document round-trips through the data directory, so it can be killed and
restarted mid-game without losing anything.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .core import Exchange, GameConfig, PieceSet
from .errors import (
    DomainError,
    GameError,
    IllegalExchange,
    InvalidConfig,
    NothingToUndo,
    NotSolvable,
    SessionNotRunning,
    StateSpaceTooLarge,
    StepBudgetExceeded,
    TrivialGame,
    UnknownSession,
)
from .session import SessionStore

DATA_DIR_ENV = "CHIPGAME_DATA_DIR"
DEFAULT_DATA_DIR = "chipgame-sessions"

_STATUS_BY_CODE = {
    IllegalExchange.code: 409,
    NothingToUndo.code: 409,
    SessionNotRunning.code: 409,
    NotSolvable.code: 409,
    StepBudgetExceeded.code: 409,
    StateSpaceTooLarge.code: 409,
    UnknownSession.code: 404,
    InvalidConfig.code: 400,
    DomainError.code: 400,
    TrivialGame.code: 409,
}


def resolve_data_dir(data_dir: Optional[str] = None) -> Path:
    return Path(data_dir or os.environ.get(DATA_DIR_ENV) or DEFAULT_DATA_DIR)


def create_app(data_dir: Optional[str] = None) -> FastAPI:
    store = SessionStore(resolve_data_dir(data_dir))
    app = FastAPI(title="chipgame session service")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(GameError)
    async def handle_game_error(_: Request, exc: GameError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(status_code=status, content=exc.to_doc())

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request) -> dict:
        body = await request.json()
        if not isinstance(body, dict) or "players" not in body:
            raise InvalidConfig("body must carry players and initial")
        config = GameConfig(
            players=int(body["players"]),
            initial=PieceSet.from_doc(body.get("initial", {})),
            allow_nonstandard=True,
        )
        deadline = body.get("deadline")
        if deadline is not None and not isinstance(deadline, str):
            raise InvalidConfig("deadline must be an ISO-8601 string")
        session = store.create(config, deadline=deadline)
        return {"session": session.to_doc()}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return {"session": store.get(session_id).to_doc()}

    @app.post("/sessions/{session_id}/exchanges")
    async def record_exchange(session_id: str, request: Request) -> dict:
        body = await request.json()
        if not isinstance(body, dict) or "exchange" not in body:
            raise IllegalExchange("body must carry an exchange document")
        exchange = Exchange.from_doc(body["exchange"])
        return {"session": store.record_exchange(session_id, exchange).to_doc()}

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str) -> dict:
        return {"session": store.undo(session_id).to_doc()}

    @app.get("/sessions/{session_id}/suggestion")
    def suggestion(session_id: str) -> dict:
        return {"suggestion": store.suggestion(session_id).to_doc()}

    @app.get("/sessions/{session_id}/plan")
    def plan(session_id: str) -> dict:
        return {"script": store.plan(session_id).to_doc()}

    return app
