"""Local JSON-over-HTTP service for game sessions and demihypercube data.

Sessions live in memory with an idle expiry; there is no persistence.  Every
error response is ``{"code": ..., "message": ...}`` with a code from the
closed set documented in ``errors``; stack traces never go over the wire.
The engine answers within the human's move request, so one round-trip plays
one full turn.
"""

from __future__ import annotations

import copy
import threading
import time
import uuid
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .core import Move, classify
from .engine import (
    GameSession,
    GameStatus,
    apply_human_move,
    engine_move,
    hint,
    new_game,
)
from .errors import BudgetExceededError, NimcubeError, SessionNotFoundError
from .fractal import DEFAULT_BUDGET_EXPONENT, IterationSpec, check_budget, stream_points
from .geometry import shadow

DEFAULT_PORT = 8715
DEFAULT_SESSION_TTL_SECONDS = 3600.0


class NewGameRequest(BaseModel):
    piles: list[int]
    human_first: bool = True


class MoveRequest(BaseModel):
    pile_index: int
    new_size: int


@dataclass
class _Entry:
    session: GameSession
    lock: threading.Lock
    last_access: float


class SessionStore:
    """In-memory session map with lazy idle expiry."""

    def __init__(self, ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS) -> None:
        self._ttl = ttl_seconds
        self._guard = threading.Lock()
        self._entries: dict[str, _Entry] = {}

    def _purge(self, now: float) -> None:
        expired = [key for key, entry in self._entries.items()
                   if now - entry.last_access > self._ttl]
        for key in expired:
            del self._entries[key]

    def add(self, session: GameSession) -> None:
        now = time.monotonic()
        with self._guard:
            self._purge(now)
            self._entries[session.id] = _Entry(session, threading.Lock(), now)

    def entry(self, session_id: str) -> _Entry:
        now = time.monotonic()
        with self._guard:
            self._purge(now)
            entry = self._entries.get(session_id)
            if entry is None:
                raise SessionNotFoundError(f"no such game: {session_id}")
            entry.last_access = now
            return entry


def _move_view(move: Move, session: GameSession) -> dict:
    return {
        "pile_index": move.pile_index,
        "new_size": move.new_size,
        "position": list(session.position),
        "classification": classify(session.position).value,
    }


def _session_view(session: GameSession) -> dict:
    return {
        "id": session.id,
        "position": list(session.position),
        "to_move": session.to_move.value,
        "status": session.status.value,
    }


def create_app(budget_exponent: int = DEFAULT_BUDGET_EXPONENT,
               session_ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS,
               ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="nimcube", docs_url="/docs", openapi_url="/openapi.json")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"https?://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(session_ttl_seconds)

    @app.exception_handler(NimcubeError)
    def _domain_error(request: Request, exc: NimcubeError) -> JSONResponse:
        payload = {"code": exc.code, "message": str(exc)}
        if isinstance(exc, BudgetExceededError):
            payload["limit_exponent"] = exc.limit_exponent
            payload["required_exponent"] = exc.required_exponent
        return JSONResponse(payload, status_code=exc.http_status)

    @app.exception_handler(RequestValidationError)
    def _validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            {"code": "bad_request", "message": "invalid request: "
             + "; ".join(str(e.get("msg", e)) for e in exc.errors())},
            status_code=400,
        )

    @app.exception_handler(StarletteHTTPException)
    def _http_error(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = "not_found" if exc.status_code == 404 else "bad_request"
        return JSONResponse({"code": code, "message": str(exc.detail)},
                            status_code=exc.status_code)

    @app.post("/games")
    def create_game(body: NewGameRequest) -> dict:
        session = new_game(body.piles, human_moves_first=body.human_first,
                           session_id=uuid.uuid4().hex)
        # Classification of the start lets the UI warn about a lost opening.
        start_classification = classify(session.position).value
        engine_view = None
        if not body.human_first:
            # The move endpoint only accepts human moves, so an engine-first
            # game gets its opening move played here.
            _, opening = engine_move(session)
            engine_view = _move_view(opening, session)
        store.add(session)
        view = _session_view(session)
        view["classification"] = start_classification
        view["engine_move"] = engine_view
        return view

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, body: MoveRequest) -> dict:
        entry = store.entry(game_id)
        with entry.lock:
            # Work on a copy and swap it in at the end, so the human move and
            # the engine reply land atomically or not at all.
            working = copy.deepcopy(entry.session)
            apply_human_move(working, Move(body.pile_index, body.new_size))
            human_view = _move_view(Move(body.pile_index, body.new_size), working)
            engine_view = None
            if working.status is GameStatus.IN_PROGRESS:
                _, reply = engine_move(working)
                engine_view = _move_view(reply, working)
            entry.session = working
            view = _session_view(working)
            view["human_move"] = human_view
            view["engine_move"] = engine_view
            return view

    @app.get("/games/{game_id}/hint")
    def get_hint(game_id: str) -> dict:
        entry = store.entry(game_id)
        with entry.lock:
            result = hint(entry.session)
        return {
            "classification": result.classification.value,
            "winning_moves": [
                {"pile_index": m.pile_index, "new_size": m.new_size}
                for m in result.winning_moves
            ],
        }

    @app.get("/fractal")
    def get_fractal(d: int, n: int) -> dict:
        spec = IterationSpec(d, n)
        check_budget(n * (d - 1), budget_exponent, f"point payload (d={d}, n={n})")
        points = [list(p) for p in stream_points(spec)]
        return {"d": d, "n": n, "count": len(points), "points": points}

    @app.get("/fractal/shadow")
    def get_shadow(d: int, n: int, axis: int) -> dict:
        grid = shadow(IterationSpec(d, n), axis, budget_exponent=budget_exponent)
        view = {
            "d": d,
            "n": n,
            "axis": axis,
            "cells": len(grid.counts),
            "total": grid.total(),
            "all_ones": grid.all_ones(),
        }
        if not grid.all_ones():
            view["counts"] = [[*cell, count]
                              for cell, count in sorted(grid.counts.items())]
        return view

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:
        @app.get("/")
        def index() -> dict:
            return {
                "service": "nimcube",
                "endpoints": ["/games", "/games/{id}/moves", "/games/{id}/hint",
                              "/fractal", "/fractal/shadow"],
            }

    return app


def run(port: int = DEFAULT_PORT, host: str = "127.0.0.1",
        budget_exponent: int = DEFAULT_BUDGET_EXPONENT,
        ui_dir: str | None = None) -> None:
    """Serve until interrupted."""
    import uvicorn

    uvicorn.run(create_app(budget_exponent=budget_exponent, ui_dir=ui_dir),
                host=host, port=port)
