"""Local JSON session service: game sessions, hints, and logs over HTTP.

Single-user plumbing for scripts and the web UI.  Sessions live in memory;
every mutation of a session is serialized behind a per-session lock, so
interleaved clients never observe a half-applied move.  An optional
server-sent-event stream pushes state snapshots whenever a session
changes.
"""

from __future__ import annotations

import asyncio
import io
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import PlainTextResponse, StreamingResponse
from pydantic import BaseModel

from .boards import BoardSpec, PuzzleSpace, enumerate_basis
from .library import standard_boards
from .operators import GateSet, combined_set, root_set, swap_set
from .simulator import GameSession, QuditState, RefereeConfig, SimulatorError
from .solvers import (
    ScrambleSpec,
    SolverPlan,
    scramble,
    solve_classical,
    solve_combined,
    solve_quantum,
)


class CreateSession(BaseModel):
    board: str | dict
    scramble_seed: int = 0
    len_min: int = 200
    len_max: int = 500
    rng_seed: int = 0
    solved_index: int = 0


class MoveCommand(BaseModel):
    label: str


@dataclass
class _Session:
    space: PuzzleSpace
    game: GameSession
    moves: GateSet
    board_name: str
    lock: threading.Lock = field(default_factory=threading.Lock)
    version: int = 0


def session_view(s: _Session) -> dict:
    amps = s.game.current.amps
    return {
        "board": s.board_name,
        "dim": s.space.dim,
        "basis": [str(b) for b in s.space.basis],
        "layout": [list(xy) for xy in s.space.board.layout] if s.space.board.layout else None,
        "amplitudes": [
            {"re": float(a.real), "im": float(a.imag), "probability": float(abs(a) ** 2)}
            for a in amps
        ],
        "moves_taken": s.game.moves_taken,
        "status": s.game.status,
        "solved_index": s.game.referee.solved_index,
        "last_outcome": next(
            (r["outcome"] for r in reversed(s.game.history) if r["kind"] == "measure"),
            None,
        ),
        "available_moves": [
            {"label": g.label, "cost": g.move_cost} for g in s.moves.generators
        ],
        "version": s.version,
    }


def build_app(board_dir: str | Path | None = None, hints: bool = True) -> FastAPI:
    app = FastAPI(title="qpuzzle session service")
    sessions: dict[str, _Session] = {}
    boards = dict(standard_boards())
    if board_dir is not None:
        for path in sorted(Path(board_dir).glob("*.json")):
            boards[path.stem] = BoardSpec.load(path)

    def _get(session_id: str) -> _Session:
        s = sessions.get(session_id)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return s

    @app.get("/boards")
    def list_boards() -> dict:
        return {name: b.to_json() for name, b in boards.items()}

    @app.post("/session", status_code=201)
    def create(cmd: CreateSession) -> dict:
        if isinstance(cmd.board, str):
            board = boards.get(cmd.board)
            if board is None:
                raise HTTPException(status_code=422, detail=f"unknown board {cmd.board!r}")
            name = cmd.board
        else:
            try:
                board = BoardSpec.from_json(cmd.board)
            except Exception as exc:
                raise HTTPException(status_code=422, detail=f"bad board spec: {exc}")
            name = board.name
        space = enumerate_basis(board)
        if not 0 <= cmd.solved_index < space.dim:
            raise HTTPException(status_code=422, detail="solved index out of range")
        roots = root_set(space)
        spec = ScrambleSpec(
            generator_set=roots, seed=cmd.scramble_seed,
            len_min=cmd.len_min, len_max=cmd.len_max,
        )
        state = scramble(spec, space, cmd.solved_index)
        game = GameSession(
            space,
            RefereeConfig(
                solved_index=cmd.solved_index, scramble_state=state,
                rng_seed=cmd.rng_seed,
            ),
        )
        sid = uuid.uuid4().hex
        sessions[sid] = _Session(
            space=space, game=game, moves=combined_set(space), board_name=name
        )
        return {"session_id": sid, **session_view(sessions[sid])}

    @app.get("/session/{session_id}")
    def view(session_id: str) -> dict:
        return session_view(_get(session_id))

    @app.post("/session/{session_id}/move")
    def move(session_id: str, cmd: MoveCommand) -> dict:
        s = _get(session_id)
        with s.lock:
            if s.game.status != "solving":
                raise HTTPException(status_code=409, detail="session already solved")
            try:
                op = s.moves.by_label(cmd.label)
            except Exception:
                raise HTTPException(status_code=422, detail=f"invalid move {cmd.label!r}")
            s.game.apply_move(op)
            s.version += 1
            return session_view(s)

    @app.post("/session/{session_id}/measure")
    def measure(session_id: str) -> dict:
        s = _get(session_id)
        with s.lock:
            if s.game.status != "solving":
                raise HTTPException(status_code=409, detail="session already solved")
            outcome = s.game.measure()
            s.version += 1
            return {"outcome": outcome, **session_view(s)}

    @app.get("/session/{session_id}/hint")
    def hint(
        session_id: str,
        solver: str = Query("combined", pattern="^(classical|quantum|combined)$"),
    ) -> dict:
        if not hints:
            raise HTTPException(status_code=403, detail="hints disabled")
        s = _get(session_id)
        with s.lock:
            state = s.game.current.copy()
            solved = s.game.referee.solved_index
        if s.game.status != "solving":
            raise HTTPException(status_code=409, detail="session already solved")
        plan = _plan_for(state, s.space, solver, solved)
        return {
            "solver": solver,
            "word": list(plan.word),
            "M": plan.M,
            "P": plan.P,
            "expected_cost": plan.expected_cost,
        }

    @app.get("/session/{session_id}/log", response_class=PlainTextResponse)
    def log(session_id: str) -> str:
        s = _get(session_id)
        buf = io.StringIO()
        with s.lock:
            s.game.write_log(buf)
        return buf.getvalue()

    @app.get("/session/{session_id}/events")
    async def events(
        session_id: str,
        request: Request,
        max_events: int | None = Query(default=None, ge=1),
    ) -> StreamingResponse:
        s = _get(session_id)

        async def stream():
            last = -1
            sent = 0
            while not await request.is_disconnected():
                if s.version != last:
                    last = s.version
                    yield f"data: {json.dumps(session_view(s))}\n\n"
                    sent += 1
                    if max_events is not None and sent >= max_events:
                        return
                await asyncio.sleep(0.2)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


def _plan_for(
    state: QuditState, space: PuzzleSpace, solver: str, solved_index: int
) -> SolverPlan:
    if solver == "classical":
        return solve_classical(state, space, swap_set(space), solved_index)
    if solver == "quantum":
        return solve_quantum(state, space, root_set(space), solved_index)
    return solve_combined(state, space, combined_set(space), solved_index)


def serve_sessions(
    port: int = 8000, board_dir: str | Path | None = None, hints: bool = True
) -> None:
    """Run the session service until interrupted."""
    import uvicorn

    uvicorn.run(build_app(board_dir, hints), host="127.0.0.1", port=port)
