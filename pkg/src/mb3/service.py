"""HTTP/JSON service exposing the engine to scripts and the play UI.

Sessions are in-memory with a TTL; each session serializes its own moves.
Besides the REST resources there is a single /rpc endpoint speaking the
ServiceMessage envelope (op, payload, id) with structured errors.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .core import INFINITY, DomainError, MarkedHypergraph, ResourceGuardError
from . import boardio, solver, structures

RPC_OPS = ("load", "legal_moves", "apply", "engine_move", "decide", "threats", "tau", "reset")


@dataclass
class Session:
    board: boardio.ParsedBoard
    position: solver.Position
    created: float
    touched: float
    lock: threading.Lock = field(default_factory=threading.Lock)

    def initial(self) -> MarkedHypergraph:
        return self.board.hypergraph


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str, where: str = ""):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.where = where

    def payload(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.where:
            out["field"] = self.where
        return out


def threat_payload(board: boardio.ParsedBoard, position: solver.Position) -> list[dict]:
    name = board.name_of
    out = []
    for i, wit in enumerate(structures.detect_threats(position.board)):
        out.append(
            {
                "id": f"{wit.kind}-{i}",
                "kind": wit.kind,
                "vertices": sorted(name(v) for v in wit.vertices),
                "edges": sorted(sorted(name(v) for v in e) for e in wit.edges),
            }
        )
    return out


def verdict_payload(board: boardio.ParsedBoard, verdict: solver.Verdict) -> dict:
    name = board.name_of
    tau_exact = verdict.tau_exact
    if tau_exact == INFINITY:
        tau_exact = None
    return {
        "winner": verdict.winner,
        "best_move": None if verdict.best_move is None else name(verdict.best_move),
        "tau_upper": verdict.tau_upper,
        "tau_exact": tau_exact,
        "certificate": verdict.certificate,
    }


def position_payload(board: boardio.ParsedBoard, position: solver.Position) -> dict:
    name = board.name_of
    h = position.board
    return {
        "vertices": sorted(name(v) for v in h.vertices),
        "edges": sorted(sorted(name(v) for v in e) for e in h.edges),
        "marked": sorted(name(v) for v in h.marked),
        "to_move": position.to_move,
        "history": [[player, name(v)] for player, v in position.history],
        "game_over": position.game_over(),
        "threats": threat_payload(board, position),
    }


def create_app(guard: int = 14, session_ttl: float = 3600.0) -> FastAPI:
    app = FastAPI(title="mb3 engine service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    def purge() -> None:
        now = time.monotonic()
        with store_lock:
            for sid in [s for s, box in sessions.items() if now - box.touched > session_ttl]:
                del sessions[sid]

    def get_session(sid: str) -> Session:
        purge()
        with store_lock:
            box = sessions.get(sid)
        if box is None:
            raise ServiceError(404, "unknown_session", f"no session {sid}")
        box.touched = time.monotonic()
        return box

    def load_board(payload: dict) -> str:
        doc = payload.get("board", payload)
        uniform = bool(payload.get("uniform", False))
        try:
            text = doc if isinstance(doc, str) else json.dumps(doc)
            parsed = boardio.parse_board(text, uniform=uniform)
        except boardio.RankError as exc:
            raise ServiceError(422, "unsupported_board", str(exc))
        except boardio.ParseError as exc:
            raise ServiceError(400, "malformed_board", str(exc))
        if parsed.hypergraph.rank > 3:
            raise ServiceError(422, "unsupported_board", "rank exceeds 3")
        if not parsed.hypergraph.is_uniform(3) and parsed.hypergraph.edges:
            raise ServiceError(
                422, "unsupported_board", "board is not 3-uniform; load with uniform=true"
            )
        sid = uuid.uuid4().hex[:12]
        with store_lock:
            sessions[sid] = Session(
                parsed, solver.Position(parsed.hypergraph), time.monotonic(), time.monotonic()
            )
        return sid

    def apply_move(box: Session, vertex_name: str) -> dict:
        ids = box.board.ids
        if vertex_name not in ids:
            raise ServiceError(409, "illegal_move", f"unknown vertex {vertex_name!r}")
        try:
            with box.lock:
                box.position = solver.play(box.position, ids[vertex_name])
        except DomainError as exc:
            reason = str(exc).split(": ", 1)[-1]
            raise ServiceError(409, "illegal_move", f"illegal move {vertex_name!r}: {reason}")
        return position_payload(box.board, box.position)

    def engine_move(box: Session) -> dict:
        with box.lock:
            try:
                move, tag = solver.engine_move(box.position, guard)
            except DomainError as exc:
                raise ServiceError(409, "illegal_move", str(exc))
            box.position = solver.play(box.position, move)
        out = position_payload(box.board, box.position)
        out["engine"] = {"vertex": box.board.name_of(move), "rationale": tag}
        return out

    def decide_current(box: Session) -> dict:
        try:
            verdict = solver.decide(box.position.board, guard)
        except (DomainError, ResourceGuardError) as exc:
            raise ServiceError(422, "unsupported_board", str(exc))
        return verdict_payload(box.board, verdict)

    def tau_current(box: Session) -> dict:
        try:
            tau = solver.tau_exact(box.position.board, guard)
        except ResourceGuardError as exc:
            raise ServiceError(422, "unsupported_board", str(exc))
        return {"tau": None if tau == INFINITY else int(tau)}

    def legal_moves(box: Session) -> dict:
        name = box.board.name_of
        return {
            "to_move": box.position.to_move,
            "moves": sorted(name(v) for v in box.position.legal_moves()),
        }

    @app.exception_handler(ServiceError)
    async def _service_error(_req, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content={"error": exc.payload()})

    @app.post("/position")
    async def post_position(request: Request):
        payload = await _json_body(request)
        sid = load_board(payload)
        box = get_session(sid)
        return {"session": sid, **position_payload(box.board, box.position)}

    @app.get("/position/{sid}")
    async def get_position(sid: str):
        box = get_session(sid)
        return position_payload(box.board, box.position)

    @app.post("/position/{sid}/move")
    async def post_move(sid: str, request: Request):
        payload = await _json_body(request)
        vertex = payload.get("vertex")
        if not isinstance(vertex, str):
            raise ServiceError(400, "malformed_request", "'vertex' must be a name", "vertex")
        return apply_move(get_session(sid), vertex)

    @app.post("/position/{sid}/engine-move")
    async def post_engine_move(sid: str):
        return engine_move(get_session(sid))

    @app.get("/position/{sid}/decide")
    async def get_decide(sid: str):
        return decide_current(get_session(sid))

    @app.get("/position/{sid}/tau")
    async def get_tau(sid: str):
        return tau_current(get_session(sid))

    @app.get("/position/{sid}/threats")
    async def get_threats(sid: str):
        box = get_session(sid)
        return {"threats": threat_payload(box.board, box.position)}

    @app.get("/position/{sid}/legal-moves")
    async def get_legal(sid: str):
        return legal_moves(get_session(sid))

    @app.post("/position/{sid}/reset")
    async def post_reset(sid: str):
        box = get_session(sid)
        with box.lock:
            box.position = solver.Position(box.initial())
        return position_payload(box.board, box.position)

    @app.post("/rpc")
    async def post_rpc(request: Request):
        msg = await _json_body(request)
        op = msg.get("op")
        corr = msg.get("id")
        payload = msg.get("payload") or {}
        try:
            if op not in RPC_OPS:
                raise ServiceError(400, "unknown_op", f"op must be one of {RPC_OPS}", "op")
            if op == "load":
                sid = load_board(payload)
                box = get_session(sid)
                result: dict = {"session": sid, **position_payload(box.board, box.position)}
            else:
                sid = payload.get("session", "")
                box = get_session(sid)
                if op == "legal_moves":
                    result = legal_moves(box)
                elif op == "apply":
                    result = apply_move(box, payload.get("vertex", ""))
                elif op == "engine_move":
                    result = engine_move(box)
                elif op == "decide":
                    result = decide_current(box)
                elif op == "threats":
                    result = {"threats": threat_payload(box.board, box.position)}
                elif op == "tau":
                    result = tau_current(box)
                else:  # reset
                    with box.lock:
                        box.position = solver.Position(box.initial())
                    result = position_payload(box.board, box.position)
            return {"id": corr, "ok": True, "result": result}
        except ServiceError as exc:
            return JSONResponse(
                status_code=exc.status,
                content={"id": corr, "ok": False, "error": exc.payload()},
            )

    async def _json_body(request: Request) -> dict:
        try:
            payload = await request.json()
        except Exception:
            raise ServiceError(400, "malformed_request", "body must be JSON")
        if not isinstance(payload, dict):
            raise ServiceError(400, "malformed_request", "body must be a JSON object")
        return payload

    return app
