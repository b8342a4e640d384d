"""Command-line front end: decide, move, tau, threats, play, serve, gen, oracle."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .core import INFINITY, DomainError, ResourceGuardError
from . import boardio, oracle, solver, structures
from .service import threat_payload, verdict_payload

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _read_board(path: str, uniform: bool) -> boardio.ParsedBoard:
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return boardio.parse_board(text, uniform=uniform)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def cmd_decide(args) -> int:
    board = _read_board(args.board, args.uniform)
    verdict = solver.decide(board.hypergraph, args.guard)
    payload = verdict_payload(board, verdict)
    lines = [f"winner: {payload['winner']}"]
    if payload["best_move"] is not None:
        lines.append(f"best move: {payload['best_move']}")
    if payload["tau_exact"] is not None:
        lines.append(f"tau: {payload['tau_exact']}")
    if payload["tau_upper"] is not None:
        lines.append(f"tau upper bound: {payload['tau_upper']}")
    lines.append(f"certificate: {payload['certificate']}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    board = _read_board(args.board, args.uniform)
    res = oracle.minimax(board.hypergraph, args.guard)
    payload = {
        "winner": res.winner,
        "tau": None if res.tau == INFINITY else int(res.tau),
        "principal_line": [board.name_of(v) for v in res.principal_line],
    }
    _emit(
        args,
        payload,
        [
            f"winner: {payload['winner']}",
            f"tau: {payload['tau']}",
            "line: " + " ".join(payload["principal_line"]),
        ],
    )
    return EXIT_OK


def cmd_tau(args) -> int:
    board = _read_board(args.board, args.uniform)
    tau = solver.tau_exact(board.hypergraph, args.guard)
    payload = {"tau": None if tau == INFINITY else int(tau)}
    _emit(args, payload, [f"tau: {'infinity' if tau == INFINITY else int(tau)}"])
    return EXIT_OK


def cmd_threats(args) -> int:
    board = _read_board(args.board, args.uniform)
    pos = solver.Position(board.hypergraph)
    payload = {"threats": threat_payload(board, pos)}
    lines = [
        f"{t['kind']}: {' '.join(t['vertices'])}" for t in payload["threats"]
    ] or ["no threats"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_move(args) -> int:
    board = _read_board(args.board, args.uniform)
    pos = solver.Position(board.hypergraph, args.side)
    move, tag = solver.engine_move(pos, args.guard)
    payload = {"vertex": board.name_of(move), "rationale": tag, "side": args.side}
    _emit(args, payload, [f"{args.side} plays {payload['vertex']} ({tag})"])
    return EXIT_OK


def cmd_gen(args) -> int:
    stream = oracle.enumerate_instances(
        mode=args.mode,
        max_edges=args.max_edges,
        max_vertices=args.max_vertices,
        count=args.count,
        seed=args.seed,
    )
    n = 0
    for h in stream:
        n += 1
        doc = {
            "vertices": [f"v{v}" for v in h.vertices],
            "edges": [[f"v{v}" for v in e] for e in h.edges],
            "marked": [f"v{v}" for v in h.marked],
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    print(f"generated {n} instances", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(guard=args.guard), host=args.host, port=args.port)
    return EXIT_OK


def cmd_play(args) -> int:
    board = _read_board(args.board, args.uniform)
    pos = solver.Position(board.hypergraph)
    human = args.side
    name = board.name_of
    ids = board.ids
    print(f"you are {human}; vertices: {' '.join(sorted(ids))}")
    while not pos.game_over():
        threats = structures.detect_threats(pos.board)
        for t in threats:
            print(f"  threat [{t.kind}]: {' '.join(sorted(name(v) for v in t.vertices))}")
        if pos.to_move == human:
            raw = input(f"{human} ({pos.to_move}) move> ").strip()
            if raw in ("quit", "exit"):
                return EXIT_OK
            if raw not in ids:
                print(f"unknown vertex {raw!r}")
                continue
            try:
                pos = solver.play(pos, ids[raw])
            except DomainError as exc:
                print(f"illegal: {exc}")
                continue
        else:
            move, tag = solver.engine_move(pos, args.guard)
            pos = solver.play(pos, move)
            print(f"engine ({tag}) plays {name(move)}")
    if structures.find_fully_marked_edge(pos.board) is not None:
        print("maker completed an edge")
    else:
        print("no completable edge remains: breaker survives")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mb3", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, board=True):
        if board:
            sp.add_argument("board", help="board file (JSON or line format), '-' for stdin")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--uniform", action="store_true", help="pad small edges with marked vertices")
        sp.add_argument("--guard", type=int, default=14, help="oracle size guard")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("decide", help="winner, best move, certificate")
    common(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("oracle", help="exhaustive minimax result")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("tau", help="exact round count")
    common(sp)
    sp.set_defaults(func=cmd_tau)

    sp = sub.add_parser("threats", help="fully marked edges, nunchakus, necklaces")
    common(sp)
    sp.set_defaults(func=cmd_threats)

    sp = sub.add_parser("move", help="engine move for a side")
    common(sp)
    sp.add_argument("--side", choices=(solver.MAKER, solver.BREAKER), default=solver.MAKER)
    sp.set_defaults(func=cmd_move)

    sp = sub.add_parser("play", help="interactive game against the engine")
    common(sp)
    sp.add_argument("--side", choices=(solver.MAKER, solver.BREAKER), default=solver.BREAKER)
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("gen", help="stream corpus instances as JSON lines")
    sp.add_argument("--mode", choices=("exhaustive", "random", "forest"), default="exhaustive")
    sp.add_argument("--max-edges", type=int, default=2, dest="max_edges")
    sp.add_argument("--max-vertices", type=int, default=6, dest="max_vertices")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8128)
    sp.add_argument("--guard", type=int, default=14)
    sp.set_defaults(func=cmd_serve)

    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (DomainError, ResourceGuardError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
