"""Winner decision, optimal move selection and round-count bounds.

The decision procedure: trivial positions are read off the board, small
positions (fewer than six non-marked vertices) go to the exhaustive oracle,
and everything else is decided by whether Maker can force a fully marked
edge, nunchaku or necklace within three rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    INFINITY,
    DomainError,
    MarkedHypergraph,
    VertexId,
    ceil_log2,
)
from . import dangers, oracle, structures

MAKER = "maker"
BREAKER = "breaker"


class InternalConsistencyError(RuntimeError):
    """The engine contradicted itself (a winning reply it promised is missing)."""


@dataclass(frozen=True)
class Verdict:
    winner: str
    best_move: Optional[VertexId] = None
    tau_upper: Optional[int] = None
    tau_exact: Optional[float] = None
    certificate: str = "oracle"  # trivial | oracle | threat-line | survival


@dataclass(frozen=True)
class Position:
    """A game state: board, side to move, and the move history."""

    board: MarkedHypergraph
    to_move: str = MAKER
    history: tuple[tuple[str, VertexId], ...] = ()

    def legal_moves(self) -> tuple[VertexId, ...]:
        if self.to_move == BREAKER and len(self.board.non_marked) == 0:
            return ()
        if self.to_move == BREAKER and len(self.board.vertices) == 1:
            return ()
        return self.board.non_marked

    def game_over(self) -> bool:
        return (
            structures.find_fully_marked_edge(self.board) is not None
            or not self.legal_moves()
        )


def play(position: Position, move: VertexId) -> Position:
    """Apply one move for the side to move; illegal moves raise."""
    board = position.board
    if structures.find_fully_marked_edge(board) is not None:
        raise DomainError("the game is over: an edge is fully marked")
    if move not in board.vertex_set:
        raise DomainError(f"illegal move {move}: not a vertex")
    if move in board.marked_set:
        raise DomainError(f"illegal move {move}: vertex already marked")
    if position.to_move == MAKER:
        nxt = board.mark(move)
    else:
        nxt = board.remove(move)
    return Position(
        nxt,
        BREAKER if position.to_move == MAKER else MAKER,
        position.history + ((position.to_move, move),),
    )


def replay(initial: MarkedHypergraph, history) -> MarkedHypergraph:
    pos = Position(initial)
    for player, move in history:
        if player != pos.to_move:
            raise DomainError("history alternation is broken")
        pos = play(pos, move)
    return pos.board


def _trivial_completion(h: MarkedHypergraph) -> tuple[Optional[VertexId], int]:
    """(completing vertex, tau) for a trivial Maker win."""
    m = h.marked_set
    best: tuple[Optional[VertexId], int] = (None, 2)
    for e in h.edges:
        free = [v for v in e if v not in m]
        if not free:
            return None, 0
        if len(free) == 1 and best[1] > 1:
            best = (free[0], 1)
    if best[1] > 1:
        raise DomainError("not a trivial Maker win")
    return best


def _threat_midpoint(h: MarkedHypergraph) -> Optional[VertexId]:
    """Maker's halving move on a present nunchaku or necklace."""
    wit = structures.find_shortest_nunchaku(h)
    if wit is not None and wit.length >= 2:
        pts = wit.connection_points()
        L = wit.length
        cands = {pts[L // 2], pts[(L + 1) // 2]}
        return min(cands)
    if wit is not None:
        # length-1 nunchaku is a trivial win; complete it
        return wit.outer_near(wit.a)
    neck = structures.find_necklace(h)
    if neck is not None:
        pts = neck.connection_points()  # pts[0] is the marked anchor
        L = neck.length
        cands = {pts[L // 2], pts[(L + 1) // 2 % len(pts)]}
        cands.discard(neck.anchor)
        return min(cands)
    return None


def decide(h: MarkedHypergraph, guard: int = 14) -> Verdict:
    """Winner with an optimal first move for Maker when one exists."""
    if not h.vertices:
        raise DomainError("cannot decide an empty hypergraph")
    if not h.is_uniform(3):
        raise DomainError("decide needs a 3-uniform board; normalize first")
    if dangers.is_trivial_maker_win(h):
        move, tau = _trivial_completion(h)
        return Verdict(MAKER, move, tau_exact=tau, certificate="trivial")
    nm = len(h.non_marked)
    if nm < 6:
        # Marked vertices are inert here, so the exhaustive search stays tiny
        # regardless of the total vertex count; lift the guard accordingly.
        res = oracle.minimax(h, max(guard, len(h.vertices)))
        if res.winner == MAKER:
            move = res.principal_line[0] if res.principal_line else None
            return Verdict(MAKER, move, tau_exact=res.tau, certificate="oracle")
        return Verdict(BREAKER, None, certificate="oracle")
    forced, line = dangers.maker_forces_threat(h, 3)
    if forced:
        move = line[0] if line else _threat_midpoint(h)
        return Verdict(
            MAKER, move, tau_upper=3 + ceil_log2(nm - 5), certificate="threat-line"
        )
    return Verdict(BREAKER, None, certificate="survival")


def maker_best(h: MarkedHypergraph, guard: int = 14) -> Optional[VertexId]:
    """A winning first pick for Maker (lowest id among those the three-round
    threat search certifies)."""
    verdict = decide(h, guard)
    if verdict.winner != MAKER:
        raise DomainError("maker_best on a Breaker win")
    return verdict.best_move


def breaker_best(
    h: MarkedHypergraph, x1: VertexId, guard: int = 14
) -> Optional[VertexId]:
    """Breaker's winning answer to Maker picking x1 on a Breaker-win board.

    Candidates are the hitting set of the snake/cycle dangers at x1 (any
    reply outside it provably loses), scanned in canonical order for one
    whose child position is still a Breaker win.
    """
    if decide(h, guard).winner != BREAKER:
        raise DomainError("breaker_best on a Maker win")
    if x1 not in h.vertex_set or x1 in h.marked_set:
        raise DomainError(f"{x1} is not a legal Maker pick")
    hx = h.mark(x1)
    if not hx.non_marked:
        return None
    cands = sorted(danger_intersection_hitting(h, x1))
    for y in cands:
        if decide(hx.remove(y), guard).winner == BREAKER:
            return y
    raise InternalConsistencyError(
        f"no surviving reply to {x1} found on a Breaker-win board"
    )


def danger_intersection_hitting(h: MarkedHypergraph, x: VertexId) -> frozenset[VertexId]:
    return dangers.danger_intersection(h, x, dangers.D0).hitting_set


def decide_forest(h: MarkedHypergraph) -> Verdict:
    """Winner and exact round count on an acyclic board.

    Maker wins exactly when a nunchaku exists, in 1 + ceil(log2 L) rounds;
    the returned move is the dichotomy midpoint of a shortest nunchaku.
    """
    if not h.is_uniform(3):
        raise DomainError("decide_forest needs a 3-uniform board")
    if structures.find_fully_marked_edge(h) is not None:
        raise DomainError("decide_forest needs a board with no fully marked edge")
    if structures.has_cycle(h):
        raise DomainError("board contains a cycle; use decide()")
    wit = structures.find_shortest_nunchaku(h)
    if wit is None:
        return Verdict(BREAKER, None, certificate="survival")
    L = wit.length
    tau = 1 + ceil_log2(L)
    if L == 1:
        move = wit.outer_near(wit.a)
        return Verdict(MAKER, move, tau_exact=tau, certificate="trivial")
    pts = wit.connection_points()
    move = min(pts[L // 2], pts[(L + 1) // 2])
    return Verdict(MAKER, move, tau_exact=tau, certificate="threat-line")


def forest_breaker_reply(h: MarkedHypergraph, x: VertexId) -> Optional[VertexId]:
    """Breaker's halving reply on a forest: kill the shoulder next to x on a
    shortest nunchaku through x when a dangerously short one appeared."""
    hx = h.mark(x)
    if not hx.non_marked:
        return None
    L = structures.shortest_nunchaku_length(h)
    half = INFINITY if L == INFINITY else -(-L // 2)
    wit = structures.find_shortest_nunchaku(hx)
    if wit is not None and wit.length < half:
        if x not in (wit.a, wit.b):
            raise InternalConsistencyError(
                "a short nunchaku after Maker's pick must pass through it"
            )
        return wit.outer_near(x)
    return hx.non_marked[0]


def tau_exact(h: MarkedHypergraph, guard: int = 14) -> float:
    """Exact minimum number of rounds for Maker (infinite on Breaker wins)."""
    return oracle.minimax(h, guard).tau


def tau_upper_bound(h: MarkedHypergraph, verdict: Optional[Verdict] = None) -> int:
    """Logarithmic guarantee for Maker wins with at least 6 non-marked
    vertices: 3 + ceil(log2(|non-marked| - 5))."""
    nm = len(h.non_marked)
    if nm < 6:
        raise DomainError("the duration bound needs at least 6 non-marked vertices")
    if (verdict or decide(h)).winner != MAKER:
        raise DomainError("the duration bound applies to Maker wins")
    return 3 + ceil_log2(nm - 5)


def forcing_line(
    h: MarkedHypergraph, nunchaku: structures.PathWitness
) -> list[tuple[VertexId, Optional[VertexId]]]:
    """Maker's forcing walk along a nunchaku of length >= 2.

    Returns (maker pick, forced Breaker reply) pairs; the last pick has no
    reply because it creates two completing edges at once.  The line is
    validated by replay before being returned.
    """
    L = nunchaku.length
    if L < 2:
        raise DomainError("forcing needs a nunchaku of length at least 2")
    if not (
        nunchaku.a in h.marked_set
        and nunchaku.b in h.marked_set
        and all(v in h.vertex_set for v in nunchaku.vertices)
        and all(e in set(h.edges) for e in nunchaku.edges)
        and all(
            v in (nunchaku.a, nunchaku.b) or v not in h.marked_set
            for v in nunchaku.vertices
        )
    ):
        raise DomainError("witness is not a nunchaku of this board")
    pts = nunchaku.connection_points()
    shoulders = []
    for i, e in enumerate(nunchaku.edges):
        (o,) = [v for v in e if v not in (pts[i], pts[i + 1])]
        shoulders.append(o)
    moves: list[tuple[VertexId, Optional[VertexId]]] = []
    for i in range(1, L - 1):
        moves.append((pts[i], shoulders[i - 1]))
    moves.append((pts[L - 1], None))

    board = h
    for x, y in moves:
        board = board.mark(x)
        if y is None:
            break
        completions = _completion_vertices(board)
        if completions != {y}:
            raise InternalConsistencyError("forcing replay lost its single threat")
        board = board.remove(y)
    final = _completion_vertices(board)
    if len(final) < 2:
        raise InternalConsistencyError("forcing replay did not end in a double threat")
    return moves


def _completion_vertices(h: MarkedHypergraph) -> set[VertexId]:
    m = h.marked_set
    out = set()
    for e in h.edges:
        free = [v for v in e if v not in m]
        if len(free) == 1:
            out.add(free[0])
    return out


def engine_move(position: Position, guard: int = 14) -> tuple[VertexId, str]:
    """The engine's move for the side to move, with a rationale tag."""
    board = position.board
    moves = position.legal_moves()
    if not moves:
        raise DomainError("no legal moves: the game is over")
    if position.to_move == MAKER:
        verdict = decide(board, guard)
        if verdict.winner == MAKER and verdict.best_move is not None:
            return verdict.best_move, verdict.certificate
        return moves[0], "oracle"  # lost position, play on
    # Breaker: the board already reflects Maker's pick
    last = position.history[-1][1] if position.history else None
    if last is not None and last in board.marked_set:
        before = MarkedHypergraph(
            board.vertices, board.edges, tuple(v for v in board.marked if v != last)
        )
        if decide(before, guard).winner == BREAKER:
            reply = breaker_best(before, last, guard)
            if reply is not None:
                return reply, "survival"
        hitting = sorted(danger_intersection_hitting(before, last))
        if hitting:
            return hitting[0], "oracle"  # lost, but hit the urgent dangers
        return moves[0], "oracle"
    for y in moves:
        if decide(board.remove(y), guard).winner == BREAKER:
            return y, "survival"
    return moves[0], "oracle"


def selfplay(initial: MarkedHypergraph, guard: int = 14, max_rounds: int = 64) -> Position:
    """Both sides play engine moves until the game ends."""
    pos = Position(initial)
    for _ in range(2 * max_rounds):
        if pos.game_over():
            break
        move, _tag = engine_move(pos, guard)
        pos = play(pos, move)
    return pos
