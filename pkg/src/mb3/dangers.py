"""Danger families and the round-by-round survival properties.

A danger at x is a subhypergraph that turns into a Maker win once x is
marked; Breaker must answer inside the intersection of the dangers at
Maker's pick.  The families here are the snake/cycle/tadpole ones the rank-3
theory is built from.  Membership queries are answered by structure search
with avoided vertices removed, never by enumerating subhypergraphs (the
enumeration oracle for tests lives in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import DomainError, MarkedHypergraph, VertexId
from .structures import (
    PathWitness,
    StructureWitness,
    find_cycle_through,
    find_snake,
    find_tadpole,
    has_threat,
)


@dataclass(frozen=True)
class DangerFamily:
    """Tag for one of the fixed families: trivial(k), S, C, T, D0, D1."""

    name: str
    size: Optional[int] = None  # only for trivial(k)

    def __str__(self) -> str:
        return f"trivial{self.size}" if self.name == "trivial" else self.name


SNAKES = DangerFamily("S")
UNMARKED_CYCLES = DangerFamily("C")
UNMARKED_TADPOLES = DangerFamily("T")
D0 = DangerFamily("D0")  # snakes and unmarked cycles
D1 = DangerFamily("D1")  # snakes and unmarked tadpoles


def trivial_family(k: int) -> DangerFamily:
    if k < 2:
        raise DomainError("trivial dangers need edges of size at least 2")
    return DangerFamily("trivial", k)


def family_from_string(text: str) -> DangerFamily:
    t = text.strip().upper()
    if t in ("S", "C", "T", "D0", "D1"):
        return {"S": SNAKES, "C": UNMARKED_CYCLES, "T": UNMARKED_TADPOLES,
                "D0": D0, "D1": D1}[t]
    if t.startswith("TRIVIAL"):
        return trivial_family(int(t[len("TRIVIAL"):]))
    raise DomainError(f"unknown danger family {text!r}")


def is_trivial_maker_win(h: MarkedHypergraph) -> bool:
    """Some edge has at most one non-marked vertex."""
    m = h.marked_set
    return any(sum(1 for v in e if v not in m) <= 1 for e in h.edges)


def _trivial_edge_danger(
    h: MarkedHypergraph, x: VertexId, k: int, avoiding: frozenset[VertexId]
) -> Optional[tuple[VertexId, ...]]:
    m = h.marked_set
    for e in h.edges:
        if len(e) != k or x not in e or set(e) & avoiding:
            continue
        free = [v for v in e if v not in m]
        if len(free) == 2 and x in free:
            return e
    return None


def danger_exists_at(
    h: MarkedHypergraph,
    x: VertexId,
    family: DangerFamily,
    avoiding: frozenset[VertexId] = frozenset(),
) -> tuple[bool, Optional[StructureWitness | tuple]]:
    """Is there an F-danger at x avoiding every vertex of ``avoiding``?

    Answered by structure search in the board with the avoided vertices
    deleted; a subhypergraph missing those vertices cannot use their edges.
    """
    if x not in h.vertex_set or x in h.marked_set:
        raise DomainError("dangers are rooted at a non-marked vertex")
    if x in avoiding:
        raise DomainError("cannot avoid the danger's own root")
    avoid = frozenset(avoiding)
    name = family.name
    if name == "trivial":
        e = _trivial_edge_danger(h, x, family.size or 3, avoid)
        return (e is not None), e
    if name in ("S", "D0", "D1"):
        got = find_snake(h, x, forbidden=avoid)
        if got is not None:
            return True, got
    if name in ("C", "D0"):
        got = find_cycle_through(h, x, unmarked_only=True, forbidden=avoid)
        if got is not None:
            return True, got
    if name in ("T", "D1"):
        got = find_tadpole(h, x, unmarked_only=True, forbidden=avoid)
        if got is not None:
            return True, got
    if name not in ("S", "C", "T", "D0", "D1"):
        raise DomainError(f"unknown danger family {family}")
    return False, None


@dataclass(frozen=True)
class DangerIntersection:
    """Intersection of the F-dangers at a vertex, taken after marking it."""

    at: VertexId
    family: DangerFamily
    hitting_set: frozenset[VertexId]
    has_danger: bool

    @property
    def empty(self) -> bool:
        return not self.hitting_set


def danger_intersection(
    h: MarkedHypergraph, x: VertexId, family: DangerFamily
) -> DangerIntersection:
    """Vertices Breaker may answer with after Maker picks x.

    y is in the hitting set exactly when no F-danger at x avoids it; with no
    danger present every non-marked vertex other than x qualifies.
    """
    eligible = tuple(v for v in h.non_marked if v != x)
    exists, _ = danger_exists_at(h, x, family)
    if not exists:
        return DangerIntersection(x, family, frozenset(eligible), False)
    hitting = frozenset(
        y for y in eligible if not danger_exists_at(h, x, family, frozenset((y,)))[0]
    )
    return DangerIntersection(x, family, hitting, True)


def j1(
    h: MarkedHypergraph, family: DangerFamily
) -> tuple[bool, Optional[VertexId]]:
    """Can Breaker hit all F-dangers at every possible first pick?

    Returns the offending vertex on failure.
    """
    if len(h.non_marked) < 2:
        raise DomainError("the survival property needs at least two non-marked vertices")
    for x in h.non_marked:
        if not danger_intersection(h, x, family).hitting_set:
            return False, x
    return True, None


def jr(
    h: MarkedHypergraph,
    r: int,
    family: DangerFamily = D0,
    _memo: Optional[dict] = None,
) -> bool:
    """Breaker can keep hitting all F-dangers for r rounds."""
    if r < 1:
        raise DomainError("round count must be positive")
    if len(h.non_marked) < 2 * r:
        raise DomainError("the survival property needs at least 2r non-marked vertices")
    memo: dict = {} if _memo is None else _memo

    def rec(board: MarkedHypergraph, rounds: int) -> bool:
        key = (board.key(), rounds)
        got = memo.get(key)
        if got is not None:
            return got
        if rounds == 1:
            res = j1(board, family)[0]
            memo[key] = res
            return res
        res = True
        for x in board.non_marked:
            di = danger_intersection(board, x, family)
            bx = board.mark(x)
            if not any(rec(bx.remove(y), rounds - 1) for y in sorted(di.hitting_set)):
                res = False
                break
        memo[key] = res
        return res

    return rec(h, r)


def maker_forces_threat(
    h: MarkedHypergraph,
    r: int,
    _memo: Optional[dict] = None,
) -> tuple[bool, list[VertexId]]:
    """Can Maker guarantee a fully marked edge, nunchaku or necklace on the
    board as it stands after r full rounds?

    Depth-2r alternating search whose leaf test is threat detection, with a
    transposition table on exact boards.  A node that already shows a threat
    is a win outright: with 2r non-marked vertices left Maker can keep a
    threat alive through every remaining round (midpoint split), so the cut
    preserves the exact value.  Returns a sample line (Maker's forced picks
    against lowest-id Breaker replies) when the answer is yes.
    """
    if not h.is_uniform(3):
        raise DomainError("the forcing search needs a 3-uniform board")
    if is_trivial_maker_win(h):
        raise DomainError("the forcing search starts from a non-trivial position")
    if len(h.non_marked) < 2 * r:
        raise DomainError("the forcing search needs at least 2r non-marked vertices")
    memo: dict = {} if _memo is None else _memo

    def threat(board: MarkedHypergraph) -> bool:
        key = (board.key(), "threat")
        got = memo.get(key)
        if got is None:
            got = memo[key] = has_threat(board)
        return got

    def rec(board: MarkedHypergraph, rounds: int) -> bool:
        if threat(board):
            return True
        if rounds == 0:
            return False
        key = (board.key(), rounds)
        got = memo.get(key)
        if got is not None:
            return got
        res = False
        for x in board.non_marked:
            bx = board.mark(x)
            if all(
                rec(bx.remove(y), rounds - 1)
                for y in bx.non_marked
            ):
                res = True
                break
        memo[key] = res
        return res

    forced = rec(h, r)
    line: list[VertexId] = []
    if forced:
        board, rounds = h, r
        while rounds > 0 and not threat(board):
            for x in board.non_marked:
                bx = board.mark(x)
                if all(rec(bx.remove(y), rounds - 1) for y in bx.non_marked):
                    y = bx.non_marked[0]
                    line.extend((x, y))
                    board = bx.remove(y)
                    break
            rounds -= 1
    return forced, line


def maker_forces_threat_plain(h: MarkedHypergraph, r: int) -> bool:
    """Uncut reference version (leaf-only threat test), for cross-checks."""
    def rec(board: MarkedHypergraph, rounds: int) -> bool:
        if rounds == 0:
            return has_threat(board)
        return any(
            all(rec(board.mark(x).remove(y), rounds - 1)
                for y in board.mark(x).non_marked)
            for x in board.non_marked
        )

    return rec(h, r)
