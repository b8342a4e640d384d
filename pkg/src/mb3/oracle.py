"""Ground-truth exhaustive minimax over the full game tree, plus generators.

The oracle is the reference every equivalence test compares against.  It
implements the recursive winner and round-count definitions directly on a
bitboard encoding with transposition memoization on exact boards (no
isomorphism reduction).  Instance generators produce the exhaustive small
corpus (deduplicated by a true canonical form), seeded random boards, and
random hyperforests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .core import (
    INFINITY,
    DomainError,
    MarkedHypergraph,
    ResourceGuardError,
    VertexId,
)
from . import structures


@dataclass(frozen=True)
class OracleResult:
    winner: str  # "maker" | "breaker"
    tau: float
    principal_line: tuple[VertexId, ...]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b
        mask ^= b


class _Game:
    """Bitboard view of a marked hypergraph: one bit per vertex."""

    def __init__(self, h: MarkedHypergraph):
        self.vertices = h.vertices
        self.index = {v: i for i, v in enumerate(h.vertices)}
        self.n = len(h.vertices)
        self.edges = tuple(
            sum(1 << self.index[v] for v in e) for e in h.edges
        )
        self.full = (1 << self.n) - 1
        self.marked0 = sum(1 << self.index[v] for v in h.marked)

    def vertex_of(self, bit: int) -> VertexId:
        return self.vertices[bit.bit_length() - 1]

    def trivial_tau(self, alive: int, marked: int) -> Optional[int]:
        """0 if a live edge is fully marked, 1 if one misses a single vertex."""
        best = None
        for e in self.edges:
            if e & ~alive:
                continue
            c = (e & ~marked).bit_count()
            if c == 0:
                return 0
            if c == 1:
                best = 1
        return best


def _check_guard(h: MarkedHypergraph, guard: int) -> None:
    if len(h.vertices) > guard:
        raise ResourceGuardError(
            f"{len(h.vertices)} vertices exceed the exhaustive-search guard {guard}"
        )


def winner(h: MarkedHypergraph, guard: int = 14) -> str:
    """Exact winner by win/loss game-tree search with memoization."""
    _check_guard(h, guard)
    g = _Game(h)
    memo: dict[tuple[int, int], bool] = {}

    def win(alive: int, marked: int) -> bool:
        key = (alive, marked)
        got = memo.get(key)
        if got is not None:
            return got
        res: bool
        if g.trivial_tau(alive, marked) is not None:
            res = True
        else:
            nm = alive & ~marked
            if nm.bit_count() <= 1:
                res = False
            else:
                res = False
                for x in _bits(nm):
                    m2 = marked | x
                    if all(win(alive & ~y, m2) for y in _bits(nm & ~x)):
                        res = True
                        break
        memo[key] = res
        return res

    return "maker" if win(g.full, g.marked0) else "breaker"


def minimax(h: MarkedHypergraph, guard: int = 14) -> OracleResult:
    """Exact winner and round count per the recursive definitions."""
    _check_guard(h, guard)
    g = _Game(h)
    memo: dict[tuple[int, int], float] = {}

    def tau(alive: int, marked: int) -> float:
        key = (alive, marked)
        got = memo.get(key)
        if got is not None:
            return got
        triv = g.trivial_tau(alive, marked)
        if triv is not None:
            memo[key] = triv
            return triv
        nm = alive & ~marked
        if nm.bit_count() <= 1:
            memo[key] = INFINITY
            return INFINITY
        best = INFINITY
        for x in _bits(nm):
            m2 = marked | x
            worst = 0.0
            for y in _bits(nm & ~x):
                v = tau(alive & ~y, m2)
                if v > worst:
                    worst = v
                if worst == INFINITY or 1 + worst >= best:
                    break
            if 1 + worst < best:
                best = 1 + worst
                if best == 1:
                    break
        memo[key] = best
        return best

    t = tau(g.full, g.marked0)
    line: list[VertexId] = []
    if t != INFINITY:
        alive, marked = g.full, g.marked0
        while True:
            triv = g.trivial_tau(alive, marked)
            if triv == 0:
                break
            if triv == 1:
                for e in g.edges:
                    if not e & ~alive and (e & ~marked).bit_count() == 1:
                        line.append(g.vertex_of(e & ~marked))
                        break
                break
            cur = tau(alive, marked)
            nm = alive & ~marked
            move = None
            for x in _bits(nm):
                m2 = marked | x
                worst = max(tau(alive & ~y, m2) for y in _bits(nm & ~x))
                if 1 + worst == cur:
                    move = x
                    break
            assert move is not None
            m2 = marked | move
            reply = max(_bits(nm & ~move), key=lambda y: (tau(alive & ~y, m2), -y))
            line.append(g.vertex_of(move))
            line.append(g.vertex_of(reply))
            alive, marked = alive & ~reply, m2
    return OracleResult(
        "maker" if t != INFINITY else "breaker", t, tuple(line)
    )


def tau_at_most(
    h: MarkedHypergraph,
    rounds: int,
    vertex_guard: int = 20,
    round_guard: int = 6,
    _memo: Optional[dict] = None,
) -> bool:
    """Decision form of the round-count recursion: can Maker finish within
    ``rounds``?  Works above the full-minimax size guard because the depth is
    bounded; move ordering prefers shortest-nunchaku midpoints for Maker and
    the shoulder next to Maker's pick for Breaker, which only reorders the
    exact search."""
    if len(h.vertices) > vertex_guard or rounds > round_guard:
        raise ResourceGuardError("tau_at_most guard exceeded")
    memo: dict = {} if _memo is None else _memo

    def order_maker(board: MarkedHypergraph) -> list[VertexId]:
        nm = list(board.non_marked)
        wit = structures.find_shortest_nunchaku(board)
        if wit is None or wit.length < 2:
            return nm
        pts = wit.connection_points()
        mid = len(pts) // 2
        preferred = sorted(
            set(pts[1:-1]), key=lambda v: (abs(pts.index(v) - mid), v)
        )
        return preferred + [v for v in nm if v not in preferred]

    def order_breaker(board: MarkedHypergraph, exclude: VertexId) -> list[VertexId]:
        nm = [v for v in board.non_marked if v != exclude]
        wit = structures.find_shortest_nunchaku(board)
        if wit is None:
            return nm
        inside = [v for v in nm if v in wit.vertices]
        return inside + [v for v in nm if v not in wit.vertices]

    def rec(board: MarkedHypergraph, t: int) -> bool:
        key = (board.key(), t)
        got = memo.get(key)
        if got is not None:
            return got
        triv = _trivial_tau(board)
        if triv is not None:
            res = triv <= t
        elif t <= 0 or len(board.non_marked) <= 1:
            res = False
        else:
            res = False
            for x in order_maker(board):
                bx = board.mark(x)
                if all(rec(bx.remove(y), t - 1) for y in order_breaker(bx, x)):
                    res = True
                    break
        memo[key] = res
        return res

    return rec(h, rounds)


def _trivial_tau(h: MarkedHypergraph) -> Optional[int]:
    best = None
    m = h.marked_set
    for e in h.edges:
        c = sum(1 for v in e if v not in m)
        if c == 0:
            return 0
        if c == 1:
            best = 1
    return best


# ---------------------------------------------------------------------------
# Exact canonical form (individualization-refinement)


def _refine(
    n: int,
    inc: list[list[tuple[int, ...]]],
    colors: list[int],
) -> list[int]:
    while True:
        sigs = []
        for v in range(n):
            edge_sig = sorted(
                (len(e), tuple(sorted(colors[u] for u in e if u != v))) for e in inc[v]
            )
            sigs.append((colors[v], tuple(edge_sig)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _canonize(h: MarkedHypergraph) -> tuple[tuple, list[tuple[int, ...]]]:
    """Canonical encoding plus all vertex relabelings achieving it."""
    verts = h.vertices
    n = len(verts)
    vi = {v: i for i, v in enumerate(verts)}
    edges_i = [tuple(sorted(vi[v] for v in e)) for e in h.edges]
    marked_i = {vi[v] for v in h.marked}
    inc: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in edges_i:
        for v in e:
            inc[v].append(e)
    init = [(v in marked_i, len(inc[v])) for v in range(n)]
    ranking = {s: i for i, s in enumerate(sorted(set(init)))}
    colors0 = _refine(n, inc, [ranking[s] for s in init])

    best: list[Optional[tuple]] = [None]
    labelings: list[tuple[int, ...]] = []

    def encode(label: list[int]) -> tuple:
        es = tuple(sorted(tuple(sorted(label[v] for v in e)) for e in edges_i))
        ms = tuple(sorted(label[v] for v in marked_i))
        return (n, es, ms)

    def search(colors: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                if target is None or len(cells[c]) < len(cells[target]):
                    target = c
        if target is None:
            label = [0] * n
            for v in range(n):
                label[v] = colors[v]
            enc = encode(label)
            if best[0] is None or enc < best[0]:
                best[0] = enc
                labelings.clear()
                labelings.append(tuple(label))
            elif enc == best[0]:
                labelings.append(tuple(label))
            return
        for v in cells[target]:
            bumped = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
            rank = {s: i for i, s in enumerate(sorted(set(bumped)))}
            search(_refine(n, inc, [rank[s] for s in bumped]))

    search(colors0)
    assert best[0] is not None
    return best[0], labelings


def canonical_key(h: MarkedHypergraph) -> tuple:
    """Isomorphism-invariant board key (exact, via refinement search)."""
    return _canonize(h)[0]


def automorphisms(h: MarkedHypergraph) -> list[dict[VertexId, VertexId]]:
    """All mark-preserving self-relabelings of the board."""
    _, labelings = _canonize(h)
    verts = h.vertices
    base = labelings[0]
    inv0 = {base[i]: verts[i] for i in range(len(verts))}
    out = []
    for lab in labelings:
        out.append({verts[i]: inv0[lab[i]] for i in range(len(verts))})
    return out


# ---------------------------------------------------------------------------
# Instance generation


def _shape_catalog(
    max_edges: int, max_vertices: int
) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
    """Non-isomorphic 3-uniform edge sets (support = all vertices), by
    orderly augmentation with canonical-form deduplication."""
    catalog: list[tuple[tuple[tuple[int, ...], ...], int]] = []
    level: dict[tuple, tuple[tuple[tuple[int, ...], ...], int]] = {}
    seed = MarkedHypergraph.build(range(3), [(0, 1, 2)])
    level[canonical_key(seed)] = (((0, 1, 2),), 3)
    catalog.extend(level.values())
    for _ in range(1, max_edges):
        nxt: dict[tuple, tuple[tuple[tuple[int, ...], ...], int]] = {}
        for edges, s in level.values():
            existing = set(edges)
            reach = min(s + 3, max_vertices)
            for cand in combinations(range(reach), 3):
                if cand in existing:
                    continue
                fresh = [v for v in cand if v >= s]
                if fresh != list(range(s, s + len(fresh))):
                    continue  # fresh ids must be contiguous; relabelings are dups
                s2 = s + len(fresh)
                if s2 > max_vertices:
                    continue
                grown = MarkedHypergraph.build(range(s2), edges + (cand,))
                key = canonical_key(grown)
                if key not in nxt:
                    _, enc_edges, _ = key
                    nxt[key] = (enc_edges, s2)
        level = nxt
        catalog.extend(
            v for v in sorted(level.values(), key=lambda t: (t[1], t[0]))
        )
    return catalog


def _mark_orbit_reps(s: int, auts: list[dict[int, int]]) -> Iterator[tuple[int, ...]]:
    """One marked subset per orbit of the shape's automorphism group."""
    perms = [tuple(a[v] for v in range(s)) for a in auts]
    for mask in range(1 << s):
        subset = tuple(v for v in range(s) if mask >> v & 1)
        rep = min(
            tuple(sorted(p[v] for v in subset)) for p in perms
        )
        if rep == subset:
            yield subset


def enumerate_instances(
    mode: str = "exhaustive",
    max_edges: int = 5,
    max_vertices: int = 9,
    include_isolated: bool = True,
    count: int = 0,
    seed: int = 0,
    n_range: tuple[int, int] = (10, 12),
    edges_range: tuple[int, int] = (4, 11),
    marks_range: tuple[int, int] = (0, 4),
) -> Iterator[MarkedHypergraph]:
    """Deterministic stream of boards.

    ``exhaustive``: every 3-uniform board up to isomorphism with at most
    ``max_edges`` edges over at most ``max_vertices`` vertices, including
    isolated-vertex paddings (marked isolated vertices are inert and skipped).
    ``random``: seeded random boards.  ``forest``: seeded random acyclic
    boards.
    """
    if mode == "exhaustive":
        for n in range(1, max_vertices + 1):
            yield MarkedHypergraph.build(range(n))
        for edges, s in _shape_catalog(max_edges, max_vertices):
            shape = MarkedHypergraph.build(range(s), edges)
            auts = automorphisms(shape)
            pads = range(max_vertices - s + 1) if include_isolated else range(1)
            for marks in _mark_orbit_reps(s, auts):
                for pad in pads:
                    yield MarkedHypergraph.build(range(s + pad), edges, marks)
    elif mode == "random":
        rng = random.Random(seed)
        for _ in range(count):
            yield random_board(rng, n_range, edges_range, marks_range)
    elif mode == "forest":
        rng = random.Random(seed)
        for _ in range(count):
            yield random_forest(rng, n_range, edges_range, marks_range)
    else:
        raise DomainError(f"unknown generation mode {mode!r}")


def random_board(
    rng: random.Random,
    n_range: tuple[int, int] = (10, 12),
    edges_range: tuple[int, int] = (4, 11),
    marks_range: tuple[int, int] = (0, 4),
) -> MarkedHypergraph:
    n = rng.randint(*n_range)
    m = rng.randint(*edges_range)
    pool = list(combinations(range(n), 3))
    edges = rng.sample(pool, min(m, len(pool)))
    k = rng.randint(*marks_range)
    marks = rng.sample(range(n), min(k, n))
    return MarkedHypergraph.build(range(n), edges, marks)


def random_forest(
    rng: random.Random,
    n_range: tuple[int, int] = (10, 14),
    edges_range: tuple[int, int] = (2, 6),
    marks_range: tuple[int, int] = (0, 3),
) -> MarkedHypergraph:
    """Random acyclic board: every new edge touches at most one old vertex."""
    n_max = rng.randint(*n_range)
    m = rng.randint(*edges_range)
    edges: list[tuple[int, ...]] = [(0, 1, 2)]
    used = 3
    for _ in range(m - 1):
        if used + 2 > n_max:
            break
        if edges and rng.random() < 0.75:
            anchor = rng.randrange(used)
            e = (anchor, used, used + 1)
            used += 2
        else:
            if used + 3 > n_max:
                break
            e = (used, used + 1, used + 2)
            used += 3
        edges.append(tuple(sorted(e)))
    k = rng.randint(*marks_range)
    marks = rng.sample(range(used), min(k, used))
    return MarkedHypergraph.build(range(used), edges, marks)
