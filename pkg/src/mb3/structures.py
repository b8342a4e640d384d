"""Linear paths, cycles, tadpoles and friends: search, validation, projections.

Every finder returns a witness object that re-validates its defining bullet
points on construction, so a returned structure is correct by checking, not
by trust in the search.  Searches are depth-first over edge sequences with a
used-vertex set; they are complete (an absent return really means absence)
and deterministic (canonical edge/vertex order, first witness returned).
Worst case is exponential; desk-scale instances dominate and the search is a
seam that a polynomial linear-connectivity routine could replace later.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Optional, Union

from .core import (
    INFINITY,
    DomainError,
    MarkedHypergraph,
    VertexId,
)

Edge = tuple[VertexId, ...]


@dataclass(frozen=True)
class EdgeSequence:
    """Ordered mix of singleton vertices and edges describing a structure."""

    items: tuple[tuple[VertexId, ...], ...]

    @cached_property
    def vertices(self) -> frozenset[VertexId]:
        out: set[VertexId] = set()
        for it in self.items:
            out.update(it)
        return frozenset(out)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(it for it in self.items if len(it) >= 2)

    def is_connected(self) -> bool:
        return all(
            set(self.items[i]) & set(self.items[i + 1]) for i in range(len(self.items) - 1)
        )

    def is_linear(self) -> bool:
        es = self.edges
        return all(len(set(es[i]) & set(es[i + 1])) <= 1 for i in range(len(es) - 1))

    def has_repeated_vertex(self) -> bool:
        for i in range(len(self.items)):
            for j in range(i + 2, len(self.items)):
                if set(self.items[i]) & set(self.items[j]):
                    return True
        return False


class InvalidWitness(DomainError):
    """A structure witness failed its own definition check."""


@dataclass(frozen=True)
class PathWitness:
    """A linear ab-path: consecutive edges share one vertex, no other repeats."""

    a: VertexId
    b: VertexId
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        L = len(self.edges)
        if L == 0:
            if self.a != self.b:
                raise InvalidWitness("length-0 path must have equal endpoints")
            return
        if self.a == self.b:
            raise InvalidWitness("positive-length path needs distinct endpoints")
        if len(set(self.edges)) != L:
            raise InvalidWitness("path edges must be distinct")
        for e in self.edges:
            if len(e) != 3:
                raise InvalidWitness(f"path edge {e} is not a triple")
        if self.a not in self.edges[0] or self.b not in self.edges[-1]:
            raise InvalidWitness("endpoints must lie in the terminal edges")
        for i in range(L):
            for j in range(i + 1, L):
                common = set(self.edges[i]) & set(self.edges[j])
                if j == i + 1:
                    if len(common) != 1:
                        raise InvalidWitness("consecutive path edges must share one vertex")
                elif common:
                    raise InvalidWitness("non-consecutive path edges must be disjoint")
        if any(self.a in e for e in self.edges[1:]):
            raise InvalidWitness("endpoint a repeats")
        if any(self.b in e for e in self.edges[: L - 1]):
            raise InvalidWitness("endpoint b repeats")

    @property
    def length(self) -> int:
        return len(self.edges)

    @cached_property
    def vertices(self) -> frozenset[VertexId]:
        out = {self.a, self.b}
        for e in self.edges:
            out.update(e)
        return frozenset(out)

    @cached_property
    def inner(self) -> frozenset[VertexId]:
        """Degree-2 vertices (the connection points between edges)."""
        out = set()
        for i in range(len(self.edges) - 1):
            out.update(set(self.edges[i]) & set(self.edges[i + 1]))
        return frozenset(out)

    @cached_property
    def sequence(self) -> EdgeSequence:
        return EdgeSequence(((self.a,),) + self.edges + ((self.b,),))

    def reversed(self) -> "PathWitness":
        return PathWitness(self.b, self.a, tuple(reversed(self.edges)))

    def connection_points(self) -> tuple[VertexId, ...]:
        """c_0=a, c_1, ..., c_L=b along the path."""
        pts = [self.a]
        for i in range(len(self.edges) - 1):
            (c,) = set(self.edges[i]) & set(self.edges[i + 1])
            pts.append(c)
        if self.edges:
            pts.append(self.b)
        return tuple(pts)

    def outer_near(self, end: VertexId) -> VertexId:
        """The degree-1 vertex of the first edge seen from ``end`` (o(a, aPb))."""
        if self.length == 0:
            raise DomainError("length-0 path has no outer vertex")
        if end == self.a:
            first = self.edges[0]
        elif end == self.b:
            first = self.edges[-1]
        else:
            raise DomainError("end must be one of the path endpoints")
        excluded = self.inner | {self.a, self.b}
        (o,) = [v for v in first if v not in excluded]
        return o

    def subpath(self, u: VertexId, v: VertexId) -> "PathWitness":
        """The unique uv-path inside this path."""
        if u not in self.vertices or v not in self.vertices:
            raise DomainError("subpath endpoints must lie on the path")
        if u == v:
            return PathWitness(u, u, ())
        lo = [i for i, e in enumerate(self.edges) if u in e]
        hi = [i for i, e in enumerate(self.edges) if v in e]
        i, j = max(lo), min(hi)
        if i > j:
            i, j = max(hi), min(lo)
            u, v = v, u
        return PathWitness(u, v, self.edges[i : j + 1])


@dataclass(frozen=True)
class CycleWitness:
    """An a-cycle: closed linear edge sequence anchored at inner vertex a."""

    anchor: VertexId
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        L = len(self.edges)
        if L < 2:
            raise InvalidWitness("cycle needs at least two edges")
        if len(set(self.edges)) != L:
            raise InvalidWitness("cycle edges must be distinct")
        for e in self.edges:
            if len(e) != 3:
                raise InvalidWitness(f"cycle edge {e} is not a triple")
        first, last = self.edges[0], self.edges[-1]
        if self.anchor not in first or self.anchor not in last:
            raise InvalidWitness("anchor must lie in the terminal edges")
        if L == 2:
            if len(set(first) & set(last)) != 2:
                raise InvalidWitness("length-2 cycle edges must share two vertices")
            return
        for i in range(L):
            for j in range(i + 1, L):
                common = set(self.edges[i]) & set(self.edges[j])
                if j == i + 1:
                    if len(common) != 1:
                        raise InvalidWitness("consecutive cycle edges must share one vertex")
                elif i == 0 and j == L - 1:
                    if common != {self.anchor}:
                        raise InvalidWitness("terminal cycle edges must share only the anchor")
                elif common:
                    raise InvalidWitness("non-consecutive cycle edges must be disjoint")
        if any(self.anchor in e for e in self.edges[1 : L - 1]):
            raise InvalidWitness("anchor repeats in the middle of the cycle")

    @property
    def length(self) -> int:
        return len(self.edges)

    @cached_property
    def vertices(self) -> frozenset[VertexId]:
        out: set[VertexId] = set()
        for e in self.edges:
            out.update(e)
        return frozenset(out)

    @cached_property
    def inner(self) -> frozenset[VertexId]:
        deg: dict[VertexId, int] = {}
        for e in self.edges:
            for v in e:
                deg[v] = deg.get(v, 0) + 1
        return frozenset(v for v, d in deg.items() if d == 2)

    @cached_property
    def outer(self) -> frozenset[VertexId]:
        return self.vertices - self.inner

    @cached_property
    def sequence(self) -> EdgeSequence:
        return EdgeSequence(((self.anchor,),) + self.edges + ((self.anchor,),))

    def connection_points(self) -> tuple[VertexId, ...]:
        """c_0=anchor, c_1, ..., c_{L-1} between consecutive edges."""
        pts = [self.anchor]
        for i in range(len(self.edges) - 1):
            common = sorted(set(self.edges[i]) & set(self.edges[i + 1]))
            if len(common) == 2:  # length-2 cycle: the non-anchor shared vertex
                common = [v for v in common if v != self.anchor]
            pts.append(common[0])
        return tuple(pts)


@dataclass(frozen=True)
class TadpoleWitness:
    """An a-tadpole: an ab-path glued to a b-cycle at the junction b."""

    path_part: PathWitness
    cycle_part: CycleWitness

    def __post_init__(self) -> None:
        if self.path_part.b != self.cycle_part.anchor:
            raise InvalidWitness("path must end at the cycle anchor")
        if self.path_part.vertices & self.cycle_part.vertices != {self.junction}:
            raise InvalidWitness("path and cycle may only share the junction")

    @property
    def apex(self) -> VertexId:
        return self.path_part.a

    @property
    def junction(self) -> VertexId:
        return self.cycle_part.anchor

    @property
    def is_cycle(self) -> bool:
        return self.path_part.length == 0

    @cached_property
    def vertices(self) -> frozenset[VertexId]:
        return self.path_part.vertices | self.cycle_part.vertices

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return self.path_part.edges + self.cycle_part.edges

    @cached_property
    def outer_of_cycle(self) -> frozenset[VertexId]:
        return self.cycle_part.outer


StructureWitness = Union[PathWitness, CycleWitness, TadpoleWitness]


@dataclass(frozen=True)
class ThreatWitness:
    """A fully marked edge, nunchaku, necklace, or snake found in a board."""

    kind: str  # fully_marked_edge | nunchaku | necklace | snake
    witness: Union[Edge, PathWitness, CycleWitness]

    @cached_property
    def vertices(self) -> frozenset[VertexId]:
        if isinstance(self.witness, tuple):
            return frozenset(self.witness)
        return self.witness.vertices

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        if isinstance(self.witness, tuple):
            return (self.witness,)
        return self.witness.edges


# ---------------------------------------------------------------------------
# Path search


def _incidence(
    h: MarkedHypergraph,
    endpoints: frozenset[VertexId],
    forbidden: frozenset[VertexId],
    interior_unmarked: bool,
) -> dict[VertexId, list[Edge]]:
    marked = h.marked_set
    inc: dict[VertexId, list[Edge]] = {}
    for e in h.triples:
        es = set(e)
        if es & forbidden:
            continue
        if interior_unmarked and any(w in marked and w not in endpoints for w in e):
            continue
        for w in e:
            inc.setdefault(w, []).append(e)
    return inc


def iter_paths(
    h: MarkedHypergraph,
    u: VertexId,
    v: VertexId,
    forbidden: frozenset[VertexId] = frozenset(),
    interior_unmarked: bool = False,
    max_length: Optional[int] = None,
) -> Iterator[tuple[Edge, ...]]:
    """Yield the edge tuples of every uv-path, in deterministic DFS order.

    States (frontier vertex, used set, budget) that produced nothing are
    memoized and skipped; successful states are re-explored so enumeration
    stays complete.
    """
    if u not in h.vertex_set or v not in h.vertex_set:
        return
    forb = frozenset(forbidden)
    if u in forb or v in forb:
        return
    if u == v:
        yield ()
        return
    inc = _incidence(h, frozenset((u, v)), forb, interior_unmarked)
    budget = len(h.triples) if max_length is None else max_length
    fail: set[tuple] = set()

    def walk(conn: VertexId, used: frozenset, prefix: tuple, remaining: int):
        key = (conn, used, remaining)
        if key in fail:
            return
        produced = False
        for e in inc.get(conn, ()):
            es = frozenset(e)
            if es & used != {conn}:
                continue
            if v in es:
                produced = True
                yield prefix + (e,)
            elif remaining > 1:
                nu = used | es
                for c2 in e:
                    if c2 == conn:
                        continue
                    for out in walk(c2, nu, prefix + (e,), remaining - 1):
                        produced = True
                        yield out
        if not produced:
            fail.add(key)

    if budget >= 1:
        yield from walk(u, frozenset((u,)), (), budget)


def find_path(
    h: MarkedHypergraph,
    u: VertexId,
    v: VertexId,
    forbidden: frozenset[VertexId] = frozenset(),
    interior_unmarked: bool = False,
    max_length: Optional[int] = None,
) -> Optional[PathWitness]:
    """First uv-path avoiding ``forbidden``; None means none exists."""
    for seq in iter_paths(h, u, v, forbidden, interior_unmarked, max_length):
        return PathWitness(u, v, seq)
    return None


def find_path_shortest(
    h: MarkedHypergraph,
    u: VertexId,
    v: VertexId,
    forbidden: frozenset[VertexId] = frozenset(),
    interior_unmarked: bool = False,
) -> Optional[PathWitness]:
    """Shortest uv-path via iterative deepening on the length."""
    if u == v:
        return find_path(h, u, v, forbidden, interior_unmarked)
    for bound in range(1, len(h.triples) + 1):
        for seq in iter_paths(h, u, v, forbidden, interior_unmarked, max_length=bound):
            return PathWitness(u, v, seq)
    return None


def iter_upaths(
    h: MarkedHypergraph,
    u: VertexId,
    exact_length: int,
    forbidden: frozenset[VertexId] = frozenset(),
) -> Iterator[tuple[Edge, ...]]:
    """All u-paths with exactly ``exact_length`` edges, DFS order."""
    if u not in h.vertex_set or u in forbidden or exact_length < 1:
        return
    inc = _incidence(h, frozenset((u,)), frozenset(forbidden), False)

    def walk(conn: VertexId, used: frozenset, prefix: tuple) -> Iterator:
        for e in inc.get(conn, ()):
            es = frozenset(e)
            if es & used != {conn}:
                continue
            nxt = prefix + (e,)
            if len(nxt) == exact_length:
                yield nxt
            else:
                nu = used | es
                for c2 in e:
                    if c2 != conn:
                        yield from walk(c2, nu, nxt)

    yield from walk(u, frozenset((u,)), ())


# ---------------------------------------------------------------------------
# Cycles, snakes, tadpoles


def find_cycle_through(
    h: MarkedHypergraph,
    a: VertexId,
    unmarked_only: bool = False,
    forbidden: frozenset[VertexId] = frozenset(),
) -> Optional[CycleWitness]:
    """First cycle with ``a`` as an inner vertex, avoiding ``forbidden``.

    With ``unmarked_only`` every cycle vertex except possibly ``a`` must be
    non-marked.  Each edge {a,p,q} through ``a`` is closed by an ap-path that
    avoids q.
    """
    if a not in h.vertex_set or a in forbidden:
        return None
    marked = h.marked_set
    for e in h.triples:
        if a not in e or set(e) & forbidden:
            continue
        if unmarked_only and any(w in marked and w != a for w in e):
            continue
        rest = [w for w in e if w != a]
        for p in rest:
            (q,) = [w for w in rest if w != p]
            for seq in iter_paths(
                h, a, p, forbidden | {q}, interior_unmarked=unmarked_only
            ):
                return CycleWitness(a, seq + (e,))
    return None


def find_snake(
    h: MarkedHypergraph,
    x: VertexId,
    forbidden: frozenset[VertexId] = frozenset(),
) -> Optional[PathWitness]:
    """An xm-path of positive length, m marked, every other vertex not.

    The witness has exactly one marked vertex, so it is an S-danger at x.
    """
    if x not in h.vertex_set or x in h.marked_set or x in forbidden:
        return None
    for m in h.marked:
        if m in forbidden:
            continue
        got = find_path(h, x, m, forbidden, interior_unmarked=True)
        if got is not None:
            return got
    return None


def find_tadpole(
    h: MarkedHypergraph,
    x: VertexId,
    unmarked_only: bool = False,
    forbidden: frozenset[VertexId] = frozenset(),
) -> Optional[TadpoleWitness]:
    """First x-tadpole (a cycle through x counts, with a length-0 path)."""
    if x not in h.vertex_set or x in forbidden:
        return None
    if unmarked_only and x in h.marked_set:
        return None
    cyc = find_cycle_through(h, x, unmarked_only, forbidden)
    if cyc is not None:
        return TadpoleWitness(PathWitness(x, x, ()), cyc)
    marked = h.marked_set
    for b in h.vertices:
        if b == x or b in forbidden:
            continue
        if unmarked_only and b in marked:
            continue
        for seq in iter_paths(h, x, b, forbidden, interior_unmarked=unmarked_only):
            path = PathWitness(x, b, seq)
            cyc = find_cycle_through(
                h, b, unmarked_only, forbidden | (path.vertices - {b})
            )
            if cyc is not None:
                return TadpoleWitness(path, cyc)
    return None


def has_cycle(h: MarkedHypergraph) -> bool:
    return any(find_cycle_through(h, v) is not None for v in h.vertices)


# ---------------------------------------------------------------------------
# Projections


def project(
    x: StructureWitness,
    u: VertexId,
    targets: frozenset[VertexId],
) -> PathWitness:
    """Shortest u-path inside the witness whose last edge first touches
    ``targets``; length 0 exactly when u is already a target."""
    if isinstance(x, CycleWitness):
        x = TadpoleWitness(PathWitness(x.anchor, x.anchor, ()), x)
    vertices = x.vertices
    edges = x.edges
    w = frozenset(targets)
    if u not in vertices:
        raise DomainError("projection start must lie on the structure")
    if not w & vertices:
        raise DomainError("projection target set misses the structure")
    if (
        isinstance(x, TadpoleWitness)
        and x.cycle_part.length == 2
        and u in x.outer_of_cycle
        and w & vertices == x.outer_of_cycle - {u}
    ):
        raise DomainError("degenerate tadpole: target is the unreachable outer vertex")
    if u in w:
        return PathWitness(u, u, ())
    host = MarkedHypergraph.build(vertices, edges)
    for bound in range(1, len(edges) + 1):
        for seq in iter_upaths(host, u, bound):
            if any(set(e) & w for e in seq[:-1]):
                continue
            hit = sorted(set(seq[-1]) & w)
            if hit:
                return PathWitness(u, hit[0], seq)
    raise DomainError("no path from u reaches the target set inside the structure")


# ---------------------------------------------------------------------------
# Edge-versus-path classification


def is_perp(e_star: Edge, path: PathWitness, from_end: Optional[VertexId] = None) -> bool:
    """Orientation predicate: e* contains a forward vertex pair of the path.

    True when e* includes (first edge minus the start vertex) or the two new
    vertices some later edge introduces, reading the path from ``from_end``
    (default: from ``path.a``).
    """
    if path.length == 0:
        raise DomainError("orientation needs a positive-length path")
    p = path if from_end in (None, path.a) else path.reversed()
    s = set(e_star)
    if set(p.edges[0]) - {p.a} <= s:
        return True
    for i in range(1, p.length):
        if set(p.edges[i]) - set(p.edges[i - 1]) <= s:
            return True
    return False


@dataclass(frozen=True)
class EdgePathCase:
    table: int
    cell: str
    witnesses: dict


def _prefix_edges(path: PathWitness, stop: frozenset[VertexId]) -> tuple[Edge, ...]:
    """Edges of aPb up to and including the first edge meeting ``stop``
    (empty when a itself is in ``stop``)."""
    if path.a in stop:
        return ()
    for i, e in enumerate(path.edges):
        if set(e) & stop:
            return path.edges[: i + 1]
    raise DomainError("stop set does not meet the path")


def _union_host(path: PathWitness, extra: Edge) -> MarkedHypergraph:
    return MarkedHypergraph.build(
        path.vertices | set(extra), path.edges + ((extra,) if extra not in path.edges else ())
    )


def classify_edge_vs_path(
    path: PathWitness,
    e: Edge,
    u: Optional[VertexId] = None,
) -> EdgePathCase:
    """Which extension case an edge meeting an ab-path falls into.

    Returns the table/cell tag together with the promised witnesses, each
    validated.  Configurations outside the four tables, and the impossible
    double-orientation cells, raise DomainError naming the violation.
    """
    if path.length == 0:
        raise DomainError("classification needs a positive-length path")
    e = tuple(sorted(e))
    inter = set(e) & path.vertices
    if not inter:
        raise DomainError("edge must intersect the path")
    a, b = path.a, path.b
    if u is not None and (u not in e or u in path.vertices):
        raise DomainError("u must be a vertex of e outside the path")

    if len(inter) == 1 and u is not None:
        au = PathWitness(a, u, _prefix_edges(path, frozenset(e)) + (e,))
        bu = PathWitness(b, u, _prefix_edges(path.reversed(), frozenset(e)) + (e,))
        return EdgePathCase(1, "one-vertex", {"au_path": au, "bu_path": bu})

    if len(inter) == 2 and u is not None:
        f = is_perp(e, path, from_end=a)
        g = is_perp(e, path, from_end=b)
        if f and g:
            raise DomainError("double orientation hit: impossible cell of table 2")
        host = _union_host(path, e)
        wit: dict = {}
        if not f:
            wit["au_path"] = PathWitness(a, u, _prefix_edges(path, frozenset(e)) + (e,))
        if not g:
            wit["bu_path"] = PathWitness(b, u, _prefix_edges(path.reversed(), frozenset(e)) + (e,))
        if f:
            tad = find_tadpole(host, b)
            if tad is None:
                raise RuntimeError("table 2 promised a b-tadpole")
            wit["b_tadpole"] = tad
            return EdgePathCase(2, "forward-perp", wit)
        if g:
            tad = find_tadpole(host, a)
            if tad is None:
                raise RuntimeError("table 2 promised an a-tadpole")
            wit["a_tadpole"] = tad
            return EdgePathCase(2, "backward-perp", wit)
        return EdgePathCase(2, "no-perp", wit)

    if a in e and e != path.edges[0]:
        if len(inter) == 2:
            prefix = _prefix_edges(path, frozenset(e) - {a})
            cyc = CycleWitness(a, prefix + (e,))
            return EdgePathCase(3, "two-vertices-with-a", {"a_cycle": cyc})
        if len(inter) == 3:
            f = is_perp(e, path, from_end=a)
            g = is_perp(e, path, from_end=b)
            if f and g:
                raise DomainError("double orientation hit: impossible cell of table 4")
            host = _union_host(path, e)
            if not f:
                prefix = _prefix_edges(path, frozenset(e) - {a})
                cyc = CycleWitness(a, prefix + (e,))
                cell = "no-forward-perp" if not g else "backward-perp"
                return EdgePathCase(4, cell, {"a_cycle": cyc})
            tad = find_tadpole(host, b)
            if tad is None:
                raise RuntimeError("table 4 promised a b-tadpole")
            return EdgePathCase(4, "forward-perp", {"b_tadpole": tad})

    raise DomainError("configuration matches no table precondition")


# ---------------------------------------------------------------------------
# Union lemmas


def _witness_union(*parts: StructureWitness) -> MarkedHypergraph:
    vs: set[VertexId] = set()
    es: set[Edge] = set()
    for p in parts:
        vs |= p.vertices
        es |= set(p.edges)
    return MarkedHypergraph.build(vs, es)


def _marked_union(h: MarkedHypergraph, *parts: StructureWitness) -> MarkedHypergraph:
    plain = _witness_union(*parts)
    return MarkedHypergraph.build(
        plain.vertices, plain.edges, set(plain.vertices) & h.marked_set
    )


def union_lemma(k: int, *args, **kwargs):
    if k == 1:
        return _lemma1(*args, **kwargs)
    if k == 2:
        return _lemma2(*args, **kwargs)
    if k == 3:
        return _lemma3(*args, **kwargs)
    if k == 4:
        return _lemma4(*args, **kwargs)
    raise DomainError("union lemma index must be 1..4")


def _lemma1(path_ab: PathWitness, path_c: PathWitness) -> dict:
    """No ca-path in the union forces: e* meets P_ab on 2 vertices and is
    forward-perp, and the union holds a cb-path and a b-tadpole."""
    a, b, c = path_ab.a, path_ab.b, path_c.a
    if len({a, b, c}) != 3:
        raise DomainError("lemma 1 needs distinct a, b, c")
    if c in path_ab.vertices:
        raise DomainError("lemma 1 needs c outside the ab-path")
    if not path_c.vertices & path_ab.vertices:
        raise DomainError("lemma 1 needs intersecting paths")
    host = _witness_union(path_ab, path_c)
    if find_path(host, c, a) is not None:
        raise DomainError("lemma 1 hypothesis fails: a ca-path exists")
    proj = project(path_c, c, frozenset(path_ab.vertices))
    e_star = proj.edges[-1]
    if len(set(e_star) & path_ab.vertices) != 2 or not is_perp(e_star, path_ab, from_end=a):
        raise RuntimeError("lemma 1 contract violated on e*")
    cb = find_path(host, c, b)
    tad = find_tadpole(_union_host(path_ab, e_star), b)
    if cb is None or tad is None:
        raise RuntimeError("lemma 1 promised a cb-path and a b-tadpole")
    return {"e_star": e_star, "cb_path": cb, "b_tadpole": tad}


def _lemma2(path_ab: PathWitness, path_a: PathWitness) -> dict:
    """No a-cycle in the union forces a forward-perp e* and a b-tadpole."""
    a, b = path_ab.a, path_ab.b
    if path_a.a != a:
        raise DomainError("lemma 2 needs a path anchored at a")
    if path_a.length == 0 or path_a.edges[0] == path_ab.edges[0]:
        raise DomainError("lemma 2 needs a different starting edge at a")
    if not path_a.vertices & (path_ab.vertices - {a}):
        raise DomainError("lemma 2 needs the a-path to re-enter the ab-path")
    host = _witness_union(path_ab, path_a)
    if find_cycle_through(host, a) is not None:
        raise DomainError("lemma 2 hypothesis fails: an a-cycle exists")
    proj = project(path_a, a, frozenset(path_ab.vertices - {a}))
    e_star = proj.edges[-1]
    if not is_perp(e_star, path_ab, from_end=a):
        raise RuntimeError("lemma 2 contract violated on e*")
    tad = find_tadpole(_union_host(path_ab, e_star), b)
    if tad is None:
        raise RuntimeError("lemma 2 promised a b-tadpole")
    return {"e_star": e_star, "b_tadpole": tad}


def _lemma3(tadpole: TadpoleWitness, path_c: PathWitness) -> dict:
    """No ca-path in the union forces a c-tadpole (and T is not a cycle)."""
    a, c = tadpole.apex, path_c.a
    if c in tadpole.vertices:
        raise DomainError("lemma 3 needs c outside the tadpole")
    if not path_c.vertices & tadpole.vertices:
        raise DomainError("lemma 3 needs the c-path to meet the tadpole")
    host = _witness_union(tadpole.path_part, tadpole.cycle_part, path_c)
    if find_path(host, c, a) is not None:
        raise DomainError("lemma 3 hypothesis fails: a ca-path exists")
    if tadpole.is_cycle:
        raise RuntimeError("lemma 3 contract violated: tadpole is a cycle")
    proj = project(path_c, c, frozenset(tadpole.vertices))
    e_star = proj.edges[-1]
    if len(set(e_star) & tadpole.vertices) != 2 or not is_perp(
        e_star, tadpole.path_part, from_end=a
    ):
        raise RuntimeError("lemma 3 contract violated on e*")
    tad = find_tadpole(host, c)
    if tad is None:
        raise RuntimeError("lemma 3 promised a c-tadpole")
    return {"e_star": e_star, "c_tadpole": tad}


def _plain_snake_exists(h: MarkedHypergraph, c: VertexId) -> bool:
    """A c-snake in the loose sense: any positive-length path from c to a
    marked vertex, marked vertices allowed along the way."""
    return any(m != c and find_path(h, c, m) is not None for m in h.marked)


def _lemma4(
    snake_ab: PathWitness, path_c: PathWitness, h: MarkedHypergraph, bullet: int
) -> dict:
    """Snake version of lemma 1, in both orientations (b marked)."""
    a, b, c = snake_ab.a, snake_ab.b, path_c.a
    if b not in h.marked_set:
        raise DomainError("lemma 4 needs the snake endpoint b marked")
    if len({a, b, c}) != 3 or c in snake_ab.vertices:
        raise DomainError("lemma 4 needs distinct a, b, c with c outside the snake")
    if not path_c.vertices & snake_ab.vertices:
        raise DomainError("lemma 4 needs intersecting structures")
    host = _marked_union(h, snake_ab, path_c)
    if bullet == 1:
        if _plain_snake_exists(host, c):
            raise DomainError("lemma 4(i) hypothesis fails: a c-snake exists")
        ca = find_path(host, c, a)
        tad = find_tadpole(host, a)
        if ca is None or tad is None:
            raise RuntimeError("lemma 4(i) promised a ca-path and an a-tadpole")
        return {"ca_path": ca, "a_tadpole": tad}
    if bullet == 2:
        if find_path(host, c, a) is not None:
            raise DomainError("lemma 4(ii) hypothesis fails: a ca-path exists")
        cb = find_path(host, c, b)
        tad = find_tadpole(host, b)
        if cb is None or tad is None:
            raise RuntimeError("lemma 4(ii) promised a cb-snake and a b-tadpole")
        return {"cb_snake": cb, "b_tadpole": tad}
    raise DomainError("lemma 4 bullet must be 1 or 2")


# ---------------------------------------------------------------------------
# Threat detection


def find_fully_marked_edge(h: MarkedHypergraph) -> Optional[Edge]:
    m = h.marked_set
    for e in h.edges:
        if set(e) <= m:
            return e
    return None


def find_nunchaku(h: MarkedHypergraph) -> Optional[PathWitness]:
    """A positive-length path whose endpoints are exactly its marked vertices."""
    for m1, m2 in combinations(h.marked, 2):
        got = find_path(h, m1, m2, interior_unmarked=True)
        if got is not None and got.length >= 1:
            return got
    return None


def find_necklace(h: MarkedHypergraph) -> Optional[CycleWitness]:
    """A cycle whose unique marked vertex is its (inner) anchor."""
    for m in h.marked:
        got = find_cycle_through(h, m, unmarked_only=True)
        if got is not None:
            return got
    return None


def detect_threats(h: MarkedHypergraph) -> list[ThreatWitness]:
    """One witness per present threat kind (marked-edge, nunchaku, necklace)."""
    out: list[ThreatWitness] = []
    fme = find_fully_marked_edge(h)
    if fme is not None:
        out.append(ThreatWitness("fully_marked_edge", fme))
    nun = find_nunchaku(h)
    if nun is not None:
        out.append(ThreatWitness("nunchaku", nun))
    neck = find_necklace(h)
    if neck is not None:
        out.append(ThreatWitness("necklace", neck))
    return out


def has_threat(h: MarkedHypergraph) -> bool:
    """Fast disjunction used as the leaf test of the forcing search."""
    if find_fully_marked_edge(h) is not None:
        return True
    if find_nunchaku(h) is not None:
        return True
    return find_necklace(h) is not None


def find_shortest_nunchaku(h: MarkedHypergraph) -> Optional[PathWitness]:
    """A minimum-length nunchaku, by iterative deepening over marked pairs."""
    pairs = list(combinations(h.marked, 2))
    if not pairs:
        return None
    for bound in range(1, len(h.triples) + 1):
        for m1, m2 in pairs:
            for seq in iter_paths(h, m1, m2, interior_unmarked=True, max_length=bound):
                if len(seq) == bound:
                    return PathWitness(m1, m2, seq)
    return None


def shortest_nunchaku_length(h: MarkedHypergraph) -> float:
    """L(H): minimum nunchaku length, found by iterative deepening."""
    wit = find_shortest_nunchaku(h)
    return INFINITY if wit is None else wit.length
