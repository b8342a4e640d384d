"""Marked-hypergraph data model and the basic game/collection algebra.

A marked hypergraph is a finite nonempty vertex set, a set of edges (vertex
sets of size 1..3 here) and a set of marked vertices.  Maker marks vertices,
Breaker removes them; everything downstream (structure search, dangers, the
solver, the oracle) works on these immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class DomainError(ValueError):
    """A precondition of an operation was violated."""


class UnsupportedRankError(DomainError):
    """Input hypergraph has rank > 3."""


class ResourceGuardError(RuntimeError):
    """An exhaustive computation was asked for beyond its configured guard."""


VertexId = int


def _norm_edge(edge: Iterable[VertexId]) -> tuple[VertexId, ...]:
    e = tuple(sorted(set(edge)))
    if not 1 <= len(e) <= 3:
        raise UnsupportedRankError(f"edge {e} has size {len(e)}, supported sizes are 1..3")
    return e


@dataclass(frozen=True)
class MarkedHypergraph:
    """Immutable marked hypergraph with canonical internal ordering.

    Vertices, edges and the marked set are stored as sorted tuples so that
    equality, hashing and all iteration orders are deterministic.  Duplicate
    edges in the input are deduplicated (edge sets, not multisets).
    """

    vertices: tuple[VertexId, ...]
    edges: tuple[tuple[VertexId, ...], ...]
    marked: tuple[VertexId, ...]

    @staticmethod
    def build(
        vertices: Iterable[VertexId],
        edges: Iterable[Iterable[VertexId]] = (),
        marked: Iterable[VertexId] = (),
    ) -> "MarkedHypergraph":
        vs = tuple(sorted(set(vertices)))
        if not vs:
            raise DomainError("vertex set must be nonempty")
        vset = set(vs)
        es = tuple(sorted({_norm_edge(e) for e in edges}))
        for e in es:
            if not set(e) <= vset:
                raise DomainError(f"edge {e} uses vertices outside the vertex set")
        ms = tuple(sorted(set(marked)))
        if not set(ms) <= vset:
            raise DomainError("marked set must be a subset of the vertices")
        return MarkedHypergraph(vs, es, ms)

    # -- derived views ----------------------------------------------------

    @cached_property
    def vertex_set(self) -> frozenset[VertexId]:
        return frozenset(self.vertices)

    @cached_property
    def marked_set(self) -> frozenset[VertexId]:
        return frozenset(self.marked)

    @cached_property
    def non_marked(self) -> tuple[VertexId, ...]:
        m = self.marked_set
        return tuple(v for v in self.vertices if v not in m)

    @cached_property
    def edge_sets(self) -> tuple[frozenset[VertexId], ...]:
        return tuple(frozenset(e) for e in self.edges)

    @cached_property
    def triples(self) -> tuple[tuple[VertexId, ...], ...]:
        """Edges of size exactly 3 (the only ones structure search uses)."""
        return tuple(e for e in self.edges if len(e) == 3)

    @cached_property
    def incident(self) -> dict[VertexId, tuple[tuple[VertexId, ...], ...]]:
        inc: dict[VertexId, list[tuple[VertexId, ...]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for v in e:
                inc[v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def is_uniform(self, k: int = 3) -> bool:
        return all(len(e) == k for e in self.edges)

    def degree(self, v: VertexId) -> int:
        return len(self.incident[v])

    def is_marked(self, v: VertexId) -> bool:
        return v in self.marked_set

    def require_rank3(self) -> None:
        if self.rank > 3:
            raise UnsupportedRankError(f"rank {self.rank} > 3 is not supported")

    def key(self) -> tuple:
        """Exact board key for memo tables (no isomorphism reduction)."""
        return (self.vertices, self.edges, self.marked)

    # -- game operators ----------------------------------------------------

    def mark(self, x: VertexId) -> "MarkedHypergraph":
        """Maker marks x.  Requires x present and non-marked."""
        if x not in self.vertex_set:
            raise DomainError(f"cannot mark {x}: not a vertex")
        if x in self.marked_set:
            raise DomainError(f"cannot mark {x}: already marked")
        return MarkedHypergraph(self.vertices, self.edges, tuple(sorted(self.marked + (x,))))

    def remove(self, y: VertexId) -> "MarkedHypergraph":
        """Breaker removes y and every edge containing it.

        Requires y present, non-marked and not the sole vertex.
        """
        if y not in self.vertex_set:
            raise DomainError(f"cannot remove {y}: not a vertex")
        if y in self.marked_set:
            raise DomainError(f"cannot remove {y}: vertex is marked")
        if len(self.vertices) == 1:
            raise DomainError(f"cannot remove {y}: sole vertex")
        return MarkedHypergraph(
            tuple(v for v in self.vertices if v != y),
            tuple(e for e in self.edges if y not in e),
            self.marked,
        )

    def play_round(self, x: VertexId, y: VertexId) -> "MarkedHypergraph":
        """One full round: Maker marks x, Breaker removes y."""
        return self.mark(x).remove(y)

    def is_subhypergraph_of(self, other: "MarkedHypergraph") -> bool:
        return (
            self.vertex_set <= other.vertex_set
            and set(self.edges) <= set(other.edges)
            and self.marked_set == self.vertex_set & other.marked_set
        )

    def restrict(self, vertices: Iterable[VertexId]) -> "MarkedHypergraph":
        """Induced subhypergraph on a vertex subset (edges fully inside it)."""
        vs = set(vertices)
        if not vs <= self.vertex_set:
            raise DomainError("restriction vertices must belong to the hypergraph")
        return MarkedHypergraph.build(
            vs, (e for e in self.edges if set(e) <= vs), vs & self.marked_set
        )


@dataclass(frozen=True)
class PointedMarkedHypergraph:
    host: MarkedHypergraph
    point: VertexId

    def __post_init__(self) -> None:
        if self.point not in self.host.vertex_set or self.point in self.host.marked_set:
            raise DomainError(f"point {self.point} must be a non-marked vertex of the host")


@dataclass(frozen=True)
class SubhypergraphRef:
    """Reference to a subhypergraph of a host (marked set is induced)."""

    host: MarkedHypergraph
    vertices: frozenset[VertexId]
    edges: tuple[tuple[VertexId, ...], ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices <= self.host.vertex_set:
            raise DomainError("ref vertices must belong to the host")
        host_edges = set(self.host.edges)
        for e in self.edges:
            if e not in host_edges:
                raise DomainError(f"ref edge {e} is not a host edge")
            if not set(e) <= self.vertices:
                raise DomainError(f"ref edge {e} not contained in ref vertices")

    @property
    def marked(self) -> frozenset[VertexId]:
        return self.vertices & self.host.marked_set

    def to_hypergraph(self) -> MarkedHypergraph:
        return MarkedHypergraph.build(self.vertices, self.edges, self.marked)


def union(collection: Sequence[SubhypergraphRef]) -> SubhypergraphRef:
    """Union of subhypergraph refs sharing one host."""
    if not collection:
        raise DomainError("union of an empty collection is undefined")
    host = collection[0].host
    for ref in collection[1:]:
        if ref.host is not host and ref.host != host:
            raise DomainError("union requires refs of a single host")
    vs: frozenset[VertexId] = frozenset()
    es: set[tuple[VertexId, ...]] = set()
    for ref in collection:
        vs |= ref.vertices
        es |= set(ref.edges)
    return SubhypergraphRef(host, vs, tuple(sorted(es)))


def intersection(
    collection: Sequence[SubhypergraphRef] | Sequence[frozenset[VertexId]],
    h: MarkedHypergraph,
) -> frozenset[VertexId]:
    """Common non-marked vertices of a collection, taken in ``h``.

    An empty collection intersects in every non-marked vertex of ``h``.
    Refs may live in ``h`` or in ``h`` with extra marks; only their vertex
    sets matter, the result always excludes the marked vertices of ``h``.
    """
    eligible = frozenset(h.non_marked)
    for ref in collection:
        vs = ref if isinstance(ref, frozenset) else ref.vertices
        eligible &= vs
        if not eligible:
            break
    return eligible


def drop_containing(
    collection: Sequence[SubhypergraphRef] | Sequence[frozenset[VertexId]],
    y: VertexId,
) -> list:
    """The sub-collection of refs that do not contain y."""
    out = []
    for ref in collection:
        vs = ref if isinstance(ref, frozenset) else ref.vertices
        if y not in vs:
            out.append(ref)
    return out


def removable_vertices(
    collection: Sequence[SubhypergraphRef] | Sequence[frozenset[VertexId]],
    h: MarkedHypergraph,
) -> frozenset[VertexId]:
    """Non-marked y whose removal leaves the collection intersecting.

    y qualifies when the refs avoiding y still have a common non-marked
    vertex; equivalently y hits the union of every obstruction.
    """
    return frozenset(
        y for y in h.non_marked if intersection(drop_containing(collection, y), h)
    )


def obstructions(
    collection: Sequence[SubhypergraphRef] | Sequence[frozenset[VertexId]],
    h: MarkedHypergraph,
) -> list[tuple[int, ...]]:
    """All index subcollections whose intersection in ``h`` is empty.

    Exponential in the collection size; used by tests and the desk-scale
    cross-check of removable_vertices, never on hot paths.
    """
    sets = [ref if isinstance(ref, frozenset) else ref.vertices for ref in collection]
    n = len(sets)
    out = []
    for mask in range(1 << n):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        if not intersection([sets[i] for i in idx], h):
            out.append(idx)
    return out


@dataclass(frozen=True)
class NormalizeResult:
    hypergraph: MarkedHypergraph
    padding: dict[VertexId, tuple[VertexId, ...]] = field(default_factory=dict)


def normalize_rank3(h: MarkedHypergraph) -> NormalizeResult:
    """Pad every edge of size < 3 with fresh marked vertices.

    Fresh vertices take ids above the current maximum; the padding map keeps
    fresh id -> source edge so callers can report in user vocabulary.
    """
    h.require_rank3()
    next_id = max(h.vertices) + 1
    vertices = list(h.vertices)
    marked = list(h.marked)
    edges = []
    padding: dict[VertexId, tuple[VertexId, ...]] = {}
    for e in h.edges:
        ext = list(e)
        while len(ext) < 3:
            padding[next_id] = e
            vertices.append(next_id)
            marked.append(next_id)
            ext.append(next_id)
            next_id += 1
        edges.append(tuple(sorted(ext)))
    return NormalizeResult(MarkedHypergraph.build(vertices, edges, marked), padding)


def strip_marked(h: MarkedHypergraph) -> MarkedHypergraph:
    """Inverse of padding: delete marked vertices, shrinking every edge.

    Requires no fully marked edge (the shrunk edge would be empty) and at
    least one non-marked vertex.
    """
    kept = [v for v in h.vertices if v not in h.marked_set]
    if not kept:
        raise DomainError("stripping the marks would empty the vertex set")
    edges = []
    for e in h.edges:
        shrunk = tuple(v for v in e if v not in h.marked_set)
        if not shrunk:
            raise DomainError(f"edge {e} is fully marked; stripping would empty it")
        edges.append(shrunk)
    return MarkedHypergraph.build(kept, edges, ())


def ceil_log2(n: int) -> int:
    if n < 1:
        raise DomainError("ceil_log2 needs a positive integer")
    return (n - 1).bit_length()


INFINITY = math.inf
