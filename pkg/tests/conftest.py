"""Shared builders and independent brute-force oracles.

The oracles here re-implement the structural definitions naively (enumerate
edge orderings, check the defining bullets item by item) so that agreement
tests exercise two genuinely different routes.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from mb3.core import MarkedHypergraph


# ---------------------------------------------------------------------------
# Builders


def path_board(length: int, marks=(), extra_edges=(), isolated: int = 0) -> MarkedHypergraph:
    """A bare path 0-…-2L as a board; connection vertices are even ids."""
    edges = [(2 * i, 2 * i + 1, 2 * i + 2) for i in range(length)]
    n = 2 * length + 1
    edges += [tuple(e) for e in extra_edges]
    top = max([n - 1] + [max(e) for e in edges]) + 1
    return MarkedHypergraph.build(range(top + isolated), edges, marks)


def nunchaku_board(length: int, isolated: int = 0) -> MarkedHypergraph:
    return path_board(length, marks=(0, 2 * length), isolated=isolated)


def cycle_board(length: int, marks=(), isolated: int = 0) -> MarkedHypergraph:
    """A bare cycle of the given length; vertex 0 is the anchor."""
    assert length >= 2
    edges = []
    for i in range(length):
        a = 2 * i
        b = (2 * i + 2) % (2 * length)
        edges.append(tuple(sorted((a, 2 * i + 1, b))))
    return MarkedHypergraph.build(range(2 * length + isolated), edges, marks)


def necklace_board(length: int, isolated: int = 0) -> MarkedHypergraph:
    return cycle_board(length, marks=(0,), isolated=isolated)


def random_small(rng: random.Random, n=(5, 10), m=(1, 6), k=(0, 3)) -> MarkedHypergraph:
    nn = rng.randint(*n)
    mm = rng.randint(*m)
    pool = list(combinations(range(nn), 3))
    edges = rng.sample(pool, min(mm, len(pool)))
    kk = rng.randint(*k)
    marks = rng.sample(range(nn), min(kk, nn))
    return MarkedHypergraph.build(range(nn), edges, marks)


# ---------------------------------------------------------------------------
# Independent sequence predicates (naive re-statement of the definitions)


def _items_ok(items) -> bool:
    for i in range(len(items) - 1):
        if not set(items[i]) & set(items[i + 1]):
            return False  # not connected
    for i in range(len(items)):
        for j in range(i + 2, len(items)):
            if set(items[i]) & set(items[j]):
                return False  # repeated vertex
    return True


def seq_is_path(seq_edges, a, b) -> bool:
    L = len(seq_edges)
    if (L == 0) != (a == b):
        return False
    if L == 0:
        return True
    if len(set(seq_edges)) != L or any(len(e) != 3 for e in seq_edges):
        return False
    for i in range(L - 1):
        if len(set(seq_edges[i]) & set(seq_edges[i + 1])) > 1:
            return False
    return _items_ok([(a,)] + list(seq_edges) + [(b,)])


def seq_is_cycle(seq_edges, a) -> bool:
    L = len(seq_edges)
    if L < 2 or len(set(seq_edges)) != L or any(len(e) != 3 for e in seq_edges):
        return False
    if a not in seq_edges[0] or a not in seq_edges[-1]:
        return False
    if L == 2:
        return len(set(seq_edges[0]) & set(seq_edges[1])) == 2
    if any(a in e for e in seq_edges[1:-1]):
        return False
    for i in range(L - 1):
        if len(set(seq_edges[i]) & set(seq_edges[i + 1])) != 1:
            return False
    if set(seq_edges[0]) & set(seq_edges[-1]) != {a}:
        return False
    for i in range(L):
        for j in range(i + 2, L):
            if i == 0 and j == L - 1:
                continue
            if set(seq_edges[i]) & set(seq_edges[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# Brute-force enumerators


def brute_paths(h: MarkedHypergraph, u, v, forbidden=frozenset(), interior_unmarked=False):
    """Every uv-path as an ordered edge tuple, by trying all orderings."""
    out = []
    if u not in h.vertex_set or v not in h.vertex_set:
        return out
    if u in forbidden or v in forbidden:
        return out
    if u == v:
        return [()]
    triples = [e for e in h.edges if len(e) == 3]
    for k in range(1, len(triples) + 1):
        for subset in combinations(triples, k):
            vs = set().union(*(set(e) for e in subset))
            if vs & set(forbidden):
                continue
            if interior_unmarked and any(
                w in h.marked_set for w in vs - {u, v}
            ):
                continue
            for order in permutations(subset):
                if seq_is_path(order, u, v):
                    out.append(order)
    return out


def brute_cycles_through(h: MarkedHypergraph, a, unmarked_only=False, forbidden=frozenset()):
    """Every cycle with a as an inner (anchor) vertex, as edge tuples."""
    out = []
    if a not in h.vertex_set or a in forbidden:
        return out
    triples = [e for e in h.edges if len(e) == 3]
    for k in range(2, len(triples) + 1):
        for subset in combinations(triples, k):
            vs = set().union(*(set(e) for e in subset))
            if vs & set(forbidden):
                continue
            if unmarked_only and any(w in h.marked_set and w != a for w in vs):
                continue
            for order in permutations(subset):
                if seq_is_cycle(order, a):
                    out.append(order)
    return out


def brute_tadpole_exists(h: MarkedHypergraph, x, unmarked_only=False, forbidden=frozenset()):
    """Does an x-tadpole exist?  Checked by combining brute enumerations.

    With unmarked_only, every tadpole vertex including x must be non-marked.
    """
    if unmarked_only and x in h.marked_set:
        return False
    if brute_cycles_through(h, x, unmarked_only, forbidden):
        return True
    for b in h.vertices:
        if b == x or b in forbidden:
            continue
        if unmarked_only and b in h.marked_set:
            continue
        for pseq in brute_paths(h, x, b, forbidden,
                                interior_unmarked=unmarked_only):
            pverts = set().union(*(set(e) for e in pseq)) if pseq else {x}
            forb2 = frozenset(forbidden) | (pverts - {b})
            if brute_cycles_through(h, b, unmarked_only, forb2):
                return True
    return False


def brute_snake_exists(h: MarkedHypergraph, x, avoiding=frozenset()) -> bool:
    """Family-S membership: an x-to-marked path with one marked vertex."""
    for m in h.marked:
        if m in avoiding:
            continue
        if brute_paths(h, x, m, avoiding, interior_unmarked=True):
            return True
    return False


@pytest.fixture
def rng():
    return random.Random(0x5EED)
