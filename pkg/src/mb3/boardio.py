"""Board documents: JSON (and a terse line format) in, canonical JSON out.

Vertex names map to integer ids by sorted name order, so every engine
tie-break ("lowest id") is deterministic in user vocabulary too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from .core import DomainError, MarkedHypergraph, VertexId, normalize_rank3


class ParseError(DomainError):
    """Malformed board document; message carries the offending location."""


class RankError(ParseError):
    """Board declares an edge larger than rank 3."""


@dataclass(frozen=True)
class ParsedBoard:
    hypergraph: MarkedHypergraph
    names: dict[VertexId, str]
    metadata: dict = field(default_factory=dict)

    @property
    def ids(self) -> dict[str, VertexId]:
        return {name: vid for vid, name in self.names.items()}

    def name_of(self, vid: VertexId) -> str:
        return self.names[vid]

    def rename(self, hypergraph: MarkedHypergraph) -> "ParsedBoard":
        """Rebind the same naming to a derived board (subset of vertices)."""
        names = {v: self.names[v] for v in hypergraph.vertices}
        return ParsedBoard(hypergraph, names, self.metadata)


def _fail(msg: str, where: str) -> "ParseError":
    return ParseError(f"{msg} (at {where})")


def parse_board(text: str, uniform: bool = False) -> ParsedBoard:
    """Parse a BoardDocument.  JSON first; the `v .. / e .. / m ..` line
    format as a fallback for hand-written inputs."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise _fail(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
        return _from_document(doc, uniform)
    return _from_line_format(stripped, uniform)


def _from_document(doc: object, uniform: bool) -> ParsedBoard:
    if not isinstance(doc, dict):
        raise _fail("document must be a JSON object", "top level")
    raw_vertices = doc.get("vertices")
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise _fail("'vertices' must be a nonempty list of names", "vertices")
    names = [str(v) for v in raw_vertices]
    if len(set(names)) != len(names):
        raise _fail("vertex names must be unique", "vertices")
    raw_edges = doc.get("edges", [])
    raw_marked = doc.get("marked", [])
    if not isinstance(raw_edges, list):
        raise _fail("'edges' must be a list of name lists", "edges")
    if not isinstance(raw_marked, list):
        raise _fail("'marked' must be a list of names", "marked")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise _fail("'metadata' must be an object", "metadata")
    return _assemble(names, raw_edges, [str(m) for m in raw_marked], metadata, uniform)


def _from_line_format(text: str, uniform: bool) -> ParsedBoard:
    names: list[str] = []
    edges: list[list[str]] = []
    marked: list[str] = []
    for i, segment in enumerate(s.strip() for s in text.split("/")):
        if not segment:
            continue
        tag, *rest = segment.split()
        if tag == "v":
            names.extend(rest)
        elif tag == "e":
            edges.append(rest)
        elif tag == "m":
            marked.extend(rest)
        else:
            raise _fail(f"unknown segment tag {tag!r}", f"segment {i + 1}")
    if not names:
        seen: list[str] = []
        for e in edges:
            for n in e:
                if n not in seen:
                    seen.append(n)
        names = seen
    if not names:
        raise _fail("no vertices declared", "line format")
    return _assemble(names, edges, marked, {}, uniform)


def _assemble(
    names: list[str],
    raw_edges: list,
    raw_marked: list[str],
    metadata: dict,
    uniform: bool,
) -> ParsedBoard:
    order = sorted(names)
    ids = {name: i for i, name in enumerate(order)}
    edges = []
    for j, e in enumerate(raw_edges):
        if isinstance(e, list) and len(e) > 3:
            raise RankError(f"rank exceeds 3 (at edges[{j}])")
        if not isinstance(e, list) or not e:
            raise _fail("edge must be a list of 1..3 names", f"edges[{j}]")
        members = []
        for n in (str(x) for x in e):
            if n not in ids:
                raise _fail(f"unknown vertex {n!r}", f"edges[{j}]")
            members.append(ids[n])
        if len(set(members)) != len(members):
            raise _fail("edge repeats a vertex", f"edges[{j}]")
        edges.append(tuple(sorted(members)))
    marked = []
    for n in raw_marked:
        if n not in ids:
            raise _fail(f"unknown vertex {n!r}", "marked")
        marked.append(ids[n])
    h = MarkedHypergraph.build(range(len(order)), edges, marked)
    id_names = {i: name for name, i in ids.items()}
    if uniform and not h.is_uniform(3):
        result = normalize_rank3(h)
        h = result.hypergraph
        for fresh in result.padding:
            pad_name = f"_pad{fresh}"
            while pad_name in ids:
                pad_name = "_" + pad_name
            ids[pad_name] = fresh
            id_names[fresh] = pad_name
    return ParsedBoard(h, id_names, dict(metadata))


def board_payload(board: ParsedBoard) -> dict:
    """Canonically ordered JSON-ready view of a board."""
    h = board.hypergraph
    name = board.name_of
    return {
        "vertices": sorted(name(v) for v in h.vertices),
        "edges": sorted(sorted(name(v) for v in e) for e in h.edges),
        "marked": sorted(name(v) for v in h.marked),
        **({"metadata": board.metadata} if board.metadata else {}),
    }


def serialize_board(board: ParsedBoard) -> str:
    """Byte-stable canonical serialization."""
    return json.dumps(board_payload(board), sort_keys=True, separators=(",", ":")) + "\n"
