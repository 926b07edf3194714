"""Graph file formats and report documents.

Human-facing files use 1-based vertex labels; the shift to the internal
0-based indices happens here and nowhere else.  Reports are JSON with a
fixed key order, indented one key per line so they diff cleanly.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Optional, Sequence

from . import __version__
from .enumeration import (
    Certificate,
    NotUniform,
    NotWellCovered,
    UniformlyWellCovered,
    WellCovered,
)
from .errors import ParseError
from .graph import MAX_VERTICES, Graph, VertexSet, members, to_mask

FORMATS = ("edge-list", "graph6", "dimacs")
GRAPH6_HEADER = ">>graph6<<"


# -- edge list --------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines of 1-based labels; an ``n <count>`` header is optional."""
    n: Optional[int] = None
    edges: set[tuple[int, int]] = set()
    top = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if len(tokens) != 2 or n is not None or edges:
                raise ParseError(f"line {lineno}: misplaced or malformed 'n' header")
            n = _label(tokens[1], lineno)
            continue
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two vertex labels, got {line!r}")
        u, v = (_label(t, lineno) for t in tokens)
        if u == v:
            raise ParseError(f"line {lineno}: loop at vertex {u}")
        edges.add((min(u, v), max(u, v)))
        top = max(top, u, v)
    if n is None:
        n = top
    if n == 0:
        raise ParseError("empty edge list without an 'n' header")
    if top > n:
        raise ParseError(f"label {top} exceeds declared vertex count {n}")
    return Graph.from_edges(n, [(u - 1, v - 1) for u, v in sorted(edges)])


def _label(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: {token!r} is not an integer") from None
    if value < 1:
        raise ParseError(f"line {lineno}: labels are 1-based, got {value}")
    if value > MAX_VERTICES:
        raise ParseError(f"line {lineno}: label {value} exceeds the {MAX_VERTICES}-vertex limit")
    return value


def serialize_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- graph6 -----------------------------------------------------------------


def serialize_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~"] + [chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0)]
    bits = [g.adj[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = value << 1 | b
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise ParseError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise ParseError("graph6 characters must lie in the range 63..126")
    data = [ord(ch) - 63 for ch in s]
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ParseError("graph6 strings for n > 258047 are not supported")
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if not 1 <= n <= MAX_VERTICES:
        raise ParseError(f"graph6 vertex count {n} outside 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != -(-nbits // 6):
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {-(-nbits // 6)}")
    bits = [(byte >> (5 - k)) & 1 for byte in body for k in range(6)]
    if any(bits[nbits:]):
        raise ParseError("graph6 padding bits must be zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# -- DIMACS -----------------------------------------------------------------


def parse_dimacs(text: str) -> Graph:
    """Undirected ``p edge`` dialect: ``c`` comments, one ``p`` line, ``e u v`` lines."""
    n: Optional[int] = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None or len(tokens) != 4 or tokens[1] != "edge":
                raise ParseError(f"line {lineno}: expected a single 'p edge <n> <m>' line")
            n = _label(tokens[2], lineno)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before the problem line")
            if len(tokens) != 3:
                raise ParseError(f"line {lineno}: expected 'e u v'")
            u, v = (_label(t, lineno) for t in tokens[1:])
            if u == v:
                raise ParseError(f"line {lineno}: loop at vertex {u}")
            if max(u, v) > n:
                raise ParseError(f"line {lineno}: label exceeds n={n}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"line {lineno}: unknown line type {tokens[0]!r}")
    if n is None:
        raise ParseError("missing 'p edge' line")
    return Graph.from_edges(n, edges)


def serialize_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


PARSERS = {"edge-list": parse_edge_list, "graph6": parse_graph6, "dimacs": parse_dimacs}
SERIALIZERS = {"edge-list": serialize_edge_list, "graph6": serialize_graph6, "dimacs": serialize_dimacs}


def parse_graph(text: str, fmt: str = "edge-list") -> Graph:
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ParseError(f"unknown format {fmt!r}") from None
    try:
        return parser(text)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_graph(g: Graph, fmt: str = "edge-list") -> str:
    return SERIALIZERS[fmt](g)


# -- report documents -------------------------------------------------------


def labels(mask: VertexSet) -> list[int]:
    return [v + 1 for v in members(mask)]


def from_labels(items: Iterable[int]) -> VertexSet:
    return to_mask(v - 1 for v in items)


def parse_cover(text: str) -> tuple[VertexSet, ...]:
    """``"1,5,6;2,3,4"`` -> tuple of 0-based masks."""
    parts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(f"empty part in cover {text!r}")
        try:
            items = [int(x) for x in chunk.split(",")]
        except ValueError:
            raise ParseError(f"cover part {chunk!r} is not a list of integers") from None
        if any(not 1 <= x <= MAX_VERTICES for x in items):
            raise ParseError(f"cover part {chunk!r} has a label outside 1..{MAX_VERTICES}")
        parts.append(from_labels(items))
    return tuple(parts)


def graph_document(g: Graph, name: str = "") -> dict[str, Any]:
    return {
        "name": name,
        "n": g.n,
        "edges": [[u + 1, v + 1] for u, v in g.edges()],
        "graph6": serialize_graph6(g),
    }


def graph_from_document(doc: dict[str, Any]) -> Graph:
    g = Graph.from_edges(doc["n"], [(u - 1, v - 1) for u, v in doc["edges"]])
    if "graph6" in doc and serialize_graph6(g) != doc["graph6"]:
        raise ParseError("graph6 field disagrees with the edge list")
    return g


def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    if isinstance(cert, WellCovered):
        return {"type": "WellCovered", "verdict": True, "common_size": cert.common_size}
    if isinstance(cert, NotWellCovered):
        return {
            "type": "NotWellCovered",
            "verdict": False,
            "witness_small": labels(cert.witness_small),
            "witness_large": labels(cert.witness_large),
        }
    if isinstance(cert, UniformlyWellCovered):
        return {
            "type": "UniformlyWellCovered",
            "verdict": True,
            "partition": [labels(p) for p in cert.partition],
        }
    return {
        "type": "NotUniform",
        "verdict": False,
        "reason": cert.reason,
        "cover": [labels(p) for p in cert.cover] if cert.cover else None,
        "part_index": None if cert.clique_index is None else cert.clique_index + 1,
        "witness": labels(cert.witness) if cert.witness is not None else None,
    }


def certificate_from_dict(doc: dict[str, Any]) -> Certificate:
    kind = doc.get("type")
    if kind == "WellCovered":
        return WellCovered(doc["common_size"])
    if kind == "NotWellCovered":
        return NotWellCovered(from_labels(doc["witness_small"]), from_labels(doc["witness_large"]))
    if kind == "UniformlyWellCovered":
        return UniformlyWellCovered(tuple(from_labels(p) for p in doc["partition"]))
    if kind == "NotUniform":
        cover = doc.get("cover")
        index = doc.get("part_index")
        witness = doc.get("witness")
        return NotUniform(
            doc["reason"],
            tuple(from_labels(p) for p in cover) if cover else None,
            None if index is None else index - 1,
            None if witness is None else from_labels(witness),
        )
    raise ParseError(f"unknown certificate type {kind!r}")


def provenance(**extra: Any) -> dict[str, Any]:
    return {"tool": "wellcover", "version": __version__, **extra}


def _render(obj: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return json.dumps(list(obj))
        if all(isinstance(x, (list, tuple)) and not any(isinstance(y, (dict, list)) for y in x) for x in obj):
            return json.dumps([list(x) for x in obj])
        return "[\n" + ",\n".join(inner + _render(x, depth + 1) for x in obj) + f"\n{pad}]"
    return json.dumps(obj)


def dump_report(doc: dict[str, Any]) -> str:
    """JSON with one key per line; lists of scalars and flat nested lists stay inline."""
    return _render(doc, 0) + "\n"


def load_report(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"report is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("report document has no 'kind'")
    return doc


def cover_labels(cover: Sequence[VertexSet]) -> list[list[int]]:
    return [labels(p) for p in cover]
