"""Graph JSON and DOT serialization.

JSON layout::

    {"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3]]}

Edges are written with ``u < v`` in sorted order.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from gsroute.errors import GraphFormatError
from gsroute.graph import Graph

log = logging.getLogger(__name__)


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def dumps_graph(g: Graph) -> str:
    return json.dumps(graph_to_json(g), separators=(",", ":"))


def _int_field(value: object, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"expected an integer, got {value!r}", where)
    if value < 1:
        raise GraphFormatError(f"vertex labels must be positive, got {value}", where)
    return value


def graph_from_json(data: object) -> Graph:
    """Validate a decoded JSON document and build the graph.

    Raises
    ------
    GraphFormatError
        With ``location`` set to the offending field, e.g. ``edges[2][1]``.
    """
    if not isinstance(data, dict):
        raise GraphFormatError("top level must be an object", "$")
    extra = set(data) - {"vertices", "edges"}
    if extra:
        raise GraphFormatError(f"unexpected keys {sorted(extra)}", "$")
    for key in ("vertices", "edges"):
        if key not in data:
            raise GraphFormatError("missing field", key)
        if not isinstance(data[key], list):
            raise GraphFormatError("expected a list", key)
    vertices = [_int_field(v, f"vertices[{i}]") for i, v in enumerate(data["vertices"])]
    seen: set[int] = set()
    for i, v in enumerate(vertices):
        if v in seen:
            raise GraphFormatError(f"duplicate vertex {v}", f"vertices[{i}]")
        seen.add(v)
    edges: set[tuple[int, int]] = set()
    for i, e in enumerate(data["edges"]):
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError("an edge is a list of two vertices", f"edges[{i}]")
        u = _int_field(e[0], f"edges[{i}][0]")
        v = _int_field(e[1], f"edges[{i}][1]")
        for k, x in enumerate((u, v)):
            if x not in seen:
                raise GraphFormatError(f"vertex {x} is not listed in vertices", f"edges[{i}][{k}]")
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", f"edges[{i}]")
        key = (min(u, v), max(u, v))
        if key in edges:
            log.warning("edges[%d]: duplicate edge %s ignored", i, key)
        edges.add(key)
    return Graph(vertices, edges)


def loads_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return graph_from_json(data)


def load_graph(path: str | Path) -> Graph:
    return loads_graph(Path(path).read_text(encoding="utf-8"))


def save_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(dumps_graph(g), encoding="utf-8")


def to_dot(g: Graph, name: str = "G") -> str:
    """Undirected DOT with vertex labels as node ids."""
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in g.vertices]
    lines += [f"  {u} -- {v};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_dot(g: Graph, path: str | Path, name: str = "G") -> None:
    Path(path).write_text(to_dot(g, name), encoding="utf-8")
