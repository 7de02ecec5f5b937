"""Graph JSON: ``{"nodes": [...], "edges": [{"u": .., "v": .., "c": "p/q"}]}``.

Capacities may be integers or decimal / ``p/q`` strings; floats are rejected
because they cannot be read exactly.
"""

from __future__ import annotations

import json

from ..rat import fmt_rat, parse_rat
from .core import Graph, GraphError


def graph_from_dict(data: dict) -> Graph:
    if not isinstance(data, dict) or "nodes" not in data or "edges" not in data:
        raise GraphError("graph JSON needs 'nodes' and 'edges'")
    edges = []
    for k, e in enumerate(data["edges"]):
        try:
            u, v, c = e["u"], e["v"], e["c"]
        except (KeyError, TypeError):
            raise GraphError(f"edge #{k} needs keys u, v, c") from None
        if isinstance(c, bool) or isinstance(c, float):
            raise GraphError(f"edge #{k}: capacity must be an integer or a string, got {c!r}")
        cap = parse_rat(c) if isinstance(c, str) else c
        edges.append((str(u), str(v), cap))
    return Graph([str(v) for v in data["nodes"]], edges)


def graph_to_dict(g: Graph) -> dict:
    return {
        "nodes": list(g.nodes),
        "edges": [{"u": u, "v": v, "c": fmt_rat(g.cap[(u, v)])} for u, v in g.edges],
    }


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON: {exc}") from exc
    return graph_from_dict(data)


def dump_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)
