"""Exhaustive oracles for small instances."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .algorithms import kruskal_mst
from .core import Cut, Graph, GraphError

MAX_ENUM_NODES = 12
MAX_STEINER_EXTRA = 8


def _check_size(g: Graph, limit: int = MAX_ENUM_NODES) -> None:
    if len(g.nodes) > limit:
        raise GraphError(f"refusing to enumerate {len(g.nodes)} nodes (cap {limit})")


def all_cuts(g: Graph):
    """Every cut once, as the shore not containing the first node."""
    _check_size(g)
    rest = g.nodes[1:]
    for k in range(1, len(rest) + 1):
        for shore in combinations(rest, k):
            yield Cut(g, shore)


def brute_force_min_cut(g: Graph, s: str, t: str) -> Fraction:
    best = None
    for cut in all_cuts(g):
        if (s in cut.shore) != (t in cut.shore):
            if best is None or cut.capacity < best:
                best = cut.capacity
    return best


def brute_force_min_tcut(g: Graph, terminals: Iterable[str]):
    """Minimum T-cut by enumerating shores; ties resolved by enumeration order."""
    t = set(terminals)
    for v in t:
        g.check_node(v)
    if len(t) < 2 or len(t) % 2:
        raise GraphError(f"|T| must be even and at least 2, got {len(t)}")
    best = None
    for cut in all_cuts(g):
        if len(t & cut.shore) % 2 == 1:
            if best is None or cut.capacity < best.capacity:
                best = cut
    return best.capacity, best


def brute_force_steiner(g: Graph, terminals: Iterable[str]):
    """Minimum Steiner tree for ``terminals``: MST of every connected induced
    subgraph on a superset of the terminals."""
    s = sorted(set(terminals), key=g.nodes.index)
    for v in s:
        g.check_node(v)
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    if len(s) <= 1:
        return Fraction(0), []
    others = [v for v in g.nodes if v not in s]
    if len(others) > MAX_STEINER_EXTRA:
        raise GraphError(f"refusing to enumerate {len(others)} Steiner nodes (cap {MAX_STEINER_EXTRA})")
    best = None
    for k in range(len(others) + 1):
        for extra in combinations(others, k):
            sub = g.induced(set(s) | set(extra))
            if not sub.is_connected():
                continue
            tree, weight = kruskal_mst(sub)
            if best is None or weight < best[0]:
                best = (weight, list(tree.edges))
    return best
