"""Capacitated undirected graphs, their bidirected digraphs, trees and cuts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from ..rat import RatLike, as_rat

Edge = Tuple[str, str]
INF = math.inf


class GraphError(ValueError):
    pass


def edge_key(u: str, v: str) -> Edge:
    """Canonical undirected edge: endpoints in lexicographic order."""
    return (u, v) if u < v else (v, u)


def complete_edges(nodes: Iterable[str]) -> list[Edge]:
    """Edges of the complete graph on ``nodes`` in lexicographic order."""
    return sorted(edge_key(u, v) for u, v in combinations(nodes, 2))


def fmt_edge(e: Edge) -> str:
    return f"{e[0]}{e[1]}" if len(e[0]) == len(e[1]) == 1 else f"{e[0]}-{e[1]}"


class Graph:
    """Simple undirected graph with nonnegative exact capacities.

    ``metric_closure`` may produce ``INF`` capacities between disconnected
    nodes; every other constructor rejects them.
    """

    __slots__ = ("nodes", "edges", "cap", "_adj", "_pos")

    def __init__(
        self,
        nodes: Sequence[str],
        edges: Union[Mapping[Edge, RatLike], Iterable[Tuple[str, str, RatLike]]],
        allow_infinite: bool = False,
    ):
        nodes = tuple(str(v) for v in nodes)
        if len(set(nodes)) != len(nodes):
            raise GraphError("duplicate node id")
        pos = {v: k for k, v in enumerate(nodes)}
        items = edges.items() if isinstance(edges, Mapping) else (((u, v), c) for u, v, c in edges)
        cap: dict[Edge, Union[Fraction, float]] = {}
        for (u, v), c in items:
            u, v = str(u), str(v)
            if u not in pos or v not in pos:
                raise GraphError(f"edge {u}-{v} has an unknown endpoint")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = edge_key(u, v)
            if e in cap:
                raise GraphError(f"parallel edge {u}-{v}")
            if c == INF and allow_infinite:
                cap[e] = INF
                continue
            c = as_rat(c)
            if c < 0:
                raise GraphError(f"negative capacity on {u}-{v}")
            cap[e] = c
        self.nodes = nodes
        self._pos = pos
        self.edges = tuple(sorted(cap))
        self.cap = cap
        adj: dict[str, list[str]] = {v: [] for v in nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = adj

    # basic queries
    def __contains__(self, v: str) -> bool:
        return v in self._pos

    def check_node(self, v: str) -> str:
        if v not in self._pos:
            raise GraphError(f"unknown node {v!r}")
        return v

    def neighbors(self, v: str) -> list[str]:
        return self._adj[v]

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.cap

    def capacity(self, u: str, v: str):
        return self.cap[edge_key(u, v)]

    def total_capacity(self, edges: Iterable[Edge]) -> Fraction:
        return sum((self.cap[e] for e in edges), Fraction(0))

    def delta(self, shore: Iterable[str]) -> tuple[Edge, ...]:
        """Edges with exactly one endpoint in ``shore``."""
        s = set(shore)
        return tuple(e for e in self.edges if (e[0] in s) != (e[1] in s))

    def components(self, edges: Optional[Iterable[Edge]] = None) -> list[frozenset]:
        adj: dict[str, list[str]] = {v: [] for v in self.nodes}
        for u, v in (self.edges if edges is None else edges):
            adj[u].append(v)
            adj[v].append(u)
        seen: set = set()
        comps = []
        for r in self.nodes:
            if r in seen:
                continue
            stack, comp = [r], {r}
            seen.add(r)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.nodes) <= 1 or len(self.components()) == 1

    def induced(self, nodes: Iterable[str]) -> "Graph":
        keep = set(nodes)
        order = [v for v in self.nodes if v in keep]
        return Graph(order, {e: c for e, c in self.cap.items() if e[0] in keep and e[1] in keep}, allow_infinite=True)

    def complete(self) -> list[Edge]:
        return complete_edges(self.nodes)

    def size(self) -> int:
        """|G| = |V| + |E|."""
        return len(self.nodes) + len(self.edges)

    def encoding_length(self) -> int:
        """Bits needed to write all capacities (numerators and denominators)."""
        total = 0
        for c in self.cap.values():
            c = as_rat(c)
            total += abs(c.numerator).bit_length() + c.denominator.bit_length() + 1
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.nodes == other.nodes and self.cap == other.cap

    def __repr__(self) -> str:
        return f"Graph(nodes={len(self.nodes)}, edges={len(self.edges)})"


@dataclass(frozen=True)
class Digraph:
    """Bidirected version of a graph: each edge {v,w} becomes (v,w) and (w,v)
    with the edge's cost on both arcs."""

    nodes: Tuple[str, ...]
    arcs: Tuple[Tuple[str, str], ...]
    cost: Mapping[Tuple[str, str], Fraction]

    @classmethod
    def from_graph(cls, g: Graph) -> "Digraph":
        arcs = []
        cost = {}
        for u, v in g.edges:
            for a in ((u, v), (v, u)):
                arcs.append(a)
                cost[a] = g.cap[(u, v)]
        return cls(g.nodes, tuple(arcs), cost)

    def out_arcs(self, v: str) -> list:
        return [a for a in self.arcs if a[0] == v]

    def in_arcs(self, v: str) -> list:
        return [a for a in self.arcs if a[1] == v]


class Tree:
    """Spanning tree on a node set, given by its edge subset.

    The edges need not belong to the capacitated graph (trees of the complete
    graph are the usual case).  ``labels`` optionally carries ``r(f)``.
    """

    __slots__ = ("nodes", "edges", "labels", "_adj")

    def __init__(self, nodes: Sequence[str], edges: Iterable[Edge], labels: Optional[Mapping[Edge, Fraction]] = None):
        self.nodes = tuple(nodes)
        es = sorted({edge_key(u, v) for u, v in edges})
        if len(es) != len(self.nodes) - 1:
            raise GraphError(f"a spanning tree on {len(self.nodes)} nodes needs {len(self.nodes) - 1} edges, got {len(es)}")
        node_set = set(self.nodes)
        adj: dict[str, list[str]] = {v: [] for v in self.nodes}
        for u, v in es:
            if u not in node_set or v not in node_set:
                raise GraphError(f"tree edge {u}-{v} leaves the node set")
            adj[u].append(v)
            adj[v].append(u)
        self.edges = tuple(es)
        self._adj = adj
        if self.nodes and len(self._reach(self.nodes[0], None)) != len(self.nodes):
            raise GraphError("edge set is not connected, hence not a spanning tree")
        self.labels = dict(labels) if labels else {}

    def _reach(self, root: str, removed: Optional[Edge]) -> set:
        seen = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in self._adj[u]:
                if removed is not None and edge_key(u, w) == removed:
                    continue
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def __contains__(self, e: Edge) -> bool:
        return edge_key(*e) in set(self.edges)

    def component(self, f: Edge, side: str) -> frozenset:
        """Component of ``H - f`` containing ``side`` (an endpoint of ``f``)."""
        f = edge_key(*f)
        if f not in self.edges:
            raise GraphError(f"{f} is not a tree edge")
        if side not in f:
            raise GraphError(f"{side} is not an endpoint of {f}")
        return frozenset(self._reach(side, f))

    def path(self, r: str, s: str) -> list[Edge]:
        """Edges of the unique r,s-path, in order from r."""
        parent: dict[str, Optional[str]] = {r: None}
        stack = [r]
        while stack:
            u = stack.pop()
            for w in self._adj[u]:
                if w not in parent:
                    parent[w] = u
                    stack.append(w)
        if s not in parent:
            raise GraphError(f"unknown node {s!r}")
        out = []
        v = s
        while parent[v] is not None:
            out.append(edge_key(parent[v], v))
            v = parent[v]
        return out[::-1]

    def indicator(self, edge_order: Sequence[Edge]) -> tuple[int, ...]:
        es = set(self.edges)
        return tuple(1 if e in es else 0 for e in edge_order)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and set(self.nodes) == set(other.nodes) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return "Tree{" + ",".join(fmt_edge(e) for e in self.edges) + "}"


class Cut:
    """``delta(U)`` of a graph: the shore ``U``, crossing edges and capacity.

    Two cuts are equal when they have the same shores (``U`` and its
    complement determine the same cut).
    """

    __slots__ = ("shore", "edges", "capacity", "_all")

    def __init__(self, g: Graph, shore: Iterable[str]):
        u = frozenset(shore)
        all_nodes = frozenset(g.nodes)
        if not u or u == all_nodes or not u <= all_nodes:
            raise GraphError("a cut shore must be a nonempty proper node subset")
        self.shore = u
        self._all = all_nodes
        self.edges = g.delta(u)
        self.capacity = g.total_capacity(self.edges)

    def other_shore(self) -> frozenset:
        return self._all - self.shore

    def _key(self):
        return frozenset((self.shore, self._all - self.shore))

    def __eq__(self, other) -> bool:
        return isinstance(other, Cut) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return "delta({" + ",".join(sorted(self.shore)) + "})"
