"""Exact combinatorial oracles: shortest paths, MSTs, max-flow, Gomory-Hu trees."""

from __future__ import annotations

import heapq
from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .core import INF, Cut, Edge, Graph, GraphError, Tree, edge_key


def dijkstra(g: Graph, s: str, t: str):
    """Exact shortest s,t distance and path edges; ``(INF, [])`` if disconnected."""
    g.check_node(s)
    g.check_node(t)
    if s == t:
        return Fraction(0), []
    dist = {s: Fraction(0)}
    prev: dict[str, str] = {}
    order = {v: k for k, v in enumerate(g.nodes)}
    heap = [(Fraction(0), order[s], s)]
    done = set()
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == t:
            break
        for w in g.neighbors(u):
            nd = d + g.capacity(u, w)
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                prev[w] = u
                heapq.heappush(heap, (nd, order[w], w))
    if t not in done:
        return INF, []
    path = []
    v = t
    while v != s:
        path.append(edge_key(prev[v], v))
        v = prev[v]
    return dist[t], path[::-1]


def metric_closure(g: Graph) -> Graph:
    """Complete graph on V(g) weighted by shortest-path distance (INF if none)."""
    weights = {}
    for u, v in combinations(g.nodes, 2):
        d, _ = dijkstra(g, u, v)
        weights[edge_key(u, v)] = d
    return Graph(g.nodes, weights, allow_infinite=True)


class _DSU:
    def __init__(self, items: Iterable[str]):
        self.parent = {v: v for v in items}

    def find(self, v: str) -> str:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def kruskal_mst(g: Graph):
    """Minimum spanning tree and its exact weight; ties broken by edge order."""
    if not g.is_connected():
        raise GraphError("graph is disconnected; no spanning tree exists")
    dsu = _DSU(g.nodes)
    chosen = []
    total = Fraction(0)
    for e in sorted(g.edges, key=lambda e: (g.cap[e], e)):
        if dsu.union(*e):
            chosen.append(e)
            total += g.cap[e]
    return Tree(g.nodes, chosen), total


def max_flow_min_cut(g: Graph, s: str, t: str):
    """Shortest-augmenting-path max flow on the undirected graph.

    Returns ``(value, cut)`` where the cut's shore is the set of nodes
    reachable from ``s`` in the final residual network.
    """
    g.check_node(s)
    g.check_node(t)
    if s == t:
        raise GraphError("source and sink coincide")
    # each undirected edge is a pair of opposite arcs sharing the capacity
    residual: dict[str, dict[str, Fraction]] = {v: {} for v in g.nodes}
    for (u, v), c in g.cap.items():
        residual[u][v] = residual[u].get(v, Fraction(0)) + c
        residual[v][u] = residual[v].get(u, Fraction(0)) + c
    order = {v: k for k, v in enumerate(g.nodes)}
    value = Fraction(0)
    while True:
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            u = queue.popleft()
            for w in sorted(residual[u], key=order.__getitem__):
                if w not in prev and residual[u][w] > 0:
                    prev[w] = u
                    queue.append(w)
        if t not in prev:
            break
        bottleneck = None
        v = t
        while prev[v] is not None:
            r = residual[prev[v]][v]
            bottleneck = r if bottleneck is None or r < bottleneck else bottleneck
            v = prev[v]
        v = t
        while prev[v] is not None:
            u = prev[v]
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck
            v = u
        value += bottleneck
    return value, Cut(g, prev.keys())


def gusfield_gomory_hu(g: Graph) -> Tree:
    """Gomory-Hu tree by Gusfield's method (n-1 max-flows, no contraction).

    Tree edges carry ``labels[f] = r(f)``, the min-cut value between the
    endpoints of ``f``.
    """
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    nodes = g.nodes
    n = len(nodes)
    if n == 1:
        return Tree(nodes, [])
    parent = [0] * n
    flow = [Fraction(0)] * n
    for s in range(1, n):
        t = parent[s]
        value, cut = max_flow_min_cut(g, nodes[s], nodes[t])
        side = cut.shore
        flow[s] = value
        for i in range(n):
            if i != s and nodes[i] in side and parent[i] == t:
                parent[i] = s
        if nodes[parent[t]] in side and t != 0:
            parent[s] = parent[t]
            parent[t] = s
            flow[s] = flow[t]
            flow[t] = value
    labels = {}
    edges = []
    for i in range(1, n):
        e = edge_key(nodes[i], nodes[parent[i]])
        edges.append(e)
        labels[e] = flow[i]
    return Tree(nodes, edges, labels)


def designated_endpoint(f: Edge) -> str:
    """t_f: the lexicographically smaller endpoint."""
    return min(f)


def fundamental_cut(h: Tree, f: Edge, g: Graph, endpoint: Optional[str] = None) -> Cut:
    """Cut of ``g`` whose shore is the component of ``h - f`` holding ``t_f``."""
    f = edge_key(*f)
    if f not in h:
        raise GraphError(f"{f} is not an edge of the tree")
    side = designated_endpoint(f) if endpoint is None else endpoint
    return Cut(g, h.component(f, side))


def tree_distances(h: Tree) -> dict:
    """All-pairs number of tree edges between nodes."""
    out = {}
    for r in h.nodes:
        dist = {r: 0}
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in h._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        out[r] = dist
    return out


class RequirementMismatch(AssertionError):
    pass


def requirement_value(h: Tree, g: Graph) -> Fraction:
    """Requirement of ``h``: sum of c(e) times tree distance of e's endpoints,
    cross-checked against the sum of fundamental-cut capacities."""
    if set(h.nodes) != set(g.nodes):
        raise GraphError("tree does not span the graph's nodes")
    dist = tree_distances(h)
    by_distance = sum((g.cap[e] * dist[e[0]][e[1]] for e in g.edges), Fraction(0))
    by_cuts = sum((fundamental_cut(h, f, g).capacity for f in h.edges), Fraction(0))
    if by_distance != by_cuts:
        raise RequirementMismatch(f"requirement sums disagree: {by_distance} != {by_cuts}")
    return by_distance


def tree_path(h: Tree, r: str, s: str) -> list[Edge]:
    return h.path(r, s)


def symmetric_difference(x: Iterable[Edge], y: Iterable[Edge]) -> set:
    return set(x) ^ set(y)


def enumerate_spanning_trees(nodes: Sequence[str], edges: Optional[Sequence[Edge]] = None) -> Iterator[Tree]:
    """All spanning trees over ``edges`` (default: the complete graph)."""
    from .core import complete_edges

    es = complete_edges(nodes) if edges is None else list(edges)
    k = len(nodes) - 1
    for combo in combinations(es, k):
        dsu = _DSU(nodes)
        if all(dsu.union(*e) for e in combo):
            yield Tree(nodes, combo)


def is_gomory_hu_tree(h: Tree, g: Graph) -> bool:
    """Every tree edge's fundamental cut is a minimum cut between its ends."""
    for f in h.edges:
        value, _ = max_flow_min_cut(g, f[0], f[1])
        if fundamental_cut(h, f, g).capacity != value:
            return False
    return True
