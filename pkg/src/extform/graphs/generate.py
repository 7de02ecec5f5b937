"""Seeded random instances and the small named examples."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .core import Graph, edge_key


def random_capacity(rng: random.Random, max_den: int = 8, max_value: int = 4, allow_zero: bool = False) -> Fraction:
    den = rng.randint(1, max_den)
    lo = 0 if allow_zero else 1
    return Fraction(rng.randint(lo, max_value * den), den)


def random_connected_graph(
    n: int,
    rng: random.Random,
    extra_edge_prob: float = 0.4,
    max_den: int = 8,
    max_value: int = 4,
    allow_zero: bool = False,
    names: Optional[list] = None,
) -> Graph:
    """Random spanning tree plus each remaining pair with ``extra_edge_prob``."""
    nodes = names or [f"v{k}" for k in range(n)]
    order = nodes[:]
    rng.shuffle(order)
    edges = {}
    for k in range(1, n):
        u, v = order[k], order[rng.randrange(k)]
        edges[edge_key(u, v)] = random_capacity(rng, max_den, max_value, allow_zero)
    for a in range(n):
        for b in range(a + 1, n):
            e = edge_key(nodes[a], nodes[b])
            if e not in edges and rng.random() < extra_edge_prob:
                edges[e] = random_capacity(rng, max_den, max_value, allow_zero)
    return Graph(nodes, edges)


def path_graph_abc() -> Graph:
    """a - b - c with capacities 2 and 1."""
    return Graph(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1)])


def cycle4() -> Graph:
    """4-cycle a-b-c-d with unit capacities."""
    return Graph(["a", "b", "c", "d"], [("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("a", "d", 1)])


def star(leaves: int = 3, center: str = "m") -> Graph:
    nodes = [center] + [f"s{k}" for k in range(1, leaves + 1)]
    return Graph(nodes, [(center, v, 1) for v in nodes[1:]])


def triangle123() -> Graph:
    """K3 on 1,2,3 with w(12)=1, w(13)=2, w(23)=3."""
    return Graph(["1", "2", "3"], [("1", "2", 1), ("1", "3", 2), ("2", "3", 3)])


def two_paths_symmetric() -> Graph:
    """a-b-d and a-c-d, all capacities 1: several Gomory-Hu trees."""
    return Graph(["a", "b", "c", "d"], [("a", "b", 1), ("b", "d", 1), ("a", "c", 1), ("c", "d", 1)])
