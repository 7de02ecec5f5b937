"""Compact extended formulations of the spanning tree polytope.

Two systems are provided:

* the undirected one with edge variables ``lam[e]`` and component
  indicators ``mu[e|u|v]`` (``mu[e|u|v] = 1`` iff ``e`` is a tree edge and
  ``v`` lies on ``u``'s side of ``T - e``);
* the directed flow system on the bidirected graph with arc variables
  ``nu[a]``, one unit flow ``sigma[w][a]`` from the root to every other node
  ``w``, and ``lam[{u,v}] = nu[uv] + nu[vu]``.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..graphs import Digraph, Edge, Graph, edge_key
from ..ratlp import EQ, GE, MIN, ModelBuilder
from .handle import BlockRecorder, FormulationHandle, ename

EQ10 = "eq10"
EQ11 = "eq11"


def add_tree_extension(rec: BlockRecorder, nodes: Sequence[str], edges: Sequence[Edge], tag: str = "") -> dict:
    """Add the undirected system over ``edges`` to ``rec``'s builder.

    Returns ``{"lam": {e: idx}, "mu": {(e, u, v): idx}}``.  Blocks are
    recorded as ``lambda`` and ``mu`` (suffixed with ``tag``).
    """
    b = rec.b
    lam: dict = {}
    mu: dict = {}
    rec.start("lambda" + tag)
    for e in edges:
        lam[e] = rec.add(e, f"lam{tag}[{ename(e)}]", 0, None)
    rec.start("mu" + tag)
    for e in edges:
        for u in e:
            for v in nodes:
                mu[(e, u, v)] = rec.add((e, u, v), f"mu{tag}[{ename(e)}|{u}|{v}]", 0, None)
    rec.close()

    b.add_row({lam[e]: 1 for e in edges}, EQ, len(nodes) - 1, name=f"tree{tag}.card")
    for e in edges:
        u, v = e
        b.add_row({mu[(e, u, v)]: 1}, EQ, 0, name=f"tree{tag}.own[{ename(e)}|{u}]")
        b.add_row({mu[(e, v, u)]: 1}, EQ, 0, name=f"tree{tag}.own[{ename(e)}|{v}]")
    for e in edges:
        for w in nodes:
            b.add_row([(lam[e], 1), (mu[(e, e[0], w)], -1), (mu[(e, e[1], w)], -1)], EQ, 0, name=f"tree{tag}.split[{ename(e)}|{w}]")
    # every node u != v has exactly one incident tree edge leading towards v
    edge_set = set(edges)
    incident: dict = {u: [] for u in nodes}
    for e in edges:
        incident[e[0]].append((e, e[1]))
        incident[e[1]].append((e, e[0]))
    for u in nodes:
        for v in nodes:
            if u == v:
                continue
            row = []
            uv = edge_key(u, v)
            if uv in edge_set:
                row.append((lam[uv], 1))
            for e, w in incident[u]:
                if w != v:
                    row.append((mu[(e, w, v)], 1))
            b.add_row(row, EQ, 1, name=f"tree{tag}.toward[{u}|{v}]")
    return {"lam": lam, "mu": mu}


def add_arborescence_extension(
    rec: BlockRecorder,
    nodes: Sequence[str],
    edges: Sequence[Edge],
    root: str,
    tag: str = "",
    root_row: str = "net",
) -> dict:
    """Add the directed flow system and the coupling to undirected ``lam``.

    ``root_row='net'`` constrains the root's net outflow of each ``sigma^w``
    to 1; ``'out'`` constrains only the outflow, which admits flows that
    leave the root and come straight back (kept for demonstration).
    """
    if root not in nodes:
        raise ValueError(f"root {root!r} is not a node")
    b = rec.b
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        arcs.append((v, u))
    targets = [w for w in nodes if w != root]
    rec.start("nu" + tag)
    nu = {a: rec.add(a, f"nu{tag}[{a[0]}>{a[1]}]", 0, None) for a in arcs}
    rec.start("sigma" + tag)
    sigma = {}
    for w in targets:
        for a in arcs:
            sigma[(w, a)] = rec.add((w, a), f"sigma{tag}[{w}][{a[0]}>{a[1]}]", 0, None)
    rec.start("lambda" + tag)
    lam = {e: rec.add(e, f"lam{tag}[{ename(e)}]", None, None) for e in edges}
    rec.close()

    out_arcs: dict = {v: [] for v in nodes}
    in_arcs: dict = {v: [] for v in nodes}
    for a in arcs:
        out_arcs[a[0]].append(a)
        in_arcs[a[1]].append(a)

    b.add_row({nu[a]: 1 for a in arcs}, EQ, len(nodes) - 1, name=f"arb{tag}.card")
    for w in targets:
        for a in arcs:
            b.add_row([(nu[a], 1), (sigma[(w, a)], -1)], GE, 0, name=f"arb{tag}.cap[{w}][{a[0]}>{a[1]}]")
    for w in targets:
        row = [(sigma[(w, a)], 1) for a in out_arcs[root]]
        if root_row == "net":
            row += [(sigma[(w, a)], -1) for a in in_arcs[root]]
        elif root_row != "out":
            raise ValueError(f"unknown root_row {root_row!r}")
        b.add_row(row, EQ, 1, name=f"arb{tag}.root[{w}]")
        for v in targets:
            if v == w:
                continue
            row = [(sigma[(w, a)], 1) for a in out_arcs[v]] + [(sigma[(w, a)], -1) for a in in_arcs[v]]
            b.add_row(row, EQ, 0, name=f"arb{tag}.flow[{w}][{v}]")
    for e in edges:
        u, v = e
        b.add_row([(lam[e], 1), (nu[(u, v)], -1), (nu[(v, u)], -1)], EQ, 0, name=f"arb{tag}.lam[{ename(e)}]")
    return {"lam": lam, "nu": nu, "sigma": sigma}


def build_tree_extension(g: Graph, weights: Optional[dict] = None, sense: str = MIN) -> FormulationHandle:
    """Undirected spanning-tree extension of ``g``.

    The objective is ``sum weights[e] * lam[e]`` (default: the capacities).
    """
    if len(g.nodes) < 2:
        raise ValueError("need at least two nodes")
    b = ModelBuilder("tree_ext")
    rec = BlockRecorder(b)
    idx = add_tree_extension(rec, g.nodes, g.edges)
    w = g.cap if weights is None else weights
    b.set_objective({idx["lam"][e]: w[e] for e in g.edges}, sense)
    return FormulationHandle(b.build(), rec.blocks, rec.keys, {"graph": g, "edges": list(g.edges), "backend": EQ10})


def build_arborescence_extension(
    g: Graph,
    root: Optional[str] = None,
    weights: Optional[dict] = None,
    sense: str = MIN,
    root_row: str = "net",
) -> FormulationHandle:
    """Directed flow extension of the spanning tree polytope of ``g``."""
    root = g.nodes[0] if root is None else g.check_node(root)
    b = ModelBuilder("arb_ext")
    rec = BlockRecorder(b)
    idx = add_arborescence_extension(rec, g.nodes, g.edges, root, root_row=root_row)
    w = g.cap if weights is None else weights
    b.set_objective({idx["lam"][e]: w[e] for e in g.edges}, sense)
    return FormulationHandle(
        b.build(), rec.blocks, rec.keys, {"graph": g, "edges": list(g.edges), "root": root, "backend": EQ11, "digraph": Digraph.from_graph(g)}
    )
