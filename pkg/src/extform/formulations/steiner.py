"""Spanning-tree approximation of the Steiner tree problem as one LP.

One shortest-path flow per pair of terminals, homogenized by the pair's
weight ``lam_e``, coupled with a spanning-tree extension on the terminals.
The optimum is the MST weight of the metric closure restricted to the
terminals, which is at most twice the minimum Steiner tree.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable

from ..graphs import Graph, GraphError, complete_edges
from ..ratlp import MIN, ModelBuilder
from .handle import BlockRecorder, FormulationHandle, ename
from .hull import build_coupled, extension_from_model
from .paths import arc_name, build_shortest_path_lp
from .trees import EQ10, EQ11, add_arborescence_extension, add_tree_extension

BACKENDS = (EQ10, EQ11)


def _tree_coupling(terminals, k_edges, backend):
    b = ModelBuilder("tree")
    rec = BlockRecorder(b)
    if backend == EQ10:
        idx = add_tree_extension(rec, terminals, k_edges)
    elif backend == EQ11:
        idx = add_arborescence_extension(rec, terminals, k_edges, terminals[0])
    else:
        raise ValueError(f"unknown tree backend {backend!r}; choose from {BACKENDS}")
    model = b.build()
    return extension_from_model(model, [idx["lam"][e] for e in k_edges])


def steiner_parts(g: Graph, terminals: Iterable[str], backend: str = EQ10):
    """``(terminals, pair edges, arcs, subproblems, coupling, arc costs)``.

    Subproblem ``i`` is the shortest-path system of the ``i``-th terminal
    pair, the coupling the spanning-tree extension over those pairs.
    """
    s = []
    for v in terminals:
        g.check_node(v)
        if v not in s:
            s.append(v)
    s.sort(key=g.nodes.index)
    if len(s) < 2:
        raise GraphError("need at least two terminals")
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    k_edges = complete_edges(s)
    polys = []
    arcs = None
    for e in k_edges:
        sp = build_shortest_path_lp(g, e[0], e[1])
        arcs = sp.meta["arcs"]
        desc = extension_from_model(sp.model, list(sp.block("x")), label=ename(e))
        polys.append(replace(desc, names=tuple(arc_name(a) for a in arcs)))
    coupling = _tree_coupling(s, k_edges, backend)
    cost = [g.cap[(a if a in g.cap else (a[1], a[0]))] for a in arcs]
    return s, k_edges, arcs, polys, coupling, cost


def build_steiner_approx(g: Graph, terminals: Iterable[str], backend: str = EQ10) -> FormulationHandle:
    s, k_edges, arcs, polys, coupling, cost = steiner_parts(g, terminals, backend)
    h = build_coupled(polys, coupling, cost, MIN, keep_x=False, name="steiner")
    keys = dict(h.keys)
    keys["lambda"] = list(k_edges)
    for e in k_edges:
        keys[f"x^{ename(e)}"] = list(arcs)
    meta = {"graph": g, "terminals": s, "edges": k_edges, "arcs": list(arcs), "backend": backend}
    return FormulationHandle(h.model, h.blocks, keys, meta)
