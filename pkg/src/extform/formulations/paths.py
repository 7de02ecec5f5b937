"""Shortest-path flow LP and the s,t-cut LP."""

from __future__ import annotations

from ..graphs import Digraph, Graph, GraphError
from ..ratlp import EQ, GE, MIN, ModelBuilder
from .handle import BlockRecorder, FormulationHandle, ename


def arc_name(a) -> str:
    return f"{a[0]}>{a[1]}"


def build_shortest_path_lp(g: Graph, s: str, t: str) -> FormulationHandle:
    """Unit flow from ``s`` to ``t`` on the bidirected graph, ``0 <= x <= 1``.

    Conservation is imposed at every node other than ``s`` and ``t``; the
    balance at ``t`` follows.
    """
    g.check_node(s)
    g.check_node(t)
    if s == t:
        raise GraphError("source and sink must differ")
    d = Digraph.from_graph(g)
    b = ModelBuilder(f"sp[{s},{t}]")
    rec = BlockRecorder(b)
    rec.start("x")
    x = {a: rec.add(a, f"x[{arc_name(a)}]", 0, 1) for a in d.arcs}
    rec.close()
    for v in g.nodes:
        if v == t:
            continue
        row = [(x[a], 1) for a in d.out_arcs(v)] + [(x[a], -1) for a in d.in_arcs(v)]
        b.add_row(row, EQ, 1 if v == s else 0, name=f"bal[{v}]")
    b.set_objective({x[a]: d.cost[a] for a in d.arcs}, MIN)
    return FormulationHandle(b.build(), rec.blocks, rec.keys, {"source": s, "sink": t, "arcs": list(d.arcs)})


def build_stcut_lp(g: Graph, s: str, t: str) -> FormulationHandle:
    """Potentials ``z`` with ``z_s = 0``, ``z_t = 1`` and ``x_e >= |z_u - z_v|``.

    Variables are free; the rows bound ``x`` from below by zero.
    """
    g.check_node(s)
    g.check_node(t)
    if s == t:
        raise GraphError("source and sink must differ")
    b = ModelBuilder(f"stcut[{s},{t}]")
    rec = BlockRecorder(b)
    rec.start("z")
    z = {v: rec.add(v, f"z[{v}]", None, None) for v in g.nodes}
    rec.start("x")
    x = {e: rec.add(e, f"x[{ename(e)}]", None, None) for e in g.edges}
    rec.close()
    b.add_row({z[s]: 1}, EQ, 0, name="zs")
    b.add_row({z[t]: 1}, EQ, 1, name="zt")
    for e in g.edges:
        u, v = e
        b.add_row([(x[e], 1), (z[u], 1), (z[v], -1)], GE, 0, name=f"cut+[{ename(e)}]")
        b.add_row([(x[e], 1), (z[v], 1), (z[u], -1)], GE, 0, name=f"cut-[{ename(e)}]")
    b.set_objective({x[e]: g.cap[e] for e in g.edges}, MIN)
    return FormulationHandle(b.build(), rec.blocks, rec.keys, {"source": s, "sink": t})
