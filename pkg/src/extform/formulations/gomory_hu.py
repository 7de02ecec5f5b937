"""Gomory-Hu trees as the optimal vertices of one compact LP.

A spanning tree ``lam`` of the complete graph ``K`` on the nodes is described
by the undirected tree extension; for every ``f`` in ``K`` the cut vector
``x^f`` satisfies ``x^f_{uv} >= |mu[f|t_f|u] - mu[f|t_f|v]|`` where ``t_f`` is
the smaller endpoint of ``f``.  Minimizing ``sum_f sum_e c(e) x^f_e`` picks a
minimum-requirement tree, and those are exactly the Gomory-Hu trees.
"""

from __future__ import annotations

from typing import Optional

from ..graphs import Graph, GraphError, complete_edges, designated_endpoint
from ..ratlp import GE, MIN, ModelBuilder, SolveOutcome
from ..ratlp.face import build_optimal_face_system
from .handle import BlockRecorder, FormulationHandle, ename
from .trees import add_tree_extension


def build_gomory_hu_lp(g: Graph) -> FormulationHandle:
    if len(g.nodes) < 2:
        raise GraphError("need at least two nodes")
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    nodes = list(g.nodes)
    k_edges = complete_edges(nodes)
    b = ModelBuilder("gomory_hu")
    rec = BlockRecorder(b)
    idx = add_tree_extension(rec, nodes, k_edges)
    mu = idx["mu"]
    # x^f is bounded below by the rows; leaving it free keeps derived
    # primal-dual systems smaller
    rec.start("x")
    x = {}
    for f in k_edges:
        for e in g.edges:
            x[(f, e)] = rec.add((f, e), f"x[{ename(f)}|{ename(e)}]", None, None)
    rec.close()
    ends = {f: designated_endpoint(f) for f in k_edges}
    for f in k_edges:
        t = ends[f]
        for e in g.edges:
            u, v = e
            b.add_row([(x[(f, e)], 1), (mu[(f, t, v)], 1), (mu[(f, t, u)], -1)], GE, 0, name=f"gh+[{ename(f)}|{ename(e)}]")
            b.add_row([(x[(f, e)], 1), (mu[(f, t, u)], 1), (mu[(f, t, v)], -1)], GE, 0, name=f"gh-[{ename(f)}|{ename(e)}]")
    b.set_objective({x[(f, e)]: g.cap[e] for f in k_edges for e in g.edges if g.cap[e]}, MIN)
    meta = {"graph": g, "nodes": nodes, "edges": k_edges, "endpoints": ends}
    return FormulationHandle(b.build(), rec.blocks, rec.keys, meta)


def build_ghtree_polytope_extension(
    g: Graph,
    outcome: Optional[SolveOutcome] = None,
    base: Optional[FormulationHandle] = None,
    **solve_kw,
) -> FormulationHandle:
    """Primal-dual optimality system of the Gomory-Hu LP.

    Its projection onto ``lambda`` is the convex hull of the Gomory-Hu trees.
    The multipliers form the block ``eta``; the objective is empty.
    """
    gh = base if base is not None else build_gomory_hu_lp(g)
    face = build_optimal_face_system(gh.model, outcome, prefix="eta", **solve_kw)
    blocks = dict(gh.blocks)
    blocks["eta"] = range(gh.model.num_vars, face.num_vars)
    keys = dict(gh.keys)
    keys["eta"] = [v.name for v in face.variables[gh.model.num_vars:]]
    meta = dict(gh.meta)
    if outcome is not None:
        meta["gh_optimum"] = outcome.objective
    return FormulationHandle(face, blocks, keys, meta)
