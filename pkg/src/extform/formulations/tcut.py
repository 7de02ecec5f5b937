"""Minimum T-cut as a single LP built around one pinned Gomory-Hu tree.

Layers, in order:

1. the Gomory-Hu polytope extension (primal-dual optimality system of the
   Gomory-Hu LP), block ``eta`` holding its multipliers;
2. the optimality system of ``min sum_j 2^j lambda_{f_j}`` over layer 1, block
   ``pi``; its only ``lambda`` is the lexicographically smallest Gomory-Hu
   tree, so every downstream quantity is pinned;
3. for each terminal ``s`` other than the root ``r = min(T)``, the r,s-path
   in that tree as ``path[s]`` (``0 <= path <= lambda``, degree one at both
   ends, and at every other node each used edge is matched by another);
4. ``alpha[i] = alpha[i-1] XOR path[s_i]`` by four linear rows per edge, and
   ``nu = alpha[k]``: ``nu_f = 1`` iff ``f``'s fundamental cut is a T-cut;
5. a selection ``theta`` in the simplex with ``theta <= nu`` and
   ``y^f_e >= x^f_e + theta_f - 1``; the objective is ``sum c(e) y^f_e``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from ..graphs import Graph, GraphError
from ..ratlp import EQ, GE, LE, MIN, ModelBuilder, Optimal, Variable, solve
from ..ratlp.face import FaceSystemError, build_optimal_face_system
from .extract import lex_weights
from .gomory_hu import build_gomory_hu_lp
from .handle import BlockRecorder, FormulationHandle, ename

DEFAULT_MAX_NODES = 6


class SizeCapError(ValueError):
    pass


def check_terminals(g: Graph, terminals: Iterable[str]) -> list:
    t = []
    for v in terminals:
        g.check_node(v)
        if v not in t:
            t.append(v)
    if len(t) < 2 or len(t) % 2:
        raise GraphError(f"|T| must be even and at least 2, got {len(t)}")
    return sorted(t)


def build_tcut_lp(
    g: Graph,
    terminals: Iterable[str],
    max_nodes: Optional[int] = DEFAULT_MAX_NODES,
    endpoint_rows: bool = False,
    record=None,
    **solve_kw,
) -> FormulationHandle:
    """Build the layered T-cut LP.

    ``max_nodes`` refuses larger graphs (``None`` disables the cap).
    ``endpoint_rows=True`` also imposes the matching rows of the path systems
    at the path's two ends; those rows cap every edge at an end by 1/2 and
    make the system infeasible, so this is only useful for demonstrations.
    The two layer-building solves use ``solve_kw`` and are reported to
    ``record(model, outcome)`` when given.
    """
    term = check_terminals(g, terminals)
    if max_nodes is not None and len(g.nodes) > max_nodes:
        raise SizeCapError(f"{len(g.nodes)} nodes exceeds the T-cut size cap of {max_nodes}")
    gh = build_gomory_hu_lp(g)
    k_edges = gh.meta["edges"]
    nodes = gh.meta["nodes"]

    o1 = solve(gh.model, **solve_kw)
    if record:
        record(gh.model, o1)
    if not isinstance(o1, Optimal):
        raise FaceSystemError(f"Gomory-Hu LP is {o1.status}")
    q1 = build_optimal_face_system(gh.model, o1, prefix="eta")
    lam = gh.block("lambda")
    lex = q1.with_objective(list(zip(lam, lex_weights(len(lam)))), MIN)
    o2 = solve(lex, **solve_kw)
    if record:
        record(lex, o2)
    if not isinstance(o2, Optimal):
        raise FaceSystemError(f"lexicographic stage is {o2.status}")
    q2 = build_optimal_face_system(lex, o2, prefix="pi")

    b = ModelBuilder.from_model(q2)
    b.name = "tcut"
    rec = BlockRecorder(b)
    rec.adopt(dict(gh.blocks), dict(gh.keys))
    rec.blocks["eta"] = range(gh.model.num_vars, q1.num_vars)
    rec.blocks["pi"] = range(q1.num_vars, q2.num_vars)

    # cut vectors are 0/1 at the pinned point; the cap keeps the selection
    # rows sound on cost-free edges, where the optimality system leaves x free
    for j in gh.block("x"):
        v = b.variables[j]
        b.variables[j] = Variable(v.name, v.lower, 1)

    lam_of = {f: j for f, j in zip(k_edges, lam)}
    root, others = term[0], term[1:]
    incident = {v: [f for f in k_edges if v in f] for v in nodes}

    paths = {}
    rec.start("path")
    for s in others:
        for f in k_edges:
            paths[(s, f)] = rec.add((s, f), f"path[{s}][{ename(f)}]", 0, None)
    rec.start("alpha")
    alpha = {}
    for i in range(len(others)):
        for f in k_edges:
            alpha[(i, f)] = rec.add((i, f), f"alpha[{i}][{ename(f)}]", None, None)
    rec.start("nu")
    nu = {f: rec.add(f, f"nu[{ename(f)}]", None, None) for f in k_edges}
    rec.start("theta")
    theta = {f: rec.add(f, f"theta[{ename(f)}]", 0, None) for f in k_edges}
    rec.start("y")
    y = {}
    for f in k_edges:
        for e in g.edges:
            y[(f, e)] = rec.add((f, e), f"y[{ename(f)}|{ename(e)}]", 0, None)
    rec.close()

    for s in others:
        p = {f: paths[(s, f)] for f in k_edges}
        b.add_row([(p[f], 1) for f in incident[root]], EQ, 1, name=f"path[{s}].deg[{root}]")
        b.add_row([(p[f], 1) for f in incident[s]], EQ, 1, name=f"path[{s}].deg[{s}]")
        for v in nodes:
            if v in (root, s) and not endpoint_rows:
                continue
            for f in incident[v]:
                row = [(p[h], 1) for h in incident[v] if h != f] + [(p[f], -1)]
                b.add_row(row, GE, 0, name=f"path[{s}].match[{v}|{ename(f)}]")
        for f in k_edges:
            b.add_row([(p[f], 1), (lam_of[f], -1)], LE, 0, name=f"path[{s}].cap[{ename(f)}]")

    for f in k_edges:
        b.add_row([(alpha[(0, f)], 1), (paths[(others[0], f)], -1)], EQ, 0, name=f"xor[0][{ename(f)}]")
    for i in range(1, len(others)):
        s = others[i]
        for f in k_edges:
            a, prev, ys = alpha[(i, f)], alpha[(i - 1, f)], paths[(s, f)]
            tag = f"[{i}][{ename(f)}]"
            b.add_row([(a, -1), (prev, 1), (ys, 1)], GE, 0, name="xor.le_sum" + tag)
            b.add_row([(a, 1), (prev, -1), (ys, 1)], GE, 0, name="xor.ge_diff" + tag)
            b.add_row([(a, 1), (prev, 1), (ys, -1)], GE, 0, name="xor.ge_rdiff" + tag)
            b.add_row([(a, 1), (prev, 1), (ys, 1)], LE, 2, name="xor.le_two" + tag)
    last = len(others) - 1
    for f in k_edges:
        b.add_row([(alpha[(last, f)], 1), (nu[f], -1)], EQ, 0, name=f"parity[{ename(f)}]")

    b.add_row({theta[f]: 1 for f in k_edges}, EQ, 1, name="select")
    for f in k_edges:
        b.add_row([(theta[f], 1), (nu[f], -1)], LE, 0, name=f"select.cap[{ename(f)}]")
    xs = gh.block("x")
    x_of = dict(zip(gh.keys["x"], xs))
    for f in k_edges:
        for e in g.edges:
            b.add_row([(y[(f, e)], 1), (x_of[(f, e)], -1), (theta[f], -1)], GE, -1, name=f"pick[{ename(f)}|{ename(e)}]")

    b.set_objective({y[(f, e)]: g.cap[e] for f in k_edges for e in g.edges if g.cap[e]}, MIN)
    meta = dict(gh.meta)
    meta.update(
        terminals=term,
        root=root,
        order=others,
        gh_optimum=o1.objective,
        lex_optimum=o2.objective,
        stage_iterations=(o1.iterations, o2.iterations),
    )
    return FormulationHandle(b.build(), rec.blocks, rec.keys, meta)
