"""Certification harness.

Every LP result is compared, exactly, with an independent combinatorial
oracle or with a structural claim about the formulation.  Each claim is a
separately named :class:`Check` inside a :class:`CheckReport`, and every
solver outcome produced along the way is re-certified (primal feasibility,
dual feasibility, zero duality gap, complementary slackness, or the ray /
Farkas certificate) by :func:`extform.ratlp.certificate_problems`.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .formulations import (
    EQ10,
    EQ11,
    ExtensionDesc,
    ExtractionError,
    PolyhedronDesc,
    build_arborescence_extension,
    build_balas_hull,
    build_coupled,
    build_ghtree_polytope_extension,
    build_gomory_hu_lp,
    build_steiner_approx,
    build_tcut_lp,
    build_tree_extension,
    extract_fundamental_cuts,
    extract_tcut,
    extract_tree,
    simplex_coupling,
    solve_integral,
    steiner_parts,
    two_phase,
)
from .formulations.tcut import DEFAULT_MAX_NODES
from .graphs import (
    Graph,
    brute_force_min_tcut,
    brute_force_steiner,
    complete_edges,
    enumerate_spanning_trees,
    fmt_edge,
    fundamental_cut,
    gusfield_gomory_hu,
    kruskal_mst,
    max_flow_min_cut,
    metric_closure,
    requirement_value,
)
from .graphs.generate import cycle4, path_graph_abc, random_connected_graph, star, triangle123, two_paths_symmetric
from .rat import fmt_rat
from .ratlp import EQ, GE, LE, MAX, MIN, Aborted, Model, Optimal, Unbounded, certificate_problems, solve

DEFAULT_SEED = 20240601


def _show(v):
    if isinstance(v, Fraction):
        return fmt_rat(v)
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)


@dataclass
class Check:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "lhs": _show(self.lhs), "rhs": _show(self.rhs), "detail": self.detail}

    def line(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        out = f"  [{mark}] {self.name}"
        if self.lhs is not None or self.rhs is not None:
            out += f": {_show(self.lhs)} vs {_show(self.rhs)}"
        if self.detail:
            out += f" ({self.detail})"
        return out


class CheckReport:
    """Named exact checks for one instance.

    ``outcomes`` counts the certified solver outcomes by status; ``info``
    holds values worth printing (optima, the selected index, ...).
    """

    def __init__(self, instance: str):
        self.instance = instance
        self.checks: list[Check] = []
        self.info: dict = {}
        self.outcomes: Counter = Counter()

    def add(self, name: str, passed: bool, lhs=None, rhs=None, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), lhs, rhs, detail))
        return bool(passed)

    def equal(self, name: str, lhs, rhs, detail: str = "") -> bool:
        return self.add(name, lhs == rhs, lhs, rhs, detail)

    def at_most(self, name: str, lhs, rhs, detail: str = "") -> bool:
        return self.add(name, lhs is not None and rhs is not None and lhs <= rhs, lhs, rhs, detail)

    def holds(self, name: str, cond: bool, detail: str = "") -> bool:
        return self.add(name, cond, detail=detail)

    def certify(self, model: Model, outcome) -> bool:
        """Re-check ``outcome`` against ``model``; aborted solves fail."""
        self.outcomes[outcome.status] += 1
        name = f"certificate {model.name} ({outcome.status})"
        if isinstance(outcome, Aborted):
            return self.holds(name, False, detail="pivot cap reached")
        problems = certificate_problems(model, outcome)
        return self.holds(name, not problems, detail="; ".join(problems[:3]))

    def solve(self, model: Model, **solve_kw):
        o = solve(model, **solve_kw)
        self.certify(model, o)
        return o

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def certificate_checks(self) -> list[Check]:
        return [c for c in self.checks if c.name.startswith("certificate ")]

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "pass": self.passed,
            "info": {k: _show(v) for k, v in self.info.items()},
            "outcomes": dict(sorted(self.outcomes.items())),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        n = len(self.checks)
        bad = len(self.failures())
        return f"{self.instance}: {'pass' if not bad else 'FAIL'} ({n - bad}/{n} checks)"

    def __repr__(self) -> str:
        return f"CheckReport({self.summary()})"


# ---------------------------------------------------------------------------
# hull and coupled systems


def check_balas_vertex(h, sol, report: Optional[CheckReport] = None) -> CheckReport:
    """At a vertex of the hull LP one ``lambda_k`` is 1, the rest 0, and every
    other copy ``(x^i, y^i)`` vanishes (subproblems assumed bounded).

    ``info['k']`` is the 1-based index of the selected polyhedron.
    """
    rep = report or CheckReport(f"balas-vertex {h.model.name}")
    x = sol.primal if isinstance(sol, Optimal) else sol
    labels = h.meta["labels"]
    lam = h.values(x, "lambda")
    integral = all(v in (0, 1) for v in lam.values())
    rep.holds("lambda is 0/1", integral, detail=", ".join(f"{k}={fmt_rat(v)}" for k, v in lam.items()))
    ones = [lab for lab in labels if lam[lab] == 1]
    rep.equal("exactly one lambda equals 1", len(ones), 1)
    if not integral or len(ones) != 1:
        return rep
    k = ones[0]
    rep.info["k"] = labels.index(k) + 1
    for lab in labels:
        if lab == k:
            continue
        vals = list(h.values(x, f"x^{lab}").values()) + list(h.values(x, f"y^{lab}").values())
        rep.holds(f"copy {lab} vanishes", all(v == 0 for v in vals))
    if h.meta["keep_x"]:
        rep.equal("x equals the selected copy", list(h.values(x, "x").values()), list(h.values(x, f"x^{k}").values()))
    return rep


def check_coupled_optimality(
    polys: Sequence[ExtensionDesc],
    coupling: ExtensionDesc,
    w: Sequence,
    sense: str = MAX,
    keep_x: bool = True,
    report: Optional[CheckReport] = None,
    **solve_kw,
) -> CheckReport:
    """One coupled LP against the two-phase computation.

    Both must agree on the status; if optimal, on the value, and the
    coupled solution's ``lambda`` must be optimal for the coupling problem
    with the subproblem values, each copy ``x^i`` attaining ``lam_i`` times
    its subproblem's value.
    """
    rep = report or CheckReport("coupled")
    h = build_coupled(polys, coupling, w, sense, keep_x)
    o = rep.solve(h.model, **solve_kw)
    status, value, subs, _ = two_phase(polys, coupling, w, sense, record=rep.certify, **solve_kw)
    rep.equal("status agrees with two-phase", o.status, status)
    rep.info["status"] = status
    if not (isinstance(o, Optimal) and status == "optimal"):
        if status == "unbounded":
            unb = [i for i, s in enumerate(subs) if isinstance(s, Unbounded)]
            rep.info["unbounded_sub"] = unb[0] + 1 if unb else None
        return rep
    rep.equal("coupled optimum equals two-phase value", o.objective, value)
    rep.info["value"] = value
    wbar = [s.objective for s in subs]
    lam = list(h.values(o, "lambda").values())
    rep.equal("lambda is optimal for the coupling problem", sum((a * b for a, b in zip(wbar, lam)), Fraction(0)), value)
    wq = [Fraction(c) for c in w]
    for lab, lam_i, wb in zip(h.meta["labels"], lam, wbar):
        xi = list(h.values(o, f"x^{lab}").values())
        got = sum((a * b for a, b in zip(wq, xi)), Fraction(0))
        rep.equal(f"copy {lab} attains lambda times its value", got, lam_i * wb)
    return rep


def random_polygon(rng: random.Random, label: str = "", span: int = 6, den: int = 2) -> ExtensionDesc:
    """Triangle or quadrilateral: hull of 3 or 4 random rational points,
    described by its edge inequalities."""
    while True:
        pts = {(Fraction(rng.randint(-span * den, span * den), den), Fraction(rng.randint(-span * den, span * den), den)) for _ in range(rng.choice((3, 4)))}
        hull = _convex_hull(sorted(pts))
        if len(hull) >= 3:
            break
    rows = []
    for i, p in enumerate(hull):
        q = hull[(i + 1) % len(hull)]
        # counter-clockwise order: the outward normal is (dy, -dx)
        a = (q[1] - p[1], p[0] - q[0])
        rows.append((list(a), LE, a[0] * p[0] + a[1] * p[1]))
    return PolyhedronDesc(2, rows, ("x1", "x2"), label)


def _convex_hull(pts):
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    if len(pts) < 3:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def check_hull_instance(polys: Sequence[ExtensionDesc], w: Sequence, sense: str = MAX, name: str = "hull", **solve_kw) -> CheckReport:
    """Hull optimum equals the best subproblem optimum, at a checked vertex."""
    rep = CheckReport(name)
    h = build_balas_hull(polys, w, sense)
    o = rep.solve(h.model, **solve_kw)
    vals = []
    for p in polys:
        s = rep.solve(p.as_model(w, sense), **solve_kw)
        if isinstance(s, Optimal):
            vals.append(s.objective)
    if not isinstance(o, Optimal) or len(vals) != len(polys):
        rep.holds("hull and subproblems optimal", False, detail=o.status)
        return rep
    best = max(vals) if sense == MAX else min(vals)
    rep.equal("hull optimum equals best polyhedron optimum", o.objective, best)
    rep.info["value"] = o.objective
    check_balas_vertex(h, o, rep)
    return rep


def interval_pair() -> list:
    """``[0, 1]`` and ``[2, 3]`` on the line."""
    return [
        PolyhedronDesc(1, [([1], GE, 0), ([1], LE, 1)], ("x",), "1"),
        PolyhedronDesc(1, [([1], GE, 2), ([1], LE, 3)], ("x",), "2"),
    ]


# ---------------------------------------------------------------------------
# spanning trees and Steiner trees


def check_tree_extension(g: Graph, backends: Iterable[str] = (EQ10, EQ11), **solve_kw) -> CheckReport:
    """Both spanning-tree extensions against Kruskal."""
    rep = CheckReport(f"trees n={len(g.nodes)} m={len(g.edges)}")
    _, weight = kruskal_mst(g)
    rep.info["mst"] = weight
    values = {}
    for backend in backends:
        h = build_tree_extension(g) if backend == EQ10 else build_arborescence_extension(g)
        o = solve_integral(h, "lambda", record=rep.certify, **solve_kw)
        if not isinstance(o, Optimal):
            rep.holds(f"{backend} optimal", False, detail=o.status)
            continue
        values[backend] = o.objective
        rep.equal(f"{backend} optimum equals Kruskal weight", o.objective, weight)
        try:
            tree = extract_tree(h, o)
        except ExtractionError as exc:
            rep.holds(f"{backend} lambda is a spanning tree", False, detail=str(exc))
            continue
        rep.holds(f"{backend} lambda is a spanning tree", True)
        rep.equal(f"{backend} tree weight", g.total_capacity(tree.edges), weight)
        rep.info.setdefault("optimum", o.objective)
        rep.info.setdefault("tree", "{" + ",".join(fmt_edge(e) for e in tree.edges) + "}")
    if len(values) == 2:
        rep.equal("backends agree", values[EQ10], values[EQ11])
    return rep


def closure_mst_weight(g: Graph, terminals: Sequence[str]) -> Fraction:
    return kruskal_mst(metric_closure(g).induced(terminals))[1]


def check_steiner(g: Graph, terminals: Sequence[str], backend: str = EQ10, **solve_kw) -> CheckReport:
    """Steiner LP against the metric-closure MST and the brute-force optimum."""
    rep = CheckReport(f"steiner n={len(g.nodes)} S={','.join(terminals)} {backend}")
    h = build_steiner_approx(g, terminals, backend)
    o = rep.solve(h.model, **solve_kw)
    if not isinstance(o, Optimal):
        rep.holds("Steiner LP optimal", False, detail=o.status)
        return rep
    term = h.meta["terminals"]
    mst = closure_mst_weight(g, term)
    opt, _ = brute_force_steiner(g, term)
    rep.info.update(lp=o.objective, steiner=opt, bound=2 * opt)
    rep.equal("LP optimum equals metric-closure MST on S", o.objective, mst)
    rep.at_most("LP optimum at most twice the Steiner optimum", o.objective, 2 * opt)
    return rep


# ---------------------------------------------------------------------------
# Gomory-Hu trees


def _pair_min_cuts(g: Graph) -> dict:
    return {e: max_flow_min_cut(g, *e)[0] for e in complete_edges(g.nodes)}


def _cut_values(tree, g: Graph) -> dict:
    return {f: fundamental_cut(tree, f, g).capacity for f in tree.edges}


def gomory_hu_trees(g: Graph, min_cuts: Optional[dict] = None) -> tuple:
    """``(all spanning trees of K with their requirement, the GH trees)`` by
    enumeration."""
    min_cuts = min_cuts or _pair_min_cuts(g)
    trees, gh = [], []
    for t in enumerate_spanning_trees(list(g.nodes)):
        vals = _cut_values(t, g)
        trees.append((t, sum(vals.values(), Fraction(0))))
        if all(vals[f] == min_cuts[f] for f in t.edges):
            gh.append(t)
    return trees, gh


def check_gomory_hu(g: Graph, enumerate_limit: int = 6, **solve_kw) -> CheckReport:
    """Gomory-Hu LP against Gusfield, the Gomory-Hu definition, the
    path-minimum property and (for small graphs) all spanning trees."""
    rep = CheckReport(f"gomory-hu n={len(g.nodes)} m={len(g.edges)}")
    h = build_gomory_hu_lp(g)
    o = solve_integral(h, "lambda", record=rep.certify, **solve_kw)
    if not isinstance(o, Optimal):
        rep.holds("Gomory-Hu LP optimal", False, detail=o.status)
        return rep
    rep.info["optimum"] = o.objective
    rep.equal("LP optimum equals Gusfield tree requirement", o.objective, requirement_value(gusfield_gomory_hu(g), g))
    try:
        tree = extract_tree(h, o)
    except ExtractionError as exc:
        rep.holds("lambda is a spanning tree of K", False, detail=str(exc))
        return rep
    rep.info["tree"] = "{" + ",".join(fmt_edge(e) for e in tree.edges) + "}"
    rep.equal("extracted tree requirement equals LP optimum", requirement_value(tree, g), o.objective)
    min_cuts = _pair_min_cuts(g)
    r = _cut_values(tree, g)
    for f in tree.edges:
        rep.equal(f"fundamental cut of {fmt_edge(f)} is a minimum cut", r[f], min_cuts[f])
    try:
        extract_fundamental_cuts(h, o)
        rep.holds("cut vectors are the fundamental cuts", True)
    except ExtractionError as exc:
        rep.holds("cut vectors are the fundamental cuts", False, detail=str(exc))
    for u, v in combinations(g.nodes, 2):
        along = min(r[f] for f in tree.path(u, v))
        rep.equal(f"path minimum {u},{v}", along, min_cuts[complete_edges([u, v])[0]])
    if len(g.nodes) <= enumerate_limit:
        trees, gh = gomory_hu_trees(g, min_cuts)
        best = min(req for _, req in trees)
        rep.equal("LP optimum equals minimum requirement over all trees", o.objective, best)
        minimal = {t.edges for t, req in trees if req == best}
        rep.holds(
            "minimum-requirement trees are exactly the Gomory-Hu trees",
            minimal == {t.edges for t in gh},
            detail=f"{len(minimal)} minimal, {len(gh)} Gomory-Hu",
        )
    return rep


def check_gh_polytope(g: Graph, objectives: int = 10, seed: int = DEFAULT_SEED, **solve_kw) -> CheckReport:
    """Optimize over the Gomory-Hu tree extension and compare with the
    enumerated Gomory-Hu trees: every coordinate range and ``objectives``
    random linear objectives."""
    rep = CheckReport(f"gh-polytope n={len(g.nodes)} m={len(g.edges)}")
    base = build_gomory_hu_lp(g)
    o = rep.solve(base.model, **solve_kw)
    if not isinstance(o, Optimal):
        rep.holds("Gomory-Hu LP optimal", False, detail=o.status)
        return rep
    ext = build_ghtree_polytope_extension(g, outcome=o, base=base)
    edges = ext.meta["edges"]
    lam = list(ext.block("lambda"))
    _, gh = gomory_hu_trees(g)
    chis = [t.indicator(edges) for t in gh]
    rep.info["gh_trees"] = len(gh)

    def over_ext(w, sense):
        m = ext.model.with_objective([(j, c) for j, c in zip(lam, w) if c], sense)
        out = rep.solve(m, **solve_kw)
        return out.objective if isinstance(out, Optimal) else None

    for k, f in enumerate(edges):
        unit = [1 if i == k else 0 for i in range(len(edges))]
        rep.equal(f"max lambda[{fmt_edge(f)}]", over_ext(unit, MAX), max(c[k] for c in chis))
        rep.equal(f"min lambda[{fmt_edge(f)}]", over_ext(unit, MIN), min(c[k] for c in chis))
    if len(gh) == 1:
        rep.info["lambda_point"] = "{" + ",".join(fmt_edge(e) for e in gh[0].edges) + "}"
    rng = random.Random(seed)
    for k in range(objectives):
        w = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in edges]
        best = max(sum((a * b for a, b in zip(w, c)), Fraction(0)) for c in chis)
        rep.equal(f"objective {k}: extension maximum equals best Gomory-Hu tree", over_ext(w, MAX), best)
    return rep


# ---------------------------------------------------------------------------
# T-cuts


def check_tcut(g: Graph, terminals: Sequence[str], max_nodes: Optional[int] = DEFAULT_MAX_NODES, **solve_kw) -> CheckReport:
    """T-cut LP against the brute-force minimum T-cut."""
    rep = CheckReport(f"tcut n={len(g.nodes)} T={','.join(terminals)}")
    h = build_tcut_lp(g, terminals, max_nodes, record=rep.certify, **solve_kw)
    o = solve_integral(h, "theta", record=rep.certify, **solve_kw)
    opt, _ = brute_force_min_tcut(g, terminals)
    rep.info["oracle"] = opt
    if not isinstance(o, Optimal):
        rep.holds("T-cut LP optimal", False, detail=o.status)
        return rep
    rep.info["optimum"] = o.objective
    rep.equal("LP optimum equals brute-force minimum T-cut", o.objective, opt)
    try:
        cut = extract_tcut(h, o)
    except ExtractionError as exc:
        rep.holds("y encodes a cut", False, detail=str(exc))
        return rep
    rep.info["cut"] = cut
    odd = len(cut.shore & set(h.meta["terminals"])) % 2 == 1
    rep.holds("extracted cut is a T-cut", odd)
    rep.equal("extracted cut capacity", cut.capacity, opt)
    return rep


# ---------------------------------------------------------------------------
# size audits

# fitted once on the seeded audits with a generous margin; a growth rate
# above the stated bound shows up as a ratio that keeps climbing past these
AUDIT_CONSTANTS = {"steiner": 8, "gh": 12}
AUDIT_KINDS = tuple(AUDIT_CONSTANTS)


def model_size(m: Model) -> int:
    """Rows + columns + nonzeros + objective length + bits of all numbers."""
    return m.size() + m.encoding_bits()


def size_audit(kind: str, ns: Iterable[int], seed: int = DEFAULT_SEED, constant: Optional[int] = None) -> CheckReport:
    """Check ``size(model) <= C * bound(n)`` on one seeded graph per ``n``.

    ``'steiner'``: Steiner LP with ``|S| = min(4, n)``, bound
    ``(|G| + |S| + <c>) |S|^2``.  ``'gh'``: Gomory-Hu tree extension (the
    optimality system of the Gomory-Hu LP), bound ``n^4 + n^2 <c>``; sizes
    must also grow monotonically with ``n``.  ``<c>`` is the bit length of
    the capacities.
    """
    if kind not in AUDIT_CONSTANTS:
        raise ValueError(f"unknown audit kind {kind!r}; choose from {AUDIT_KINDS}")
    c = AUDIT_CONSTANTS[kind] if constant is None else constant
    rep = CheckReport(f"size-audit {kind}")
    rng = random.Random(seed)
    ratios = {}
    prev = None
    for n in ns:
        g = random_connected_graph(n, rng)
        enc = g.encoding_length()
        if kind == "steiner":
            s = rng.sample(list(g.nodes), min(4, n))
            m = build_steiner_approx(g, s).model
            bound = (g.size() + len(s) + enc) * len(s) ** 2
        else:
            m = build_ghtree_polytope_extension(g, assume_optimal=True).model
            bound = n ** 4 + n ** 2 * enc
        size = model_size(m)
        ratios[n] = Fraction(size, bound)
        rep.at_most(f"n={n}: size at most {c} x bound", size, c * bound, detail=f"ratio {float(ratios[n]):.3f}")
        if kind == "gh" and prev is not None:
            rep.at_most(f"n={n}: size grows with n", prev, size)
        prev = size
    rep.info["ratios"] = ", ".join(f"{n}:{float(r):.3f}" for n, r in ratios.items())
    return rep


# ---------------------------------------------------------------------------
# seeded suites


def _rat(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def suite_hull(seed: int = DEFAULT_SEED, count: int = 100, **solve_kw) -> list:
    rng = random.Random(seed)
    reports = [check_hull_instance(interval_pair(), [1], MAX, name="hull intervals", **solve_kw)]
    for k in range(count):
        polys = [random_polygon(rng, str(i + 1)) for i in range(rng.randint(1, 3))]
        w = [_rat(rng), _rat(rng)]
        sense = rng.choice((MAX, MIN))
        reports.append(check_hull_instance(polys, w, sense, name=f"hull #{k}", **solve_kw))
    return reports


def _couplings(k: int) -> list:
    """0/1 coupling polytopes on ``k`` weights, some with auxiliary variables."""
    box = [(((i, 1),), (), GE, 0) for i in range(k)] + [(((i, 1),), (), LE, 1) for i in range(k)]
    out = [
        ("simplex", simplex_coupling(k)),
        ("box", ExtensionDesc(k, 0, tuple(box))),
        ("at-most-two", ExtensionDesc(k, 0, tuple(box + [(tuple((i, 1) for i in range(k)), (), LE, 2)]))),
    ]
    # lam_i = mu_i with mu in the simplex: the simplex through auxiliary copies
    aux = [(((i, 1),), ((i, -1),), EQ, 0) for i in range(k)]
    aux += [((), tuple((i, 1) for i in range(k)), EQ, 1)] + [((), ((i, 1),), GE, 0) for i in range(k)]
    out.append(("lifted-simplex", ExtensionDesc(k, k, tuple(aux))))
    return out


def _lifted_polygon(p: ExtensionDesc, label: str) -> ExtensionDesc:
    """The same polygon written through auxiliary copies ``y = x``."""
    rows = [((), tuple(xc), s, rhs) for xc, _, s, rhs in p.rows]
    rows += [(((j, 1),), ((j, -1),), EQ, 0) for j in range(p.dim)]
    return ExtensionDesc(p.dim, p.dim, tuple(rows), p.names, tuple(f"y{j}" for j in range(p.dim)), label)


def unbounded_instances() -> list:
    """``(polys, coupling, w, sense)`` with one subproblem unbounded in ``w``."""
    quadrant = PolyhedronDesc(2, [([1, 0], GE, 0), ([0, 1], GE, 0)], ("x1", "x2"), "q")
    wedge = PolyhedronDesc(2, [([1, 1], LE, 4), ([0, 1], GE, 0)], ("x1", "x2"), "h")
    box = PolyhedronDesc(2, [([1, 0], GE, 0), ([1, 0], LE, 1), ([0, 1], GE, 0), ([0, 1], LE, 1)], ("x1", "x2"), "b")
    ray = ExtensionDesc(2, 1, (((), ((0, 1),), GE, 0), (((0, 1),), ((0, -1),), EQ, 1), (((1, 1),), (), EQ, 2)), ("x1", "x2"), ("t",), "r")
    tri = PolyhedronDesc(2, [([1, 0], GE, 0), ([0, 1], GE, 0), ([1, 1], LE, 2)], ("x1", "x2"), "t")
    out = [
        ([box, quadrant], simplex_coupling(2), [1, 1], MAX),
        ([wedge, box], simplex_coupling(2), [-1, 0], MAX),
        ([tri, ray], dict(_couplings(2))["box"], [1, 0], MAX),
        ([box, tri, quadrant], dict(_couplings(3))["at-most-two"], [0, -1], MIN),
        ([_lifted_polygon(tri, "lt"), wedge], dict(_couplings(2))["lifted-simplex"], [1, 1], MIN),
    ]
    return out


def suite_coupled(seed: int = DEFAULT_SEED, count: int = 50, **solve_kw) -> list:
    rng = random.Random(seed + 1)
    reports = []
    g = triangle123()
    _, _, _, polys, coupling, cost = steiner_parts(g, list(g.nodes))
    reports.append(check_coupled_optimality(polys, coupling, cost, MIN, keep_x=False, report=CheckReport("coupled closure-mst"), **solve_kw))
    for k in range(count):
        n = rng.randint(1, 3)
        polys = [random_polygon(rng, str(i + 1)) for i in range(n)]
        polys = [_lifted_polygon(p, p.label) if rng.random() < 0.3 else p for p in polys]
        name, coupling = rng.choice(_couplings(n))
        w = [_rat(rng), _rat(rng)]
        sense = rng.choice((MAX, MIN))
        rep = CheckReport(f"coupled #{k} {name}")
        reports.append(check_coupled_optimality(polys, coupling, w, sense, keep_x=rng.random() < 0.7, report=rep, **solve_kw))
    for k, (polys, coupling, w, sense) in enumerate(unbounded_instances()):
        rep = CheckReport(f"coupled unbounded #{k}")
        check_coupled_optimality(polys, coupling, w, sense, report=rep, **solve_kw)
        rep.equal("reported unbounded", rep.info.get("status"), "unbounded")
        reports.append(rep)
    return reports


def suite_trees(seed: int = DEFAULT_SEED, count: int = 50, max_n: int = 7, **solve_kw) -> list:
    rng = random.Random(seed + 2)
    return [check_tree_extension(random_connected_graph(rng.randint(2, max_n), rng), **solve_kw) for _ in range(count)]


def suite_steiner(seed: int = DEFAULT_SEED, count: int = 30, max_n: int = 8, **solve_kw) -> list:
    rng = random.Random(seed + 3)
    reports = [check_steiner(star(), ["s1", "s2", "s3"], **solve_kw)]
    for _ in range(count):
        g = random_connected_graph(rng.randint(3, max_n), rng)
        s = sorted(rng.sample(list(g.nodes), rng.randint(2, min(4, len(g.nodes)))), key=g.nodes.index)
        reports.append(check_steiner(g, s, rng.choice((EQ10, EQ11)), **solve_kw))
    reports.append(size_audit("steiner", range(4, 10), seed))
    return reports


def suite_gomory_hu(seed: int = DEFAULT_SEED, count: int = 30, max_n: int = 6, enumerate_limit: int = 5, **solve_kw) -> list:
    rng = random.Random(seed + 4)
    reports = [check_gomory_hu(path_graph_abc(), enumerate_limit, **solve_kw), check_gomory_hu(cycle4(), enumerate_limit, **solve_kw)]
    for _ in range(count):
        g = random_connected_graph(rng.randint(2, max_n), rng)
        reports.append(check_gomory_hu(g, enumerate_limit, **solve_kw))
    return reports


def suite_gh_polytope(seed: int = DEFAULT_SEED, objectives: int = 10, **solve_kw) -> list:
    rng = random.Random(seed + 5)
    reports = [
        check_gh_polytope(path_graph_abc(), objectives, seed, **solve_kw),
        check_gh_polytope(two_paths_symmetric(), objectives, seed + 1, **solve_kw),
        check_gh_polytope(random_connected_graph(4, rng), objectives, seed + 2, **solve_kw),
    ]
    reports.append(size_audit("gh", range(4, 9), seed))
    return reports


def suite_tcut(seed: int = DEFAULT_SEED, count: int = 20, max_n: int = 5, **solve_kw) -> list:
    rng = random.Random(seed + 6)
    reports = [check_tcut(path_graph_abc(), ["a", "c"], **solve_kw), check_tcut(cycle4(), ["a", "b", "c", "d"], **solve_kw)]
    for _ in range(count):
        g = random_connected_graph(rng.randint(2, max_n), rng)
        k = rng.choice([t for t in (2, 4) if t <= len(g.nodes)])
        reports.append(check_tcut(g, sorted(rng.sample(list(g.nodes), k)), **solve_kw))
    return reports


SUITES = {
    "hull": suite_hull,
    "coupled": suite_coupled,
    "trees": suite_trees,
    "steiner": suite_steiner,
    "gomory-hu": suite_gomory_hu,
    "gh-polytope": suite_gh_polytope,
    "tcut": suite_tcut,
}


def run_suites(names: Optional[Iterable[str]] = None, seed: int = DEFAULT_SEED, **solve_kw) -> dict:
    """``{suite name: [CheckReport, ...]}`` in the order of ``SUITES``."""
    chosen = list(SUITES) if names is None else list(names)
    for nm in chosen:
        if nm not in SUITES:
            raise ValueError(f"unknown suite {nm!r}; choose from {', '.join(SUITES)}")
    return {nm: SUITES[nm](seed, **solve_kw) for nm in chosen}
