"""Reading combinatorial objects back out of LP solutions."""

from __future__ import annotations

from fractions import Fraction

from ..graphs import Cut, GraphError, Tree, fundamental_cut
from ..ratlp import EQ, MIN, ModelBuilder, Optimal, SolveOutcome, solve
from .handle import FormulationHandle


class ExtractionError(ValueError):
    """The solution does not encode the expected object."""


class NonVertexError(ExtractionError):
    """A block that is integral at every vertex came out fractional."""


def lex_weights(count: int) -> list:
    """``1, 2, 4, ...``: distinct 0/1 vectors get distinct weighted sums."""
    return [Fraction(2) ** j for j in range(count)]


def solve_integral(
    h: FormulationHandle,
    symbol: str = "lambda",
    outcome: SolveOutcome = None,
    record=None,
    **solve_kw,
) -> SolveOutcome:
    """Solve ``h`` and, if ``symbol``'s block is fractional, re-solve over the
    optimal face with the objective ``sum 2^j * block_j``.

    The second stage has a unique optimum on the block whenever the face's
    projection is a 0/1 polytope.  ``record(model, outcome)`` is called for
    every solve performed here.
    """
    if outcome is None:
        o = solve(h.model, **solve_kw)
        if record:
            record(h.model, o)
    else:
        o = outcome
    if not isinstance(o, Optimal):
        return o
    rng = h.block(symbol)
    if all(o.primal[j].denominator == 1 for j in rng):
        return o
    b = ModelBuilder.from_model(h.model)
    b.add_row(list(h.model.objective), EQ, o.objective, name="stage1.opt")
    b.set_objective(list(zip(rng, lex_weights(len(rng)))), MIN)
    stage2 = b.build()
    o2 = solve(stage2, **solve_kw)
    if record:
        record(stage2, o2)
    if not isinstance(o2, Optimal):
        raise ExtractionError(f"second stage is {o2.status}")
    # report the first-stage objective so callers see the original problem
    return Optimal(o2.primal, None, o.objective, o2.basis, None, o.iterations + o2.iterations)


def extract_tree(h: FormulationHandle, sol) -> Tree:
    """Edges with ``lambda_e = 1``; fractional entries raise NonVertexError."""
    lam = h.values(sol, "lambda")
    frac = {e: v for e, v in lam.items() if v not in (0, 1)}
    if frac:
        shown = ", ".join(f"{e[0]}{e[1]}={v}" for e, v in sorted(frac.items())[:4])
        raise NonVertexError(f"lambda is not integral ({shown}); the solution is not a vertex")
    nodes = h.meta.get("nodes") or list(h.meta["graph"].nodes)
    try:
        return Tree(nodes, [e for e, v in lam.items() if v == 1])
    except GraphError as exc:
        raise ExtractionError(f"lambda does not encode a spanning tree: {exc}") from None


def _shore(h: FormulationHandle, sol, f) -> frozenset:
    t = h.meta["endpoints"][f]
    mu = h.values(sol, "mu")
    vals = {v: mu[(f, t, v)] for v in h.meta["nodes"]}
    if any(x not in (0, 1) for x in vals.values()):
        raise NonVertexError(f"mu for {f} is not integral")
    return frozenset(v for v, x in vals.items() if x == 1)


def _cut_vector_matches(h: FormulationHandle, sol, f, cut: Cut) -> bool:
    g = h.meta["graph"]
    xs = h.values(sol, "x")
    crossing = set(cut.edges)
    for e in g.edges:
        val = xs[(f, e)]
        want = 1 if e in crossing else 0
        if g.cap[e] == 0:
            # cost-free edges may carry any value at an optimum
            if val < want:
                return False
        elif val != want:
            return False
    return True


def extract_fundamental_cuts(h: FormulationHandle, sol) -> dict:
    """Tree edge -> Cut read from the solution, checked against the oracle.

    The cut's shore is the component indicator ``mu[f|t_f|.]``; the cut
    vector ``x^f`` must be its characteristic vector (on edges with positive
    capacity), and non-tree ``f`` must have ``x^f = 0`` there.
    """
    g = h.meta["graph"]
    tree = extract_tree(h, sol)
    out = {}
    xs = h.values(sol, "x")
    for f in h.meta["edges"]:
        if f in tree:
            shore = _shore(h, sol, f)
            if not shore or len(shore) == len(g.nodes):
                raise ExtractionError(f"component for {f} is empty or everything")
            cut = Cut(g, shore)
            oracle = fundamental_cut(tree, f, g)
            if cut != oracle:
                raise ExtractionError(f"cut for {f} has shore {sorted(shore)}, expected {sorted(oracle.shore)}")
            if not _cut_vector_matches(h, sol, f, cut):
                raise ExtractionError(f"x^{f} is not the characteristic vector of its fundamental cut")
            out[f] = cut
        else:
            if any(xs[(f, e)] != 0 for e in g.edges if g.cap[e]):
                raise ExtractionError(f"non-tree edge {f} has a nonzero cut vector")
    return out


def extract_tcut(h: FormulationHandle, sol) -> Cut:
    """The cut selected by the unique ``theta_f = 1``, read from ``y^f``."""
    g = h.meta["graph"]
    theta = h.values(sol, "theta")
    chosen = [f for f, v in theta.items() if v == 1]
    if len(chosen) != 1 or any(v not in (0, 1) for v in theta.values()):
        raise NonVertexError(f"theta is not a unit vector: {sorted((f, v) for f, v in theta.items() if v)}")
    f = chosen[0]
    y = h.values(sol, "y")
    pos = [e for e in g.edges if g.cap[e]]
    if any(y[(f, e)] not in (0, 1) for e in pos):
        raise NonVertexError(f"y^{f} is not integral")
    for other in h.meta["edges"]:
        if other != f and any(y[(other, e)] != 0 for e in pos):
            raise ExtractionError(f"unselected y^{other} is nonzero")
    shore = _shore(h, sol, f)
    cut = Cut(g, shore)
    crossing = set(cut.edges)
    for e in pos:
        if (y[(f, e)] == 1) != (e in crossing):
            raise ExtractionError(f"y^{f} does not match the cut of its tree edge")
    return cut
