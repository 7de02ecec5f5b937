"""Re-check solver outcomes against the normal form with plain Fractions.

Nothing here touches solver internals; a bug in the simplex shows up as a
nonempty list of problems.
"""

from __future__ import annotations

from fractions import Fraction

from .model import Model, NormalForm, normalize
from .simplex import Aborted, Infeasible, Optimal, SolveOutcome, Unbounded


def _transpose_product(normal: NormalForm, u) -> list[Fraction]:
    acc = [Fraction(0)] * normal.num_vars
    for k, row in enumerate(normal.rows):
        uk = u[k]
        if uk:
            for j, a in row.coeffs:
                acc[j] += uk * a
    return acc


def certificate_problems(model: Model, outcome: SolveOutcome) -> list[str]:
    """Return human-readable failures; empty means the outcome is certified."""
    if isinstance(outcome, Aborted):
        return []
    normal = normalize(model)
    rows = normal.rows
    problems: list[str] = []

    if isinstance(outcome, Optimal):
        x = outcome.primal
        act = normal.row_matrix_product(x)
        for k, row in enumerate(rows):
            slack = act[k] - row.rhs
            if row.equality and slack != 0 or not row.equality and slack < 0:
                problems.append(f"primal row {row.origin} violated by {slack}")
        if model.objective_value(x) != outcome.objective:
            problems.append("reported objective differs from recomputed objective")
        y = outcome.dual
        if len(y) != len(rows):
            return problems + ["dual has wrong length"]
        for k, row in enumerate(rows):
            if not row.equality and y[k] < 0:
                problems.append(f"negative dual on inequality {row.origin}")
        aty = _transpose_product(normal, y)
        for j, (lhs, cj) in enumerate(zip(aty, normal.cost)):
            if lhs != cj:
                problems.append(f"dual constraint for column {j}: {lhs} != {cj}")
        primal_obj = sum((c * xj for c, xj in zip(normal.cost, x)), Fraction(0))
        dual_obj = sum((yk * r.rhs for yk, r in zip(y, rows)), Fraction(0))
        if primal_obj != dual_obj:
            problems.append(f"duality gap {primal_obj} vs {dual_obj}")
        for k, row in enumerate(rows):
            if y[k] and act[k] != row.rhs:
                problems.append(f"complementary slackness fails on {row.origin}")
    elif isinstance(outcome, Unbounded):
        r = outcome.ray
        ar = normal.row_matrix_product(r)
        for k, row in enumerate(rows):
            if row.equality and ar[k] != 0 or not row.equality and ar[k] < 0:
                problems.append(f"ray leaves row {row.origin}")
        if sum((c * rj for c, rj in zip(normal.cost, r)), Fraction(0)) >= 0:
            problems.append("ray does not improve the objective")
        if not model.is_feasible(outcome.point):
            problems.append("unbounded outcome carries an infeasible point")
    elif isinstance(outcome, Infeasible):
        u = outcome.farkas
        for k, row in enumerate(rows):
            if not row.equality and u[k] < 0:
                problems.append(f"negative Farkas multiplier on {row.origin}")
        if any(_transpose_product(normal, u)):
            problems.append("Farkas combination is not the zero row")
        if sum((uk * r.rhs for uk, r in zip(u, rows)), Fraction(0)) <= 0:
            problems.append("Farkas combination has nonpositive right-hand side")
    return problems


def is_certified(model: Model, outcome: SolveOutcome) -> bool:
    return not certificate_problems(model, outcome)
