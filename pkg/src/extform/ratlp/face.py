"""Primal-dual systems whose feasible points are exactly the optimal pairs."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .model import EQ, LE, MIN, Model, ModelBuilder, normalize
from .simplex import Optimal, SolveOutcome, solve


class FaceSystemError(ValueError):
    """The source LP has no optimal solution (infeasible, unbounded or aborted)."""


def build_optimal_face_system(
    model: Model,
    outcome: Optional[SolveOutcome] = None,
    prefix: str = "dual",
    assume_optimal: bool = False,
    **solve_kw,
) -> Model:
    """Return the model over ``(x, y)`` with rows

    ``A x >= b``, ``y^T A = cost``, ``cost.x - y.b = 0``, ``y >= 0`` on
    inequality rows, where ``(A, b, cost)`` is the normal form of ``model``.

    The ``x`` block keeps the source variables (same order, names and bounds)
    and bound rows are not materialized: each finite bound gets a
    nonnegative multiplier column instead.  The objective is zero.
    ``outcome`` may be passed to skip the precondition solve;
    ``assume_optimal=True`` skips it without one (the caller vouches that an
    optimum exists, e.g. when only the system's size is of interest).
    """
    if outcome is None and not assume_optimal:
        outcome = solve(model, **solve_kw)
    if not assume_optimal and not isinstance(outcome, Optimal):
        raise FaceSystemError(f"source LP is {outcome.status}, not optimal")

    normal = normalize(model)
    b = ModelBuilder.from_model(model)
    b.name = f"face({model.name})"
    b.objective = ()
    b.sense = MIN
    n = model.num_vars

    # dual column per normal-form row; rows and bounds in source order
    dual_cols: list[list] = [[] for _ in range(n)]
    gap: list = [(j, c) for j, c in enumerate(normal.cost) if c]
    for i, c in enumerate(model.constraints):
        name = f"{prefix}[{i}]"
        if name in b:
            raise FaceSystemError(f"name clash on {name!r}; choose another prefix")
        lower = None if c.sense == EQ else 0
        k = b.add_var(name, lower, None)
        sign = -1 if c.sense == LE else 1
        for j, a in c.coeffs:
            dual_cols[j].append((k, sign * a))
        rhs = sign * c.rhs
        if rhs:
            gap.append((k, -rhs))
    for j, v in enumerate(model.variables):
        if v.lower is not None:
            k = b.add_var(f"{prefix}.lb[{v.name}]", 0, None)
            dual_cols[j].append((k, Fraction(1)))
            if v.lower:
                gap.append((k, -v.lower))
        if v.upper is not None:
            k = b.add_var(f"{prefix}.ub[{v.name}]", 0, None)
            dual_cols[j].append((k, Fraction(-1)))
            if v.upper:
                gap.append((k, v.upper))
    for j, v in enumerate(model.variables):
        b.add_row(dual_cols[j], EQ, normal.cost[j], name=f"{prefix}.col[{v.name}]")
    b.add_row(gap, EQ, 0, name=f"{prefix}.gap")
    return b.build()
