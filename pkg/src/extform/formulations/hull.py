"""Convex hulls of unions of polyhedra and the coupled two-level systems.

A subproblem is given as an :class:`ExtensionDesc` ``{(x, y) | A x + B y ? b}``
(``?`` per row: >=, = or <=); a plain polyhedron is the special case with no
auxiliary variables.  Coupling one copy ``(x^i, y^i)`` per subproblem with a
weight ``lam_i`` gives the homogenized rows ``A x^i + B y^i - lam_i b ? 0``;
the weights are then constrained by a coupling system ``C lam + D mu ? d``.
With the simplex ``sum lam = 1, lam >= 0`` as coupling this is the classical
hull of the union.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..rat import as_rat
from ..ratlp import EQ, GE, LE, MAX, Model, ModelBuilder, Optimal, Unbounded, Variable, solve
from .handle import BlockRecorder, FormulationHandle


class DescriptionError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionDesc:
    """``{(x, y) in R^dim x R^aux | rows}``.

    Each row is ``(xcoeffs, ycoeffs, sense, rhs)`` with sparse coefficient
    tuples ``((index, value), ...)``.  ``names``/``aux_names`` label the
    coordinates (defaults ``0, 1, ...``).
    """

    dim: int
    aux: int
    rows: tuple
    names: tuple = ()
    aux_names: tuple = ()
    label: str = ""

    def __post_init__(self):
        clean = []
        for k, row in enumerate(self.rows):
            if len(row) != 4:
                raise DescriptionError(f"row {k}: expected (xcoeffs, ycoeffs, sense, rhs)")
            xs, ys, sense, rhs = row
            if sense not in (GE, EQ, LE):
                raise DescriptionError(f"row {k}: bad sense {sense!r}")
            xs = _sparse(xs, self.dim, k, "x")
            ys = _sparse(ys, self.aux, k, "y")
            clean.append((xs, ys, sense, as_rat(rhs)))
        object.__setattr__(self, "rows", tuple(clean))
        if not self.names:
            object.__setattr__(self, "names", tuple(str(j) for j in range(self.dim)))
        if not self.aux_names:
            object.__setattr__(self, "aux_names", tuple(str(j) for j in range(self.aux)))
        if len(self.names) != self.dim or len(self.aux_names) != self.aux:
            raise DescriptionError("coordinate names do not match the dimensions")

    def as_model(self, w: Optional[Sequence] = None, sense: str = MAX) -> Model:
        """The subproblem ``opt w.x over the description`` as a Model."""
        b = ModelBuilder(f"sub{self.label}")
        xs = [b.add_var(f"x[{nm}]", None, None) for nm in self.names]
        ys = [b.add_var(f"y[{nm}]", None, None) for nm in self.aux_names]
        for k, (xc, yc, s, rhs) in enumerate(self.rows):
            b.add_row([(xs[j], a) for j, a in xc] + [(ys[j], a) for j, a in yc], s, rhs, name=f"row{k}")
        if w is not None:
            b.set_objective([(xs[j], as_rat(c)) for j, c in enumerate(w)], sense)
        return b.build()


def PolyhedronDesc(dim: int, rows, names=(), label: str = "") -> ExtensionDesc:
    """``{x | rows}`` with rows ``(coeffs, sense, rhs)``; ``coeffs`` may be a
    dense sequence of length ``dim`` or a sparse mapping."""
    return ExtensionDesc(dim, 0, tuple((c, (), s, r) for c, s, r in rows), tuple(names), (), label)


def _sparse(coeffs, dim: int, k: int, what: str) -> tuple:
    if isinstance(coeffs, dict):
        pairs = coeffs.items()
    elif coeffs and not isinstance(coeffs[0], tuple):
        if len(coeffs) != dim:
            raise DescriptionError(f"row {k}: {what} has {len(coeffs)} coefficients, dimension is {dim}")
        pairs = enumerate(coeffs)
    else:
        pairs = coeffs
    out = {}
    for j, a in pairs:
        if not 0 <= j < dim:
            raise DescriptionError(f"row {k}: {what} index {j} outside dimension {dim}")
        a = as_rat(a)
        if a:
            out[j] = out.get(j, Fraction(0)) + a
    return tuple(sorted(out.items()))


def extension_from_model(model: Model, original: Sequence[int], label: str = "") -> ExtensionDesc:
    """Describe ``model``'s feasible set with ``original`` as the x-coordinates.

    Finite variable bounds become rows; the objective is ignored.
    """
    pos = {j: k for k, j in enumerate(original)}
    if len(pos) != len(original):
        raise DescriptionError("repeated original coordinate")
    rest = [j for j in range(model.num_vars) if j not in pos]
    apos = {j: k for k, j in enumerate(rest)}

    def split(pairs):
        xs = [(pos[j], a) for j, a in pairs if j in pos]
        ys = [(apos[j], a) for j, a in pairs if j in apos]
        return tuple(xs), tuple(ys)

    rows = []
    for c in model.constraints:
        rows.append((*split(c.coeffs), c.sense, c.rhs))
    for j, v in enumerate(model.variables):
        one = split([(j, Fraction(1))])
        if v.lower is not None and v.upper is not None and v.lower == v.upper:
            rows.append((*one, EQ, v.lower))
            continue
        if v.lower is not None:
            rows.append((*one, GE, v.lower))
        if v.upper is not None:
            rows.append((*one, LE, v.upper))
    names = tuple(model.variables[j].name for j in original)
    aux_names = tuple(model.variables[j].name for j in rest)
    return ExtensionDesc(len(original), len(rest), tuple(rows), names, aux_names, label)


def simplex_coupling(k: int) -> ExtensionDesc:
    """``sum lam = 1, lam >= 0`` in ``R^k``."""
    rows = [(tuple((i, 1) for i in range(k)), (), EQ, 1)]
    rows += [(((i, 1),), (), GE, 0) for i in range(k)]
    return ExtensionDesc(k, 0, tuple(rows))


def build_coupled(
    polys: Sequence[ExtensionDesc],
    coupling: ExtensionDesc,
    w: Sequence,
    sense: str = MAX,
    keep_x: bool = True,
    name: str = "coupled",
) -> FormulationHandle:
    """Couple one homogenized copy of each subproblem with the weights ``lam``.

    ``keep_x=True`` adds the aggregate ``x = sum x^i`` and uses ``w.x`` as the
    objective; otherwise the objective is ``w.sum(x^i)`` and ``x`` is omitted.
    Each subproblem is assumed pointed and the coupling's projection a 0/1
    polytope; neither is checked.
    """
    if not polys:
        raise DescriptionError("need at least one subproblem")
    n = polys[0].dim
    for p in polys:
        if p.dim != n:
            raise DescriptionError(f"subproblem dimensions differ: {p.dim} vs {n}")
    if coupling.dim != len(polys):
        raise DescriptionError(f"coupling has {coupling.dim} weights for {len(polys)} subproblems")
    if len(w) != n:
        raise DescriptionError(f"objective has {len(w)} entries, dimension is {n}")
    w = [as_rat(c) for c in w]
    labels = [p.label or str(i) for i, p in enumerate(polys)]
    if len(set(labels)) != len(labels):
        raise DescriptionError("subproblem labels must be distinct")

    b = ModelBuilder(name)
    rec = BlockRecorder(b)
    xv = []
    if keep_x:
        rec.start("x")
        xv = [rec.add(nm, f"x[{nm}]", None, None) for nm in polys[0].names]
    xi, yi = [], []
    for p, lab in zip(polys, labels):
        rec.start(f"x^{lab}")
        xi.append([rec.add(nm, f"x^{lab}[{nm}]", None, None) for nm in p.names])
        rec.start(f"y^{lab}")
        yi.append([rec.add(nm, f"y^{lab}[{nm}]", None, None) for nm in p.aux_names])
    rec.start("lambda")
    lam = [rec.add(lab, f"lambda[{lab}]", None, None) for lab in labels]
    rec.start("mu")
    plain = coupling.aux_names == tuple(str(j) for j in range(coupling.aux))
    mu = [rec.add(nm, f"mu[{nm}]" if plain else nm, None, None) for nm in coupling.aux_names]
    rec.close()

    if keep_x:
        for j in range(n):
            b.add_row([(xv[j], 1)] + [(xs[j], -1) for xs in xi], EQ, 0, name=f"agg[{polys[0].names[j]}]")
    for i, (p, lab) in enumerate(zip(polys, labels)):
        for k, (xc, yc, s, rhs) in enumerate(p.rows):
            row = [(xi[i][j], a) for j, a in xc] + [(yi[i][j], a) for j, a in yc]
            if rhs:
                row.append((lam[i], -rhs))
            if len(row) == 1:
                _tighten(b, row[0][0], row[0][1], s, 0)
            else:
                b.add_row(row, s, 0, name=f"sub[{lab}].{k}")
    for k, (xc, yc, s, rhs) in enumerate(coupling.rows):
        row = [(lam[j], a) for j, a in xc] + [(mu[j], a) for j, a in yc]
        if len(row) == 1:
            _tighten(b, row[0][0], row[0][1], s, rhs)
        else:
            b.add_row(row, s, rhs, name=f"couple.{k}")

    if keep_x:
        obj = [(xv[j], w[j]) for j in range(n) if w[j]]
    else:
        obj = [(xs[j], w[j]) for xs in xi for j in range(n) if w[j]]
    b.set_objective(obj, sense)
    meta = {"labels": labels, "keep_x": keep_x, "dim": n}
    return FormulationHandle(b.build(), rec.blocks, rec.keys, meta)


def _tighten(b: ModelBuilder, j: int, a: Fraction, sense: str, rhs: Fraction) -> None:
    """Apply the one-variable row ``a * x_j ? rhs`` as a bound on ``x_j``."""
    v = b.variables[j]
    val = rhs / a
    if a < 0 and sense != EQ:
        sense = GE if sense == LE else LE
    lo, up = v.lower, v.upper
    if sense in (GE, EQ) and (lo is None or val > lo):
        lo = val
    if sense in (LE, EQ) and (up is None or val < up):
        up = val
    if lo is not None and up is not None and lo > up:
        # keep the contradiction visible to the solver rather than failing here
        b.add_row({j: 1}, GE, lo, name=f"bound[{v.name}]")
        lo = None
    b.variables[j] = Variable(v.name, lo, up)


def build_balas_hull(polys: Sequence[ExtensionDesc], w: Sequence, sense: str = MAX) -> FormulationHandle:
    """Hull of the union of ``polys``: coupled system over the simplex."""
    if not polys:
        raise DescriptionError("need at least one polyhedron")
    return build_coupled(polys, simplex_coupling(len(polys)), w, sense, keep_x=True, name="hull")


def two_phase(polys: Sequence[ExtensionDesc], coupling: ExtensionDesc, w: Sequence, sense: str = MAX, record=None, **solve_kw):
    """Solve every subproblem, then optimize the subproblem values over the
    coupling.  Returns ``(status, value, sub_outcomes, coupling_outcome)``
    where ``status`` is ``'optimal'``, ``'unbounded'`` or another outcome
    status of the first failing stage.  ``record(model, outcome)`` sees
    every solve."""
    subs = []
    wbar = []
    for p in polys:
        m = p.as_model(w, sense)
        o = solve(m, **solve_kw)
        if record:
            record(m, o)
        subs.append(o)
        if isinstance(o, Unbounded):
            return "unbounded", None, subs, None
        if not isinstance(o, Optimal):
            return o.status, None, subs, None
        wbar.append(o.objective)
    cm = ExtensionDesc(coupling.dim, coupling.aux, coupling.rows, coupling.names, coupling.aux_names).as_model(wbar, sense)
    co = solve(cm, **solve_kw)
    if record:
        record(cm, co)
    if not isinstance(co, Optimal):
        return co.status, None, subs, co
    return "optimal", co.objective, subs, co
