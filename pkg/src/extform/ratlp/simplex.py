"""Exact bounded-variable revised simplex.

The computational form of a model with ``m`` rows is ``A x - s = 0`` where the
logical ``s_i`` carries the row's bounds (``[b, inf)`` for ``>=``, ``(-inf, b]``
for ``<=`` and ``[b, b]`` for ``=``).  The initial basis is all logicals; phase
one minimizes the sum of bound violations of the basic variables, phase two
the objective.  The basis inverse is kept as a sparse Markowitz LU followed by
product-form eta updates, all in gmpy2 ``mpq`` arithmetic.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple, Union

from gmpy2 import mpq

from .model import LE, EQ, LOWER, MIN, ROW, UPPER, Model, NormalForm, normalize

log = logging.getLogger(__name__)

ZERO = mpq(0)
ONE = mpq(1)

BLAND = "bland"
DANTZIG = "dantzig"
RULES = (BLAND, DANTZIG)

DEFAULT_PIVOT_CAP = 1_000_000


def _q(f: Fraction) -> mpq:
    return mpq(f.numerator, f.denominator)


def _f(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class SingularBasis(ArithmeticError):
    pass


class _LU:
    """Sparse LU of a square basis, Markowitz pivot order.

    ``columns[pos]`` is a dict ``row -> value``.  Exact arithmetic means any
    nonzero pivot is acceptable, so the choice only controls fill-in.
    """

    __slots__ = ("steps", "m")

    def __init__(self, m: int, columns: Sequence[dict]):
        self.m = m
        rows: list[dict] = [dict() for _ in range(m)]
        cols: list[set] = [set() for _ in range(m)]
        for pos, col in enumerate(columns):
            for r, v in col.items():
                rows[r][pos] = v
                cols[pos].add(r)
        done = [False] * m
        heap = [(len(cols[c]), c) for c in range(m)]
        heapq.heapify(heap)
        steps = []
        for _ in range(m):
            while True:
                if not heap:
                    raise SingularBasis("basis matrix is singular")
                cnt, c = heapq.heappop(heap)
                if not done[c] and cnt == len(cols[c]):
                    break
            if cnt == 0:
                raise SingularBasis("basis matrix is singular")
            r = min(cols[c], key=lambda i: (len(rows[i]), i))
            urow = rows[r]
            piv = urow[c]
            for j in urow:
                cols[j].discard(r)
            others = [(j, v) for j, v in urow.items() if j != c]
            lmults = []
            for i in cols[c]:
                ri = rows[i]
                l = ri.pop(c) / piv
                lmults.append((i, l))
                for j, v in others:
                    nv = ri.get(j, ZERO) - l * v
                    if nv:
                        if j not in ri:
                            cols[j].add(i)
                            heapq.heappush(heap, (len(cols[j]), j))
                        ri[j] = nv
                    elif j in ri:
                        del ri[j]
                        cols[j].discard(i)
                        heapq.heappush(heap, (len(cols[j]), j))
            for j, _ in others:
                heapq.heappush(heap, (len(cols[j]), j))
            cols[c] = set()
            done[c] = True
            rows[r] = {}
            steps.append((r, c, piv, others, lmults))
        self.steps = steps

    def ftran(self, b: dict) -> dict:
        """Solve ``B x = b``; ``b`` indexed by row, result by basis position."""
        work = dict(b)
        for r, _, _, _, lmults in self.steps:
            br = work.get(r)
            if br and lmults:
                for i, l in lmults:
                    work[i] = work.get(i, ZERO) - l * br
        x = {}
        for r, c, piv, others, _ in reversed(self.steps):
            v = work.get(r, ZERO)
            for j, u in others:
                xj = x.get(j)
                if xj:
                    v -= u * xj
            if v:
                x[c] = v / piv
        return x

    def btran(self, cvec: dict) -> dict:
        """Solve ``y^T B = c^T``; ``c`` indexed by position, result by row."""
        work = dict(cvec)
        z = {}
        for r, c, piv, others, _ in self.steps:
            v = work.get(c)
            if v:
                zr = v / piv
                z[r] = zr
                for j, u in others:
                    work[j] = work.get(j, ZERO) - zr * u
        for r, _, _, _, lmults in reversed(self.steps):
            if lmults:
                s = ZERO
                for i, l in lmults:
                    zi = z.get(i)
                    if zi:
                        s += zi * l
                if s:
                    z[r] = z.get(r, ZERO) - s
        return {r: v for r, v in z.items() if v}


class _Basis:
    """LU factor plus a product-form eta file."""

    def __init__(self, m: int, columns: Sequence[dict]):
        self.lu = _LU(m, columns)
        self.etas: list = []

    def ftran(self, b: dict) -> dict:
        x = self.lu.ftran(b)
        for p, d, dp in self.etas:
            xp = x.get(p)
            if xp:
                xp = xp / dp
                for i, di in d.items():
                    if i != p:
                        nv = x.get(i, ZERO) - di * xp
                        if nv:
                            x[i] = nv
                        else:
                            x.pop(i, None)
                x[p] = xp
        return x

    def btran(self, cvec: dict) -> dict:
        c = dict(cvec)
        for p, d, dp in reversed(self.etas):
            s = c.get(p, ZERO)
            for i, di in d.items():
                if i != p:
                    ci = c.get(i)
                    if ci:
                        s -= ci * di
            s = s / dp
            if s:
                c[p] = s
            else:
                c.pop(p, None)
        return self.lu.btran(c)

    def update(self, p: int, d: dict) -> None:
        self.etas.append((p, d, d[p]))


# --- outcomes ---------------------------------------------------------------


@dataclass(frozen=True)
class Optimal:
    """Basic optimal solution with exact duals.

    ``dual`` is indexed like ``normal.rows`` and satisfies
    ``dual^T A = cost`` with ``dual >= 0`` on inequality rows.
    """

    primal: Tuple[Fraction, ...]
    dual: Tuple[Fraction, ...]
    objective: Fraction
    basis: Tuple[str, ...]
    normal: NormalForm = field(repr=False)
    iterations: int = 0
    status: str = "optimal"

    def value(self, name: str) -> Fraction:
        return self.primal[self.normal.source.var_index(name)]

    def primal_by_name(self) -> dict:
        return {v.name: x for v, x in zip(self.normal.source.variables, self.primal)}


@dataclass(frozen=True)
class Infeasible:
    """``farkas`` is indexed like ``normal.rows``: ``farkas^T A = 0`` and
    ``farkas . rhs > 0`` with ``farkas >= 0`` on inequality rows."""

    farkas: Tuple[Fraction, ...]
    normal: NormalForm = field(repr=False)
    iterations: int = 0
    status: str = "infeasible"


@dataclass(frozen=True)
class Unbounded:
    """``ray`` is a direction of the normal form (``A r >= 0``, ``= 0`` on
    equality rows) with ``cost . r < 0``; ``point`` is a feasible point."""

    ray: Tuple[Fraction, ...]
    point: Tuple[Fraction, ...]
    normal: NormalForm = field(repr=False)
    iterations: int = 0
    status: str = "unbounded"


@dataclass(frozen=True)
class Aborted:
    """The pivot cap was hit; nothing is claimed about the model."""

    iterations: int
    phase: int
    status: str = "aborted"


SolveOutcome = Union[Optimal, Infeasible, Unbounded, Aborted]


# --- the solver ---------------------------------------------------------------


class _Simplex:
    def __init__(self, model: Model, rule: str, pivot_cap: int, refactor_every: int, stall_limit: int):
        if rule not in RULES:
            raise ValueError(f"unknown pivot rule {rule!r}")
        self.model = model
        self.rule = rule
        self.pivot_cap = pivot_cap
        self.refactor_every = refactor_every
        self.stall_limit = stall_limit
        n, m = model.num_vars, model.num_rows
        self.n, self.m = n, m
        self.rows = [[(j, _q(a)) for j, a in c.coeffs] for c in model.constraints]
        cols: list[list] = [[] for _ in range(n)]
        for i, row in enumerate(self.rows):
            for j, a in row:
                cols[j].append((i, a))
        self.cols = cols
        lower: list = []
        upper: list = []
        for v in model.variables:
            lower.append(None if v.lower is None else _q(v.lower))
            upper.append(None if v.upper is None else _q(v.upper))
        for c in model.constraints:
            b = _q(c.rhs)
            if c.sense == LE:
                lower.append(None)
                upper.append(b)
            elif c.sense == EQ:
                lower.append(b)
                upper.append(b)
            else:
                lower.append(b)
                upper.append(None)
        self.lower, self.upper = lower, upper
        sign = 1 if model.sense == MIN else -1
        cost = [ZERO] * (n + m)
        for j, a in model.objective:
            cost[j] = sign * _q(a)
        self.cost = cost
        self.sign = sign

        x = [ZERO] * (n + m)
        for j in range(n):
            if lower[j] is not None:
                x[j] = lower[j]
            elif upper[j] is not None:
                x[j] = upper[j]
        for i, row in enumerate(self.rows):
            s = ZERO
            for j, a in row:
                if x[j]:
                    s += a * x[j]
            x[n + i] = s
        self.x = x
        self.head = [n + i for i in range(m)]
        self.pos_of = [-1] * n + list(range(m))
        self.iterations = 0
        self._refactor()

    # column of [A | -I]
    def _column(self, j: int) -> dict:
        if j < self.n:
            return {i: a for i, a in self.cols[j]}
        return {j - self.n: -ONE}

    def _refactor(self) -> None:
        self.basis = _Basis(self.m, [self._column(j) for j in self.head])

    def _infeasibility_costs(self) -> dict:
        costs = {}
        x, lower, upper = self.x, self.lower, self.upper
        for p, j in enumerate(self.head):
            lj, uj = lower[j], upper[j]
            if lj is not None and x[j] < lj:
                costs[p] = -ONE
            elif uj is not None and x[j] > uj:
                costs[p] = ONE
        return costs

    def _reduced_costs(self, y: dict, phase: int) -> dict:
        """Reduced costs of the nonbasic variables that can be nonzero."""
        n = self.n
        acc: dict = {}
        rows = self.rows
        for i, yi in y.items():
            for j, a in rows[i]:
                acc[j] = acc.get(j, ZERO) + yi * a
        pos_of = self.pos_of
        d = {}
        if phase == 2:
            cost = self.cost
            for j in range(n):
                if pos_of[j] < 0:
                    v = cost[j] - acc.get(j, ZERO)
                    if v:
                        d[j] = v
        else:
            for j, v in acc.items():
                if pos_of[j] < 0 and v:
                    d[j] = -v
        for i, yi in y.items():
            if pos_of[n + i] < 0:
                # logical column is -e_i
                d[n + i] = (self.cost[n + i] if phase == 2 else ZERO) + yi
        return d

    def _choose_entering(self, d: dict, bland: bool):
        x, lower, upper = self.x, self.lower, self.upper
        best = None
        best_score = None
        for j in sorted(d) if bland else d:
            dj = d[j]
            lj, uj = lower[j], upper[j]
            if dj < 0:
                if uj is not None and x[j] >= uj:
                    continue
                direction = 1
            else:
                if lj is not None and x[j] <= lj:
                    continue
                direction = -1
            if bland:
                return j, direction
            score = abs(dj)
            if best_score is None or score > best_score or (score == best_score and j < best[0]):
                best_score = score
                best = (j, direction)
        return best

    def _pivot_row(self, p: int) -> tuple:
        """Row ``p`` of ``B^-1 [A | -I]`` as ``(rho, structural part)``."""
        rho = self.basis.btran({p: ONE})
        acc: dict = {}
        rows = self.rows
        for i, ri in rho.items():
            for j, a in rows[i]:
                acc[j] = acc.get(j, ZERO) + ri * a
        return rho, acc

    def _update_pricing(self, d: dict, q: int, leaving: int, rho: dict, acc: dict, arq) -> None:
        """Reduced costs after the pivot that brings ``q`` in for ``leaving``."""
        n, pos_of = self.n, self.pos_of
        theta = d.pop(q, ZERO) / arq
        if not theta:
            d.pop(leaving, None)
            return
        for j, a in acc.items():
            if pos_of[j] >= 0 or j == q:
                continue
            nv = d.get(j, ZERO) - theta * a
            if nv:
                d[j] = nv
            else:
                d.pop(j, None)
        for i, ri in rho.items():
            j = n + i
            if pos_of[j] >= 0 or j == q:
                continue
            # logical column is -e_i
            nv = d.get(j, ZERO) + theta * ri
            if nv:
                d[j] = nv
            else:
                d.pop(j, None)
        d[leaving] = -theta

    def _ratio_test(self, q: int, direction: int, alpha: dict, phase: int):
        x, lower, upper, head = self.x, self.lower, self.upper, self.head
        best_t = None
        best = None  # (var index, position or -1 for a bound flip, bound value)
        if lower[q] is not None and upper[q] is not None:
            best_t = upper[q] - lower[q]
            best = (q, -1, upper[q] if direction > 0 else lower[q])
        for p, a in alpha.items():
            j = head[p]
            rate = -a if direction > 0 else a
            xj, lj, uj = x[j], lower[j], upper[j]
            if rate > 0:
                if phase == 1 and lj is not None and xj < lj:
                    bound = lj
                elif uj is not None and not (phase == 1 and xj > uj):
                    bound = uj
                else:
                    continue
                t = (bound - xj) / rate
            else:
                if phase == 1 and uj is not None and xj > uj:
                    bound = uj
                elif lj is not None and not (phase == 1 and xj < lj):
                    bound = lj
                else:
                    continue
                t = (xj - bound) / (-rate)
            if best_t is None or t < best_t or (t == best_t and j < best[0]):
                best_t = t
                best = (j, p, bound)
        return best_t, best

    def _step(self, q: int, direction: int, alpha: dict, t, leave) -> bool:
        """Move along the edge and pivot; True if the basis factor was rebuilt."""
        x, head = self.x, self.head
        if t:
            dt = t if direction > 0 else -t
            x[q] += dt
            for p, a in alpha.items():
                x[head[p]] -= dt * a
        j, p, bound = leave
        x[j] = bound
        if p < 0:
            return False
        head[p] = q
        self.pos_of[q] = p
        self.pos_of[j] = -1
        self.basis.update(p, alpha)
        if len(self.basis.etas) >= self.refactor_every:
            self._refactor()
            return True
        return False

    def _phase_costs(self, phase: int) -> dict:
        if phase == 1:
            return self._infeasibility_costs()
        cost = self.cost
        return {p: cost[j] for p, j in enumerate(self.head) if cost[j]}

    def _run_phase(self, phase: int):
        """Iterate until optimal for the phase objective.

        Returns ``None`` on optimality, ``("unbounded", q, direction, alpha)``
        or ``("aborted",)``.  Reduced costs are recomputed from scratch when
        the phase-one cost vector changes or the factor is rebuilt, and
        updated from the pivot row otherwise.
        """
        bland = self.rule == BLAND
        stalled = 0
        cB = self._phase_costs(phase)
        if phase == 1 and not cB:
            return None
        d = self._reduced_costs(self.basis.btran(cB), phase)
        while True:
            use_bland = bland or stalled >= self.stall_limit
            choice = self._choose_entering(d, use_bland)
            if choice is None:
                return None
            if self.iterations >= self.pivot_cap:
                return ("aborted",)
            self.iterations += 1
            q, direction = choice
            alpha = self.basis.ftran(self._column(q))
            t, leave = self._ratio_test(q, direction, alpha, phase)
            if leave is None:
                if phase == 1:
                    raise ArithmeticError("phase one cannot be unbounded")
                return ("unbounded", q, direction, alpha)
            if t:
                stalled = 0
            else:
                stalled += 1
            p = leave[1]
            pivot = None
            if p >= 0:
                pivot = self._pivot_row(p)
            leaving = leave[0]
            refactored = self._step(q, direction, alpha, t, leave)
            if phase == 1:
                new_cB = self._infeasibility_costs()
                if not new_cB:
                    return None
                if new_cB != cB:
                    # positions are stable across a pivot, but the cost of the
                    # entering variable's position may change as well
                    cB = new_cB
                    d = self._reduced_costs(self.basis.btran(cB), phase)
                    continue
            if p < 0:
                continue
            if refactored:
                cB = self._phase_costs(phase)
                d = self._reduced_costs(self.basis.btran(cB), phase)
                continue
            rho, acc = pivot
            self._update_pricing(d, q, leaving, rho, acc, alpha[p])

    def _push_free_nonbasics(self) -> None:
        """Move free nonbasic variables into the basis without changing cost.

        Called at an optimum where their reduced costs vanish; afterwards every
        nonbasic variable sits at a bound unless it spans a line.
        """
        for q in range(self.n):
            if self.pos_of[q] >= 0 or self.lower[q] is not None or self.upper[q] is not None:
                continue
            alpha = self.basis.ftran(self._column(q))
            for direction in (1, -1):
                t, leave = self._ratio_test(q, direction, alpha, 2)
                if leave is not None:
                    self._step(q, direction, alpha, t, leave)
                    break

    # --- certificates -------------------------------------------------------

    def _duals(self, normal: NormalForm) -> tuple:
        cost = self.cost
        y = self.basis.btran({p: cost[j] for p, j in enumerate(self.head) if cost[j]})
        d = self._reduced_costs(y, 2)
        dual = [Fraction(0)] * len(normal.rows)
        row_of = normal.row_of
        for i, c in enumerate(self.model.constraints):
            yi = y.get(i, ZERO)
            if c.sense == LE:
                dual[row_of[(ROW, i, -1)]] = _f(-yi)
            else:
                dual[row_of[(ROW, i, 1)]] = _f(yi)
        for j, dj in d.items():
            if j >= self.n:
                continue
            if dj > 0:
                dual[row_of[(LOWER, j)]] = _f(dj)
            elif dj < 0:
                dual[row_of[(UPPER, j)]] = _f(-dj)
        return tuple(dual)

    def _farkas(self, normal: NormalForm) -> tuple:
        cB = self._infeasibility_costs()
        y = self.basis.btran(cB)
        # w = y^T [A | -I]; structural part via rows
        w: dict = {}
        for i, yi in y.items():
            for j, a in self.rows[i]:
                w[j] = w.get(j, ZERO) + yi * a
        cert = [Fraction(0)] * len(normal.rows)
        row_of = normal.row_of
        for i, c in enumerate(self.model.constraints):
            yi = y.get(i, ZERO)
            if c.sense == LE:
                cert[row_of[(ROW, i, -1)]] = _f(-yi)
            else:
                cert[row_of[(ROW, i, 1)]] = _f(yi)
        # bound rows weighted by -w cancel A^T y exactly
        for j, wj in w.items():
            if wj < 0:
                cert[row_of[(LOWER, j)]] = _f(-wj)
            elif wj > 0:
                cert[row_of[(UPPER, j)]] = _f(wj)
        return tuple(cert)

    def _basis_labels(self) -> tuple:
        names = []
        for j in self.head:
            if j < self.n:
                names.append(self.model.variables[j].name)
            else:
                names.append("slack:" + self.model.constraints[j - self.n].name)
        return tuple(names)

    def run(self) -> SolveOutcome:
        normal = normalize(self.model)
        res = self._run_phase(1)
        if res is not None:
            return Aborted(self.iterations, 1)
        if self._infeasibility_costs():
            return Infeasible(self._farkas(normal), normal, self.iterations)
        res = self._run_phase(2)
        if res is not None:
            if res[0] == "aborted":
                return Aborted(self.iterations, 2)
            _, q, direction, alpha = res
            ray = [ZERO] * (self.n + self.m)
            ray[q] = mpq(direction)
            for p, a in alpha.items():
                ray[self.head[p]] = -direction * a
            return Unbounded(
                tuple(_f(v) for v in ray[: self.n]),
                tuple(_f(v) for v in self.x[: self.n]),
                normal,
                self.iterations,
            )
        self._push_free_nonbasics()
        primal = tuple(_f(v) for v in self.x[: self.n])
        obj = self.model.objective_value(primal)
        return Optimal(primal, self._duals(normal), obj, self._basis_labels(), normal, self.iterations)


def solve(
    model: Model,
    rule: str = DANTZIG,
    pivot_cap: int = DEFAULT_PIVOT_CAP,
    refactor_every: int = 40,
    stall_limit: int = 1000,
) -> SolveOutcome:
    """Solve ``model`` exactly.

    ``rule='bland'`` uses Bland's smallest-index rule throughout.  The default
    ``'dantzig'`` picks the largest reduced cost and switches to Bland's rule
    after ``stall_limit`` consecutive degenerate pivots, until the next
    nondegenerate one; this keeps the termination guarantee.  More than
    ``pivot_cap`` pivots yields :class:`Aborted`.
    """
    if rule not in RULES:
        raise ValueError(f"unknown pivot rule {rule!r}; choose from {RULES}")
    if pivot_cap < 0 or refactor_every < 1 or stall_limit < 1:
        raise ValueError("pivot_cap must be >= 0, refactor_every and stall_limit >= 1")
    if model.num_rows == 0:
        return _solve_box(model)
    return _Simplex(model, rule, pivot_cap, refactor_every, stall_limit).run()


def _solve_box(model: Model) -> SolveOutcome:
    """Models without rows: each variable is optimized over its own interval."""
    normal = normalize(model)
    cost = normal.cost
    x = []
    for j, v in enumerate(model.variables):
        if cost[j] > 0:
            x.append(v.lower)
        elif cost[j] < 0:
            x.append(v.upper)
        else:
            x.append(v.lower if v.lower is not None else (v.upper if v.upper is not None else Fraction(0)))
    point = []
    for xv, v in zip(x, model.variables):
        if xv is None:
            xv = v.lower if v.lower is not None else (v.upper if v.upper is not None else Fraction(0))
        point.append(xv)
    for j, xv in enumerate(x):
        if xv is None:
            ray = [Fraction(0)] * model.num_vars
            ray[j] = Fraction(-1) if cost[j] > 0 else Fraction(1)
            return Unbounded(tuple(ray), tuple(point), normal, 0)
    dual = [Fraction(0)] * len(normal.rows)
    for j, cj in enumerate(cost):
        if cj > 0:
            dual[normal.row_of[(LOWER, j)]] = cj
        elif cj < 0:
            dual[normal.row_of[(UPPER, j)]] = -cj
    primal = tuple(point)
    return Optimal(primal, tuple(dual), model.objective_value(primal), (), normal, 0)
