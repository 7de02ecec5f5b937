"""Sparse LP models with exact rational data, and their normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from ..rat import RatLike, as_rat

GE, EQ, LE = ">=", "=", "<="
SENSES = (GE, EQ, LE)
MIN, MAX = "min", "max"

Coeffs = Tuple[Tuple[int, Fraction], ...]


class ModelError(ValueError):
    """Raised for malformed models (duplicate names, unknown variables, ...)."""


@dataclass(frozen=True)
class Variable:
    name: str
    lower: Optional[Fraction] = Fraction(0)
    upper: Optional[Fraction] = None

    @property
    def is_free(self) -> bool:
        return self.lower is None and self.upper is None


@dataclass(frozen=True)
class Constraint:
    coeffs: Coeffs
    sense: str
    rhs: Fraction
    name: str

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * x[j] for j, a in self.coeffs), Fraction(0))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        act = self.activity(x)
        if self.sense == GE:
            return act >= self.rhs
        if self.sense == LE:
            return act <= self.rhs
        return act == self.rhs


def _valid_name(name: str) -> bool:
    return bool(name) and not any(ch.isspace() for ch in name) and ":" not in name


def _bound(value) -> Optional[Fraction]:
    return None if value is None else as_rat(value)


def _merge(pairs: Iterable[Tuple[int, RatLike]]) -> Coeffs:
    acc: dict[int, Fraction] = {}
    for j, a in pairs:
        a = as_rat(a)
        acc[j] = acc.get(j, Fraction(0)) + a
    return tuple(sorted((j, a) for j, a in acc.items() if a != 0))


class Model:
    """An immutable LP: ordered variables, constraint rows and an objective.

    Rows are stored sparsely as ``(variable index, coefficient)`` pairs sorted
    by index.  A bound of ``None`` means infinite.
    """

    __slots__ = ("variables", "constraints", "objective", "sense", "name", "_index")

    def __init__(
        self,
        variables: Sequence[Variable],
        constraints: Sequence[Constraint],
        objective: Coeffs,
        sense: str = MIN,
        name: str = "model",
    ):
        if sense not in (MIN, MAX):
            raise ModelError(f"objective sense must be 'min' or 'max', got {sense!r}")
        index: dict[str, int] = {}
        for j, v in enumerate(variables):
            if not _valid_name(v.name):
                raise ModelError(f"invalid variable name {v.name!r}")
            if v.name in index:
                raise ModelError(f"duplicate variable name {v.name!r}")
            if v.lower is not None and v.upper is not None and v.lower > v.upper:
                raise ModelError(f"empty bounds on {v.name!r}")
            index[v.name] = j
        n = len(variables)
        for c in constraints:
            if c.sense not in SENSES:
                raise ModelError(f"bad sense {c.sense!r} in row {c.name!r}")
            seen = set()
            for j, _ in c.coeffs:
                if not 0 <= j < n:
                    raise ModelError(f"row {c.name!r} references undeclared variable {j}")
                if j in seen:
                    raise ModelError(f"row {c.name!r} repeats variable {variables[j].name!r}")
                seen.add(j)
        for j, _ in objective:
            if not 0 <= j < n:
                raise ModelError(f"objective references undeclared variable {j}")
        self.variables = tuple(variables)
        self.constraints = tuple(constraints)
        self.objective = tuple(objective)
        self.sense = sense
        self.name = name
        self._index = index

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_rows(self) -> int:
        return len(self.constraints)

    @property
    def nnz(self) -> int:
        return sum(len(c.coeffs) for c in self.constraints)

    def size(self) -> int:
        """rows + columns + nonzeros + objective length; used by the size audits."""
        return self.num_rows + self.num_vars + self.nnz + len(self.objective)

    def encoding_bits(self) -> int:
        """Bits of every number in the model (coefficients, right-hand sides,
        objective, finite bounds), numerator plus denominator plus sign."""

        def bits(a: Fraction) -> int:
            return abs(a.numerator).bit_length() + a.denominator.bit_length() + 1

        total = sum(bits(a) for c in self.constraints for _, a in c.coeffs)
        total += sum(bits(c.rhs) for c in self.constraints)
        total += sum(bits(a) for _, a in self.objective)
        for v in self.variables:
            total += sum(bits(b) for b in (v.lower, v.upper) if b is not None)
        return total

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown variable {name!r}") from None

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * x[j] for j, a in self.objective), Fraction(0))

    def with_objective(self, coeffs: Union[Mapping[int, RatLike], Iterable[Tuple[int, RatLike]]], sense: str = MIN) -> "Model":
        pairs = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        return Model(self.variables, self.constraints, _merge(pairs), sense, self.name)

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        for v, xv in zip(self.variables, x):
            if v.lower is not None and xv < v.lower:
                return False
            if v.upper is not None and xv > v.upper:
                return False
        return all(c.satisfied_by(x) for c in self.constraints)

    def __repr__(self) -> str:
        return f"Model({self.name!r}, vars={self.num_vars}, rows={self.num_rows}, nnz={self.nnz})"


class ModelBuilder:
    """Mutable accumulator used by the formulation builders."""

    def __init__(self, name: str = "model"):
        self.name = name
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self.objective: Coeffs = ()
        self.sense = MIN
        self._index: dict[str, int] = {}

    @classmethod
    def from_model(cls, model: Model) -> "ModelBuilder":
        b = cls(model.name)
        b.variables = list(model.variables)
        b.constraints = list(model.constraints)
        b.objective = model.objective
        b.sense = model.sense
        b._index = {v.name: j for j, v in enumerate(model.variables)}
        return b

    def add_var(self, name: str, lower: Optional[RatLike] = 0, upper: Optional[RatLike] = None) -> int:
        if name in self._index:
            raise ModelError(f"duplicate variable name {name!r}")
        if not _valid_name(name):
            raise ModelError(f"invalid variable name {name!r}")
        self._index[name] = len(self.variables)
        self.variables.append(Variable(name, _bound(lower), _bound(upper)))
        return self._index[name]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def add_row(
        self,
        coeffs: Union[Mapping[int, RatLike], Iterable[Tuple[int, RatLike]]],
        sense: str,
        rhs: RatLike = 0,
        name: Optional[str] = None,
    ) -> int:
        """Add a row; repeated variables in ``coeffs`` are summed."""
        if sense not in SENSES:
            raise ModelError(f"bad sense {sense!r}")
        pairs = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged = _merge(pairs)
        n = len(self.variables)
        for j, _ in merged:
            if not 0 <= j < n:
                raise ModelError(f"row references undeclared variable {j}")
        row_name = name if name is not None else f"r{len(self.constraints)}"
        if not _valid_name(row_name):
            raise ModelError(f"invalid row name {row_name!r}")
        self.constraints.append(Constraint(merged, sense, as_rat(rhs), row_name))
        return len(self.constraints) - 1

    def set_objective(self, coeffs: Union[Mapping[int, RatLike], Iterable[Tuple[int, RatLike]]], sense: str = MIN) -> None:
        pairs = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.objective = _merge(pairs)
        self.sense = sense

    def build(self) -> Model:
        return Model(self.variables, self.constraints, self.objective, self.sense, self.name)


def build_model(vars, constraints=(), objective=None, name: str = "model") -> Model:
    """Build a Model from named data.

    ``vars`` is a sequence of ``(name, lower, upper)``; ``constraints`` of
    ``(coeffs, sense, rhs)`` or ``(coeffs, sense, rhs, row_name)`` where
    ``coeffs`` maps variable names to coefficients; ``objective`` is
    ``(coeffs, sense)``.
    """
    b = ModelBuilder(name)
    for item in vars:
        vname, lo, up = item
        b.add_var(vname, lo, up)
    for row in constraints:
        coeffs, sense, rhs, *rest = row
        for vname in coeffs:
            if vname not in b:
                raise ModelError(f"coefficient on undeclared variable {vname!r}")
        b.add_row({b.index(k): v for k, v in coeffs.items()}, sense, rhs, rest[0] if rest else None)
    if objective is not None:
        coeffs, sense = objective
        for vname in coeffs:
            if vname not in b:
                raise ModelError(f"objective references undeclared variable {vname!r}")
        b.set_objective({b.index(k): v for k, v in coeffs.items()}, sense)
    return b.build()


# --- normal form -----------------------------------------------------------

ROW, LOWER, UPPER = "row", "lower", "upper"


@dataclass(frozen=True)
class NormalRow:
    """One row ``coeffs . x >= rhs`` (or ``= rhs`` when ``equality``).

    ``origin`` maps back to the source model: ``("row", i, sign)`` for
    constraint ``i`` multiplied by ``sign``, ``("lower", j)`` for ``x_j >= l_j``
    and ``("upper", j)`` for ``-x_j >= -u_j``.
    """

    coeffs: Coeffs
    rhs: Fraction
    equality: bool
    origin: tuple


@dataclass(frozen=True)
class NormalForm:
    """``min cost.x  s.t.  rows`` with every variable free.

    ``objective_sign`` is +1 when the source minimizes and -1 when it
    maximizes; the source objective equals ``objective_sign * cost.x``.
    """

    source: Model
    rows: Tuple[NormalRow, ...]
    cost: Tuple[Fraction, ...]
    objective_sign: int
    row_of: dict = field(repr=False, default_factory=dict)

    @property
    def num_vars(self) -> int:
        return self.source.num_vars

    def row_matrix_product(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * x[j] for j, a in r.coeffs), Fraction(0)) for r in self.rows]


def normalize(model: Model) -> NormalForm:
    """Fold bounds into rows, flip ``<=`` rows and make the objective min-sense.

    Equality rows stay equalities (their duals are free).
    """
    rows: list[NormalRow] = []
    for i, c in enumerate(model.constraints):
        if c.sense == LE:
            rows.append(NormalRow(tuple((j, -a) for j, a in c.coeffs), -c.rhs, False, (ROW, i, -1)))
        else:
            rows.append(NormalRow(c.coeffs, c.rhs, c.sense == EQ, (ROW, i, 1)))
    one = Fraction(1)
    for j, v in enumerate(model.variables):
        if v.lower is not None:
            rows.append(NormalRow(((j, one),), v.lower, False, (LOWER, j)))
        if v.upper is not None:
            rows.append(NormalRow(((j, -one),), -v.upper, False, (UPPER, j)))
    sign = 1 if model.sense == MIN else -1
    cost = [Fraction(0)] * model.num_vars
    for j, a in model.objective:
        cost[j] = sign * a
    row_of = {r.origin: k for k, r in enumerate(rows)}
    return NormalForm(model, tuple(rows), tuple(cost), sign, row_of)
