"""Deterministic text dump of a Model, and the matching parser.

Example::

    \\ extform-lp 1
    model demo
    maximize
      obj: +1 x +2 y
    subject to
      cap: +1 x +1 y <= 4
    bounds
      x 0 +inf
      y -inf 3
    end

Every variable appears in ``bounds`` in model order, so the dump round-trips
exactly (variable order, names, bounds, row names and coefficients).
"""

from __future__ import annotations

from fractions import Fraction

from ..rat import fmt_rat, parse_rat
from .model import MAX, MIN, SENSES, Model, ModelBuilder

HEADER = "\\ extform-lp 1"


class LPFormatError(ValueError):
    pass


def _term(coef: Fraction, name: str) -> str:
    s = fmt_rat(coef)
    return f"{s if s.startswith('-') else '+' + s} {name}"


def dump_lp(model: Model) -> str:
    names = [v.name for v in model.variables]
    out = [HEADER, f"model {model.name.replace(' ', '_')}"]
    out.append("minimize" if model.sense == MIN else "maximize")
    out.append("  obj: " + " ".join(_term(a, names[j]) for j, a in model.objective) if model.objective else "  obj:")
    out.append("subject to")
    for c in model.constraints:
        terms = " ".join(_term(a, names[j]) for j, a in c.coeffs)
        lhs = f"  {c.name}: {terms}" if terms else f"  {c.name}:"
        out.append(f"{lhs} {c.sense} {fmt_rat(c.rhs)}")
    out.append("bounds")
    for v in model.variables:
        lo = "-inf" if v.lower is None else fmt_rat(v.lower)
        up = "+inf" if v.upper is None else fmt_rat(v.upper)
        out.append(f"  {v.name} {lo} {up}")
    out.append("end")
    return "\n".join(out) + "\n"


def _terms(tokens: list[str], lineno: int) -> list[tuple[Fraction, str]]:
    if len(tokens) % 2:
        raise LPFormatError(f"line {lineno}: coefficient/variable pairs expected")
    return [(parse_rat(tokens[k]), tokens[k + 1]) for k in range(0, len(tokens), 2)]


def parse_lp(text: str) -> Model:
    lines = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines())]
    lines = [(k, ln) for k, ln in lines if ln and not (ln.startswith("\\") and k > 1)]
    if not lines or lines[0][1] != HEADER:
        raise LPFormatError("missing extform-lp header")
    it = iter(lines[1:])
    name = "model"
    sense = None
    obj: list = []
    rows: list = []
    bounds: list = []
    section = None
    for lineno, ln in it:
        if ln.startswith("model "):
            name = ln[6:].strip()
            continue
        if ln in ("minimize", "maximize"):
            sense = MIN if ln == "minimize" else MAX
            section = "obj"
            continue
        if ln == "subject to":
            section = "rows"
            continue
        if ln == "bounds":
            section = "bounds"
            continue
        if ln == "end":
            section = "end"
            break
        if section == "obj":
            head, _, rest = ln.partition(":")
            if head.strip() != "obj":
                raise LPFormatError(f"line {lineno}: objective line expected")
            obj = _terms(rest.split(), lineno)
        elif section == "rows":
            head, sep, rest = ln.partition(":")
            if not sep:
                raise LPFormatError(f"line {lineno}: row name expected")
            toks = rest.split()
            if len(toks) < 2 or toks[-2] not in SENSES:
                raise LPFormatError(f"line {lineno}: row must end with '<sense> <rhs>'")
            rows.append((head.strip(), _terms(toks[:-2], lineno), toks[-2], parse_rat(toks[-1])))
        elif section == "bounds":
            toks = ln.split()
            if len(toks) != 3:
                raise LPFormatError(f"line {lineno}: '<var> <lower> <upper>' expected")
            lo = None if toks[1] == "-inf" else parse_rat(toks[1])
            up = None if toks[2] == "+inf" else parse_rat(toks[2])
            bounds.append((toks[0], lo, up))
        else:
            raise LPFormatError(f"line {lineno}: unexpected {ln!r}")
    if section != "end" or sense is None:
        raise LPFormatError("truncated LP file")
    b = ModelBuilder(name)
    for vname, lo, up in bounds:
        b.add_var(vname, lo, up)
    try:
        for rname, terms, s, rhs in rows:
            b.add_row([(b.index(v), a) for a, v in terms], s, rhs, rname)
        b.set_objective([(b.index(v), a) for a, v in obj], sense)
    except ValueError as exc:
        raise LPFormatError(str(exc)) from exc
    return b.build()


def write_lp(model: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_lp(model))


def read_lp(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return parse_lp(fh.read())
