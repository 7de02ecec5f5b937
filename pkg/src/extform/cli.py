"""Command-line interface.

Graph inputs use the JSON format of :mod:`extform.graphs.io`.  The ``hull``
command reads polyhedra instead::

    {"sense": "max", "objective": ["1", "0"],
     "polyhedra": [{"label": "1", "rows": [{"a": [1, 0], "sense": "<=", "b": "3/2"}, ...]}, ...]}

Exit status is 0 when every printed check passes and 1 when one fails; the
input errors have their own codes (see ``EXIT_*``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .formulations import (
    BACKENDS,
    EQ10,
    DescriptionError,
    PolyhedronDesc,
    SizeCapError,
    build_arborescence_extension,
    build_balas_hull,
    build_ghtree_polytope_extension,
    build_gomory_hu_lp,
    build_shortest_path_lp,
    build_stcut_lp,
    build_steiner_approx,
    build_tcut_lp,
    build_tree_extension,
)
from .formulations.tcut import DEFAULT_MAX_NODES
from .graphs import Cut, GraphError, load_graph
from .rat import as_rat, fmt_rat_approx, parse_rat
from .ratlp import EQ, GE, LE, MAX, MIN, Aborted, LPFormatError, Optimal, dump_lp, read_lp, solve, write_lp
from .verify import (
    DEFAULT_SEED,
    SUITES,
    CheckReport,
    check_gomory_hu,
    check_hull_instance,
    check_steiner,
    check_tcut,
    check_tree_extension,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_BAD_TERMINALS = 4
EXIT_DISCONNECTED = 5
EXIT_SIZE_CAP = 6
EXIT_SOLVER = 7


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(v) -> str:
    return fmt_rat_approx(v) if isinstance(v, Fraction) else str(v)


def fmt_cut(cut: Cut, nodes) -> str:
    """``δ(U)`` with the smaller shore; on a tie, the shore without the first node."""
    a, b = cut.shore, cut.other_shore()
    if len(b) < len(a) or (len(a) == len(b) and nodes[0] in a):
        a = b
    order = {v: k for k, v in enumerate(nodes)}
    return "δ({" + ",".join(sorted(a, key=order.__getitem__)) + "})"


def _node_list(text: str, flag: str) -> list:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise CliError(f"{flag} needs a comma-separated node list", EXIT_BAD_TERMINALS)
    return items


def _graph(args, connected: bool = True):
    try:
        g = load_graph(args.input)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror}", EXIT_BAD_INPUT) from None
    except (GraphError, ValueError, TypeError) as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_BAD_INPUT) from None
    if connected and not g.is_connected():
        raise CliError(f"{args.input}: graph is disconnected", EXIT_DISCONNECTED)
    return g


def _terminals(g, text: str, flag: str, even: bool = False) -> list:
    nodes = _node_list(text, flag)
    for v in nodes:
        if v not in g:
            raise CliError(f"{flag}: unknown node {v!r}", EXIT_BAD_TERMINALS)
    uniq = list(dict.fromkeys(nodes))
    if even and (len(uniq) < 2 or len(uniq) % 2):
        raise CliError(f"{flag}: |T| must be even and at least 2, got {len(uniq)}", EXIT_BAD_TERMINALS)
    if not even and len(uniq) < 2:
        raise CliError(f"{flag}: need at least two nodes", EXIT_BAD_TERMINALS)
    return uniq


def _solve_kw(args) -> dict:
    return {"pivot_cap": args.pivot_cap}


def _write_dump(args, h) -> None:
    if not args.dump:
        return
    with open(args.dump, "w", encoding="utf-8") as fh:
        fh.write(dump_lp(h.model))
    with open(args.dump + ".blocks.json", "w", encoding="utf-8") as fh:
        fh.write(h.sidecar_json() + "\n")


def _finish(args, rep: CheckReport, line: str) -> int:
    print(line)
    for c in rep.failures():
        print(c.line())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json() + "\n")
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def _solver_failure(rep: CheckReport):
    for c in rep.failures():
        if "optimal" in c.name and c.detail:
            raise CliError(f"LP not solved: {c.detail}", EXIT_SOLVER)


# ---------------------------------------------------------------------------


def _read_polyhedra(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_BAD_INPUT) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON: {exc}", EXIT_BAD_INPUT) from None
    senses = {">=": GE, "<=": LE, "=": EQ}

    def rat(x):
        if isinstance(x, (bool, float)) or not isinstance(x, (int, str)):
            raise CliError(f"{path}: numbers must be integers or strings, got {x!r}", EXIT_BAD_INPUT)
        return as_rat(x) if isinstance(x, int) else parse_rat(x)

    try:
        w = [rat(c) for c in data["objective"]]
        sense = data.get("sense", MAX)
        if sense not in (MIN, MAX):
            raise CliError(f"{path}: sense must be 'min' or 'max'", EXIT_BAD_INPUT)
        polys = []
        for i, p in enumerate(data["polyhedra"]):
            rows = []
            for r in p["rows"]:
                if r["sense"] not in senses:
                    raise CliError(f"{path}: bad row sense {r['sense']!r}", EXIT_BAD_INPUT)
                rows.append(([rat(a) for a in r["a"]], senses[r["sense"]], rat(r["b"])))
            polys.append(PolyhedronDesc(len(w), rows, tuple(data.get("names", ())), str(p.get("label", i + 1))))
    except (KeyError, TypeError) as exc:
        raise CliError(f"{path}: missing or malformed field {exc}", EXIT_BAD_INPUT) from None
    except (DescriptionError, ValueError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_BAD_INPUT) from None
    if not polys:
        raise CliError(f"{path}: no polyhedra", EXIT_BAD_INPUT)
    return polys, w, sense


def cmd_hull(args) -> int:
    polys, w, sense = _read_polyhedra(args.input)
    rep = check_hull_instance(polys, w, sense, name=f"hull {args.input}", **_solve_kw(args))
    _write_dump(args, build_balas_hull(polys, w, sense))
    _solver_failure(rep)
    k = rep.info.get("k")
    label = polys[k - 1].label if k else "?"
    line = f"optimum {fmt(rep.info.get('value'))}; selected polyhedron {label}; vertex check: {'pass' if rep.passed else 'FAIL'}"
    return _finish(args, rep, line)


def cmd_mst(args) -> int:
    g = _graph(args)
    if len(g.nodes) < 2:
        raise CliError("need at least two nodes", EXIT_BAD_INPUT)
    rep = check_tree_extension(g, (args.backend,), **_solve_kw(args))
    h = build_tree_extension(g) if args.backend == EQ10 else build_arborescence_extension(g)
    _write_dump(args, h)
    _solver_failure(rep)
    line = f"optimum {fmt(rep.info.get('optimum'))}; tree {rep.info.get('tree', '?')}; Kruskal: {fmt(rep.info['mst'])}; {'pass' if rep.passed else 'FAIL'}"
    return _finish(args, rep, line)


def cmd_steiner(args) -> int:
    g = _graph(args)
    s = _terminals(g, args.S, "--S")
    _write_dump(args, build_steiner_approx(g, s, args.backend))
    rep = check_steiner(g, s, args.backend, **_solve_kw(args))
    _solver_failure(rep)
    lp, opt, bound = rep.info["lp"], rep.info["steiner"], rep.info["bound"]
    line = f"LP {fmt(lp)}; Steiner opt {fmt(opt)}; ratio bound {fmt(lp)} ≤ {fmt(bound)}: {'pass' if rep.passed else 'FAIL'}"
    return _finish(args, rep, line)


def cmd_gomory_hu(args) -> int:
    g = _graph(args)
    if len(g.nodes) < 2:
        raise CliError("need at least two nodes", EXIT_BAD_INPUT)
    if args.max_nodes is not None and len(g.nodes) > args.max_nodes:
        raise CliError(f"{len(g.nodes)} nodes exceeds --max-nodes {args.max_nodes}", EXIT_SIZE_CAP)
    _write_dump(args, build_gomory_hu_lp(g))
    rep = check_gomory_hu(g, enumerate_limit=args.enumerate_limit, **_solve_kw(args))
    _solver_failure(rep)
    line = f"optimum {fmt(rep.info.get('optimum'))}; tree {rep.info.get('tree', '?')}; GH check: {'pass' if rep.passed else 'FAIL'}"
    return _finish(args, rep, line)


def cmd_tcut(args) -> int:
    g = _graph(args)
    t = _terminals(g, args.T, "--T", even=True)
    if args.max_nodes is not None and len(g.nodes) > args.max_nodes:
        raise CliError(f"{len(g.nodes)} nodes exceeds the T-cut size cap {args.max_nodes}", EXIT_SIZE_CAP)
    rep = check_tcut(g, t, args.max_nodes, **_solve_kw(args))
    _solver_failure(rep)
    if args.dump:
        _write_dump(args, build_tcut_lp(g, t, args.max_nodes, **_solve_kw(args)))
    cut = rep.info.get("cut")
    shown = fmt_cut(cut, g.nodes) if cut is not None else "?"
    line = f"optimum {fmt(rep.info.get('optimum'))}; cut {shown}; oracle: {fmt(rep.info['oracle'])}; {'pass' if rep.passed else 'FAIL'}"
    return _finish(args, rep, line)


def cmd_verify(args) -> int:
    names = args.suite or list(SUITES)
    for nm in names:
        if nm not in SUITES:
            raise CliError(f"unknown suite {nm!r}; choose from {', '.join(SUITES)}", EXIT_USAGE)
    ok = True
    out = {}
    for nm in names:
        reports = SUITES[nm](args.seed, **_solve_kw(args))
        bad = [r for r in reports if not r.passed]
        certs = sum(len(r.certificate_checks()) for r in reports)
        print(f"{nm}: {len(reports) - len(bad)}/{len(reports)} instances pass, {certs} solver outcomes certified")
        for r in bad:
            print("  " + r.summary())
            for c in r.failures():
                print("  " + c.line())
        ok = ok and not bad
        out[nm] = [r.to_dict() for r in reports]
    print("all checks pass" if ok else "FAILURES")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"seed": args.seed, "suites": out}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


DUMP_KINDS = ("tree", "arborescence", "steiner", "gomory-hu", "gh-polytope", "tcut", "shortest-path", "stcut")


def _load_lp(args) -> int:
    try:
        model = read_lp(args.load)
    except OSError as exc:
        raise CliError(f"cannot read {args.load}: {exc.strerror}", EXIT_BAD_INPUT) from None
    except LPFormatError as exc:
        raise CliError(f"{args.load}: {exc}", EXIT_BAD_INPUT) from None
    rep = CheckReport(f"lp {args.load}")
    o = rep.solve(model, **_solve_kw(args))
    if args.dump:
        write_lp(model, args.dump)
    value = f" {fmt(o.objective)}" if isinstance(o, Optimal) else ""
    line = f"{model.name}: {o.status}{value}; certificate: {'pass' if rep.passed else 'FAIL'}"
    code = _finish(args, rep, line)
    if isinstance(o, Aborted):
        return EXIT_SOLVER
    return code


def cmd_dump_lp(args) -> int:
    if args.load:
        return _load_lp(args)
    if not args.input:
        raise CliError("dump-lp needs a graph file or --load", EXIT_USAGE)
    g = _graph(args)
    kind = args.kind
    if kind == "tree":
        h = build_tree_extension(g)
    elif kind == "arborescence":
        h = build_arborescence_extension(g)
    elif kind == "steiner":
        if not args.S:
            raise CliError("--S is required for the Steiner LP", EXIT_BAD_TERMINALS)
        h = build_steiner_approx(g, _terminals(g, args.S, "--S"), args.backend)
    elif kind == "gomory-hu":
        h = build_gomory_hu_lp(g)
    elif kind == "gh-polytope":
        base = build_gomory_hu_lp(g)
        o = solve(base.model, **_solve_kw(args))
        if not isinstance(o, Optimal):
            raise CliError(f"Gomory-Hu LP is {o.status}", EXIT_SOLVER)
        h = build_ghtree_polytope_extension(g, outcome=o, base=base)
    elif kind == "tcut":
        if not args.T:
            raise CliError("--T is required for the T-cut LP", EXIT_BAD_TERMINALS)
        h = build_tcut_lp(g, _terminals(g, args.T, "--T", even=True), args.max_nodes, **_solve_kw(args))
    else:
        if args.source is None or args.sink is None:
            raise CliError("--source and --sink are required", EXIT_BAD_TERMINALS)
        for v in (args.source, args.sink):
            if v not in g:
                raise CliError(f"unknown node {v!r}", EXIT_BAD_TERMINALS)
        if args.source == args.sink:
            raise CliError("source and sink must differ", EXIT_BAD_TERMINALS)
        build = build_shortest_path_lp if kind == "shortest-path" else build_stcut_lp
        h = build(g, args.source, args.sink)
    if args.dump:
        _write_dump(args, h)
        print(f"wrote {args.dump} ({h.model.num_vars} variables, {h.model.num_rows} rows)")
    else:
        sys.stdout.write(dump_lp(h.model))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extform", description="Exact compact LP formulations checked against combinatorial oracles.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pivot-cap", type=int, default=1_000_000, help="abort a solve after this many pivots")
    common.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--dump", metavar="PATH", help="write the LP to PATH and its block index to PATH.blocks.json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hull", parents=[common], help="hull of a union of polyhedra")
    h.add_argument("input")
    h.set_defaults(func=cmd_hull)

    m = sub.add_parser("mst", parents=[common], help="minimum spanning tree via a tree extension")
    m.add_argument("input")
    m.add_argument("--backend", choices=BACKENDS, default=EQ10)
    m.set_defaults(func=cmd_mst)

    s = sub.add_parser("steiner", parents=[common], help="spanning-tree approximation of a Steiner tree")
    s.add_argument("input")
    s.add_argument("--S", required=True, help="terminal nodes, comma-separated")
    s.add_argument("--backend", choices=BACKENDS, default=EQ10)
    s.set_defaults(func=cmd_steiner)

    g = sub.add_parser("gomory-hu", parents=[common], help="Gomory-Hu tree via one LP")
    g.add_argument("input")
    g.add_argument("--max-nodes", type=_positive, default=8)
    g.add_argument("--enumerate-limit", type=int, default=6, help="compare with all spanning trees up to this many nodes")
    g.set_defaults(func=cmd_gomory_hu)

    t = sub.add_parser("tcut", parents=[common], help="minimum T-cut via one LP")
    t.add_argument("input")
    t.add_argument("--T", required=True, help="terminal set of even size, comma-separated")
    t.add_argument("--max-nodes", type=_positive, default=DEFAULT_MAX_NODES)
    t.set_defaults(func=cmd_tcut)

    v = sub.add_parser("verify", parents=[common], help="run the seeded verification suites")
    v.add_argument("--suite", action="append", help=f"suite to run (repeatable): {', '.join(SUITES)}")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump-lp", parents=[common], help="write a formulation in the textual LP format")
    d.add_argument("input", nargs="?")
    d.add_argument("--load", metavar="LPFILE", help="read, solve and certify an LP file instead (with --dump: write it back)")
    d.add_argument("--kind", choices=DUMP_KINDS, default="gomory-hu")
    d.add_argument("--S", help="terminals for --kind steiner")
    d.add_argument("--T", help="terminals for --kind tcut")
    d.add_argument("--source")
    d.add_argument("--sink")
    d.add_argument("--backend", choices=BACKENDS, default=EQ10)
    d.add_argument("--max-nodes", type=_positive, default=DEFAULT_MAX_NODES)
    d.set_defaults(func=cmd_dump_lp)
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.pivot_cap <= 0:
        print("error: --pivot-cap must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
