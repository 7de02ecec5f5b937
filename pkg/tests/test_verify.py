import json
import random
from fractions import Fraction as F

import pytest

from extform.formulations import PolyhedronDesc, build_balas_hull, simplex_coupling, steiner_parts
from extform.graphs import Graph
from extform.graphs.generate import cycle4, path_graph_abc, random_connected_graph, star, triangle123, two_paths_symmetric
from extform.ratlp import MAX, MIN, build_model, solve
from extform.verify import (
    CheckReport,
    check_balas_vertex,
    check_coupled_optimality,
    check_gh_polytope,
    check_gomory_hu,
    check_hull_instance,
    check_steiner,
    check_tcut,
    check_tree_extension,
    interval_pair,
    random_polygon,
    run_suites,
    size_audit,
    unbounded_instances,
)


def test_report_basics():
    rep = CheckReport("demo")
    assert rep.equal("same", F(1, 2), F(2, 4))
    assert not rep.at_most("too big", 3, 2)
    assert not rep.passed
    (bad,) = rep.failures()
    assert (bad.lhs, bad.rhs) == (3, 2)
    assert "FAIL" in bad.line() and "3 vs 2" in bad.line()
    d = json.loads(rep.to_json())
    assert d["pass"] is False and d["checks"][0]["lhs"] == "1/2"
    assert rep.summary() == "demo: FAIL (1/2 checks)"


def test_report_certify_counts_outcomes():
    rep = CheckReport("demo")
    m = build_model(
        [("x", 0, None), ("y", 0, None)],
        [({"x": 1, "y": 1}, ">=", 1), ({"x": 1, "y": -1}, "<=", 2)],
        ({"x": 1, "y": 3}, MIN),
    )
    rep.solve(m)
    rep.solve(m, pivot_cap=0)
    assert rep.outcomes == {"optimal": 1, "aborted": 1}
    assert [c.passed for c in rep.certificate_checks()] == [True, False]


def test_balas_vertex_interval_pair():
    h = build_balas_hull(interval_pair(), [1], MAX)
    rep = check_balas_vertex(h, solve(h.model))
    assert rep.passed and rep.info["k"] == 2


def test_balas_vertex_identical_sets_perturbed():
    polys = [PolyhedronDesc(1, [([1], ">=", 0), ([1], "<=", 1)], ("x",), lab) for lab in "12"]
    h = build_balas_hull(polys, [F(1, 1000)], MAX)
    o = solve(h.model)
    rep = check_balas_vertex(h, o)
    assert rep.passed and rep.info["k"] in (1, 2)


def test_balas_vertex_rejects_midpoint():
    h = build_balas_hull(interval_pair(), [1], MAX)
    point = [F(0)] * h.model.num_vars
    for sym, val in (("lambda", F(1, 2)), ("x^1", F(1, 2)), ("x^2", F(3, 2)), ("x", F(2))):
        for j in h.block(sym):
            point[j] = val
    assert h.model.is_feasible(point)
    rep = check_balas_vertex(h, point)
    assert not rep.passed
    assert "k" not in rep.info


def test_hull_instances():
    assert check_hull_instance(interval_pair(), [1], MAX).info["value"] == 3
    assert check_hull_instance(interval_pair(), [1], MIN).info["value"] == 0
    rng = random.Random(3)
    for _ in range(10):
        polys = [random_polygon(rng, str(i + 1)) for i in range(3)]
        assert check_hull_instance(polys, [1, -2], MAX).passed


def test_random_polygon_is_bounded_with_few_rows():
    rng = random.Random(1)
    for _ in range(20):
        p = random_polygon(rng)
        assert 3 <= len(p.rows) <= 4
        for w in ([1, 0], [-1, 0], [0, 1], [0, -1]):
            assert solve(p.as_model(w, MAX)).status == "optimal"


def test_coupled_examples():
    g = triangle123()
    _, _, _, polys, coupling, cost = steiner_parts(g, g.nodes)
    rep = check_coupled_optimality(polys, coupling, cost, MIN, keep_x=False)
    assert rep.passed and rep.info["value"] == 3

    rep = check_coupled_optimality(interval_pair(), simplex_coupling(2), [0], MAX)
    assert rep.passed and rep.info["value"] == 0


@pytest.mark.parametrize("k", range(5))
def test_coupled_unbounded_instances(k):
    polys, coupling, w, sense = unbounded_instances()[k]
    rep = check_coupled_optimality(polys, coupling, w, sense)
    assert rep.passed and rep.info["status"] == "unbounded"
    assert rep.outcomes["unbounded"] >= 2


def test_tree_check():
    rep = check_tree_extension(triangle123())
    assert rep.passed and rep.info["optimum"] == 3 and rep.info["tree"] == "{12,13}"


def test_steiner_check():
    rep = check_steiner(star(), ["s1", "s2", "s3"])
    assert rep.passed
    assert (rep.info["lp"], rep.info["steiner"], rep.info["bound"]) == (4, 3, 6)


def test_gomory_hu_checks():
    rep = check_gomory_hu(path_graph_abc())
    assert rep.passed and rep.info["optimum"] == 3 and rep.info["tree"] == "{ab,bc}"
    rep = check_gomory_hu(cycle4())
    assert rep.passed and rep.info["optimum"] == 6
    rep = check_gomory_hu(random_connected_graph(5, random.Random(11)))
    assert rep.passed
    assert any(c.name.startswith("LP optimum equals minimum requirement") for c in rep.checks)


def test_gh_polytope_checks():
    rep = check_gh_polytope(path_graph_abc(), objectives=3)
    assert rep.passed and rep.info["lambda_point"] == "{ab,bc}"
    rep = check_gh_polytope(two_paths_symmetric(), objectives=3)
    assert rep.passed and rep.info["gh_trees"] >= 2


def test_tcut_checks():
    rep = check_tcut(path_graph_abc(), ["a", "c"])
    assert rep.passed and rep.info["optimum"] == 1
    rep = check_tcut(cycle4(), list("abcd"))
    assert rep.passed and rep.info["optimum"] == 2
    rep = check_tcut(Graph(["a", "b"], [("a", "b", F(2, 7))]), ["a", "b"])
    assert rep.passed and rep.info["optimum"] == F(2, 7)


def test_size_audits():
    rep = size_audit("steiner", range(4, 7))
    assert rep.passed
    rep = size_audit("gh", range(4, 7))
    assert rep.passed
    assert any("grows" in c.name for c in rep.checks)
    assert not size_audit("gh", range(4, 6), constant=0).passed
    with pytest.raises(ValueError):
        size_audit("hull", range(4, 5))


def test_run_suites_rejects_unknown_name():
    with pytest.raises(ValueError):
        run_suites(["nope"])


def test_small_suite_is_deterministic():
    a = run_suites(["hull"], seed=7)
    b = run_suites(["hull"], seed=7)
    assert [r.to_json() for r in a["hull"]] == [r.to_json() for r in b["hull"]]
    assert all(r.passed for r in a["hull"])
