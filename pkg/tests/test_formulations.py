import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extform.formulations import (
    EQ10,
    EQ11,
    DescriptionError,
    ExtensionDesc,
    ExtractionError,
    NonVertexError,
    PolyhedronDesc,
    SizeCapError,
    build_arborescence_extension,
    build_balas_hull,
    build_coupled,
    build_ghtree_polytope_extension,
    build_gomory_hu_lp,
    build_shortest_path_lp,
    build_stcut_lp,
    build_steiner_approx,
    build_tcut_lp,
    build_tree_extension,
    extract_fundamental_cuts,
    extract_tcut,
    extract_tree,
    lex_weights,
    simplex_coupling,
    solve_integral,
    steiner_parts,
    two_phase,
)
from extform.graphs import (
    Cut,
    Graph,
    GraphError,
    Tree,
    dijkstra,
    enumerate_spanning_trees,
    gusfield_gomory_hu,
    kruskal_mst,
    metric_closure,
    requirement_value,
)
from extform.graphs.generate import cycle4, path_graph_abc, random_connected_graph, star, triangle123, two_paths_symmetric
from extform.ratlp import GE, LE, MAX, MIN, Infeasible, Optimal, Unbounded, certificate_problems, dump_lp, parse_lp, solve


def solved(model):
    o = solve(model)
    assert certificate_problems(model, o) == []
    return o


def interval(lo, hi, label):
    return PolyhedronDesc(1, [([1], GE, lo), ([1], LE, hi)], ("x",), label)


# --- hulls and coupled systems ---------------------------------------------------


def test_balas_hull_intervals():
    polys = [interval(0, 1, "1"), interval(2, 3, "2")]
    h = build_balas_hull(polys, [1], MAX)
    assert h.check_partition()
    o = solved(h.model)
    assert o.objective == 3
    assert h.values(o, "lambda") == {"1": 0, "2": 1}
    assert solved(build_balas_hull(polys, [1], MIN).model).objective == 0


def test_balas_hull_identical_sets():
    polys = [interval(0, 1, "1"), interval(0, 1, "2")]
    h = build_balas_hull(polys, [1], MAX)
    assert solved(h.model).objective == 1
    # any weighting of the two copies is optimal
    face_point = [F(0)] * h.model.num_vars
    for sym, val in (("x", 1), ("x^1", F(1, 2)), ("x^2", F(1, 2)), ("lambda", F(1, 2))):
        for j in h.block(sym):
            face_point[j] = F(val)
    assert h.model.is_feasible(face_point)
    assert h.model.objective_value(face_point) == 1


def test_hull_dimension_mismatch():
    with pytest.raises(DescriptionError):
        build_balas_hull([interval(0, 1, "1"), PolyhedronDesc(2, [([1, 0], GE, 0)], label="2")], [1])
    with pytest.raises(DescriptionError):
        build_coupled([interval(0, 1, "1")], simplex_coupling(2), [1])
    with pytest.raises(DescriptionError):
        PolyhedronDesc(2, [([1], GE, 0)])


def test_coupled_metric_closure_mst():
    g = triangle123()
    _, _, _, polys, coupling, cost = steiner_parts(g, g.nodes)
    h = build_coupled(polys, coupling, cost, MIN, keep_x=False)
    assert solved(h.model).objective == 3 == kruskal_mst(metric_closure(g))[1]
    status, value, _, _ = two_phase(polys, coupling, cost, MIN)
    assert (status, value) == ("optimal", 3)


def test_coupled_with_simplex_matches_hull():
    polys = [interval(0, 1, "1"), interval(2, 3, "2")]
    a = solved(build_coupled(polys, simplex_coupling(2), [1], MAX).model)
    b = solved(build_balas_hull(polys, [1], MAX).model)
    assert a.objective == b.objective == 3


def test_coupled_unbounded_subproblem():
    ray = PolyhedronDesc(1, [([1], GE, 0)], ("x",), "1")
    polys = [ray, interval(0, 1, "2")]
    o = solved(build_coupled(polys, simplex_coupling(2), [1], MAX).model)
    assert isinstance(o, Unbounded)
    assert two_phase(polys, simplex_coupling(2), [1], MAX)[0] == "unbounded"


def test_coupled_zero_objective():
    polys = [interval(0, 1, "1"), interval(2, 3, "2")]
    assert solved(build_coupled(polys, simplex_coupling(2), [0], MAX).model).objective == 0
    assert two_phase(polys, simplex_coupling(2), [0], MAX)[1] == 0


def test_extension_desc_validation():
    with pytest.raises(DescriptionError):
        ExtensionDesc(1, 0, (((0, 1),), (), "!=", 0))
    with pytest.raises(DescriptionError):
        ExtensionDesc(1, 0, ((((3, 1),), (), GE, 0),))


@st.composite
def boxes(draw, label):
    lo = [draw(st.integers(-4, 4)) for _ in range(2)]
    hi = [a + draw(st.integers(0, 4)) for a in lo]
    rows = [([1, 0], GE, lo[0]), ([1, 0], LE, hi[0]), ([0, 1], GE, lo[1]), ([0, 1], LE, hi[1])]
    return PolyhedronDesc(2, rows, ("x1", "x2"), label)


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(*[boxes(str(i)) for i in range(k)])), st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.sampled_from((MIN, MAX)))
def test_coupled_equals_two_phase(polys, w, sense):
    polys = list(polys)
    o = solved(build_coupled(polys, simplex_coupling(len(polys)), w, sense).model)
    status, value, _, _ = two_phase(polys, simplex_coupling(len(polys)), w, sense)
    assert status == "optimal" and o.objective == value


# --- spanning trees ------------------------------------------------------------------


def test_tree_extension_triangle():
    g = triangle123()
    for h in (build_tree_extension(g), build_arborescence_extension(g)):
        assert h.check_partition()
        o = solve_integral(h)
        assert o.objective == 3
        assert extract_tree(h, o).edges == (("1", "2"), ("1", "3"))


def test_tree_extension_single_edge():
    g = Graph(["a", "b"], [("a", "b", 5)])
    h = build_tree_extension(g)
    o = solved(h.model)
    assert h.values(o, "lambda") == {("a", "b"): 1}
    h = build_arborescence_extension(g)
    o = solved(h.model)
    nu = h.values(o, "nu")
    assert nu[("a", "b")] + nu[("b", "a")] == 1


def test_tree_extension_integral_points_are_spanning_trees():
    """Every spanning tree of K3 extends to a feasible point, and fixing a
    non-tree edge set is infeasible."""
    g = triangle123()
    h = build_tree_extension(g)
    for t in enumerate_spanning_trees(g.nodes, g.edges):
        m = h.model
        chi = t.indicator(g.edges)
        probe = m.with_objective({j: (1 if c else -1) for j, c in zip(h.block("lambda"), chi)}, MAX)
        o = solved(probe)
        assert o.objective == 2
    fixed = h.model.with_objective({h.index_of("lambda", ("1", "2")): 1}, MAX)
    assert solved(fixed).objective == 1


def test_arborescence_path_routes_through_middle():
    g = path_graph_abc()
    h = build_arborescence_extension(g, root="a")
    o = solved(h.model)
    sigma = h.values(o, "sigma")
    assert sigma[("c", ("a", "b"))] == 1 and sigma[("c", ("b", "c"))] == 1
    nu = h.values(o, "nu")
    assert all(nu[a] >= sigma[("c", a)] for a in nu)


def test_arborescence_literal_root_row_is_too_weak():
    """Constraining only the root's outflow lets flow leave and return, so
    the LP drops below the minimum spanning tree."""
    g = path_graph_abc()
    mst = kruskal_mst(g)[1]
    assert solved(build_arborescence_extension(g, "c", root_row="net").model).objective == mst
    weak = solved(build_arborescence_extension(g, "c", root_row="out").model).objective
    assert weak < mst


@given(st.integers(2, 6), st.integers(0, 10**6))
def test_tree_backends_match_kruskal(n, seed):
    g = random_connected_graph(n, random.Random(seed))
    weight = kruskal_mst(g)[1]
    for h in (build_tree_extension(g), build_arborescence_extension(g)):
        o = solve_integral(h)
        assert o.objective == weight
        assert g.total_capacity(extract_tree(h, o).edges) == weight


def test_extract_tree_rejects_midpoint():
    g = triangle123()
    h = build_tree_extension(g)
    point = [F(0)] * h.model.num_vars
    for j in h.block("lambda"):
        point[j] = F(2, 3)
    with pytest.raises(NonVertexError):
        extract_tree(h, point)


# --- paths and cuts -----------------------------------------------------------------


def test_shortest_path_examples():
    g = Graph(["s", "a", "t"], [("s", "a", 1), ("a", "t", 1), ("s", "t", 3)])
    assert solved(build_shortest_path_lp(g, "s", "t").model).objective == 2
    assert solved(build_shortest_path_lp(Graph(["s", "t"], [("s", "t", F(4, 3))]), "s", "t").model).objective == F(4, 3)
    o = solved(build_shortest_path_lp(Graph(["s", "t"], []), "s", "t").model)
    assert isinstance(o, Infeasible)
    with pytest.raises(GraphError):
        build_shortest_path_lp(g, "s", "s")


def test_stcut_examples():
    assert solved(build_stcut_lp(path_graph_abc(), "a", "c").model).objective == 1
    assert solved(build_stcut_lp(Graph(["a", "b"], [("a", "b", F(7, 2))]), "a", "b").model).objective == F(7, 2)
    assert solved(build_stcut_lp(cycle4(), "a", "c").model).objective == 2
    with pytest.raises(GraphError):
        build_stcut_lp(cycle4(), "a", "a")


# --- Steiner -------------------------------------------------------------------------


def test_steiner_star():
    for backend in (EQ10, EQ11):
        h = build_steiner_approx(star(), ["s1", "s2", "s3"], backend)
        assert h.check_partition()
        assert solved(h.model).objective == 4


def test_steiner_two_terminals_is_shortest_path():
    g = random_connected_graph(6, random.Random(5))
    s, t = g.nodes[0], g.nodes[4]
    assert solved(build_steiner_approx(g, [s, t]).model).objective == dijkstra(g, s, t)[0]


def test_steiner_on_a_tree():
    g = Graph(list("abcde"), [("a", "b", 2), ("b", "c", 1), ("b", "d", 3), ("d", "e", F(1, 2))])
    s = ["a", "c", "e"]
    assert solved(build_steiner_approx(g, s).model).objective == kruskal_mst(metric_closure(g).induced(s))[1]


def test_steiner_errors():
    with pytest.raises(GraphError):
        build_steiner_approx(star(), ["s1"])
    with pytest.raises(GraphError):
        build_steiner_approx(Graph(["a", "b", "c"], [("a", "b", 1)]), ["a", "c"])
    with pytest.raises(ValueError):
        build_steiner_approx(star(), ["s1", "s2"], backend="eq99")


# --- Gomory-Hu ---------------------------------------------------------------------


def test_gomory_hu_path_example():
    g = path_graph_abc()
    h = build_gomory_hu_lp(g)
    assert h.check_partition()
    o = solve_integral(h)
    assert o.objective == 3
    tree = extract_tree(h, o)
    assert tree.edges == (("a", "b"), ("b", "c"))
    cuts = extract_fundamental_cuts(h, o)
    assert cuts[("a", "b")] == Cut(g, ["a"])
    assert cuts[("b", "c")] == Cut(g, ["c"])
    xs = h.values(o, "x")
    assert all(xs[(("a", "c"), e)] == 0 for e in g.edges)


def test_gomory_hu_small_examples():
    assert solved(build_gomory_hu_lp(Graph(["a", "b"], [("a", "b", F(5, 2))])).model).objective == F(5, 2)
    assert solved(build_gomory_hu_lp(cycle4()).model).objective == 6
    with pytest.raises(GraphError):
        build_gomory_hu_lp(Graph(["a", "b", "c"], [("a", "b", 1)]))


@given(st.integers(2, 5), st.integers(0, 10**6))
def test_gomory_hu_lp_matches_gusfield(n, seed):
    g = random_connected_graph(n, random.Random(seed))
    o = solve_integral(build_gomory_hu_lp(g))
    assert o.objective == requirement_value(gusfield_gomory_hu(g), g)


def test_gh_polytope_path_is_a_point():
    g = path_graph_abc()
    h = build_ghtree_polytope_extension(g)
    lam = list(h.block("lambda"))
    for k, e in enumerate(h.meta["edges"]):
        want = 1 if e in (("a", "b"), ("b", "c")) else 0
        for sense in (MIN, MAX):
            assert solved(h.model.with_objective({lam[k]: 1}, sense)).objective == want


def test_gh_polytope_symmetric_has_several_trees():
    g = two_paths_symmetric()
    h = build_ghtree_polytope_extension(g)
    lam = list(h.block("lambda"))
    points = set()
    for k in range(len(lam)):
        for sign in (1, -1):
            w = {j: sign * (2 ** i if i != k else 100) for i, j in enumerate(lam)}
            o = solved(h.model.with_objective(w, MAX))
            point = tuple(o.primal[j] for j in lam)
            if all(v in (0, 1) for v in point):
                points.add(point)
    assert len(points) >= 2


# --- T-cuts ---------------------------------------------------------------------------


def test_tcut_path_example():
    g = path_graph_abc()
    h = build_tcut_lp(g, ["a", "c"])
    assert h.check_partition()
    o = solve_integral(h, "theta")
    assert o.objective == 1
    assert extract_tcut(h, o) == Cut(g, ["c"])


def test_tcut_small_examples():
    g = Graph(["a", "b"], [("a", "b", F(3, 4))])
    assert solve_integral(build_tcut_lp(g, ["a", "b"]), "theta").objective == F(3, 4)
    h = build_tcut_lp(cycle4(), list("abcd"))
    o = solve_integral(h, "theta")
    assert o.objective == 2
    assert extract_tcut(h, o).capacity == 2


def test_tcut_errors():
    with pytest.raises(GraphError):
        build_tcut_lp(path_graph_abc(), ["a", "b", "c"])
    with pytest.raises(SizeCapError):
        build_tcut_lp(random_connected_graph(7, random.Random(1)), ["v0", "v1"])


def test_tcut_endpoint_rows_make_the_system_infeasible():
    """Imposing the matching rows at the path ends caps end edges at 1/2."""
    h = build_tcut_lp(path_graph_abc(), ["a", "c"], endpoint_rows=True)
    assert isinstance(solved(h.model), Infeasible)


def test_tcut_records_layer_solves():
    seen = []
    build_tcut_lp(path_graph_abc(), ["a", "c"], record=lambda m, o: seen.append(o.status))
    assert seen == ["optimal", "optimal"]


# --- handles ---------------------------------------------------------------------


def test_lex_weights():
    assert lex_weights(4) == [1, 2, 4, 8]


def test_handle_dump_and_sidecar():
    h = build_gomory_hu_lp(path_graph_abc())
    assert parse_lp(dump_lp(h.model)).variables == h.model.variables
    side = json.loads(h.sidecar_json())
    assert side["lambda"]["count"] == 3 and side["lambda"]["first"] == "lam[a,b]"
    assert sum(v["count"] for v in side.values()) == h.model.num_vars


def test_extract_tcut_rejects_fractional_theta():
    g = path_graph_abc()
    h = build_tcut_lp(g, ["a", "c"])
    point = [F(0)] * h.model.num_vars
    for j in h.block("theta"):
        point[j] = F(1, 3)
    with pytest.raises(ExtractionError):
        extract_tcut(h, point)


def test_extract_fundamental_cuts_detects_wrong_tree():
    g = path_graph_abc()
    h = build_gomory_hu_lp(g)
    o = solve_integral(h)
    wrong = list(o.primal)
    for j in h.block("x"):
        wrong[j] = F(0)
    with pytest.raises(ExtractionError):
        extract_fundamental_cuts(h, wrong)
    assert isinstance(Tree(g.nodes, [("a", "b"), ("b", "c")]), Tree)
