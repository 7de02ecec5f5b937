import json
import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extform.graphs import (
    INF,
    Cut,
    Graph,
    GraphError,
    Tree,
    all_cuts,
    brute_force_min_cut,
    brute_force_min_tcut,
    brute_force_steiner,
    dijkstra,
    dump_graph,
    enumerate_spanning_trees,
    fundamental_cut,
    graph_from_dict,
    gusfield_gomory_hu,
    is_gomory_hu_tree,
    kruskal_mst,
    load_graph,
    max_flow_min_cut,
    metric_closure,
    requirement_value,
    symmetric_difference,
    tree_path,
)
from extform.graphs.generate import cycle4, path_graph_abc, random_connected_graph, star, triangle123


@st.composite
def graphs(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 10**6))
    return random_connected_graph(n, random.Random(seed))


# --- data model ------------------------------------------------------------------


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(["a", "a"], [])
    with pytest.raises(GraphError):
        Graph(["a"], [("a", "a", 1)])
    with pytest.raises(GraphError):
        Graph(["a", "b"], [("a", "b", 1), ("b", "a", 2)])
    with pytest.raises(GraphError):
        Graph(["a", "b"], [("a", "b", -1)])
    with pytest.raises(GraphError):
        Graph(["a", "b"], [("a", "c", 1)])


def test_tree_validation():
    with pytest.raises(GraphError):
        Tree(["a", "b", "c"], [("a", "b")])
    with pytest.raises(GraphError):
        Tree(["a", "b", "c", "d"], [("a", "b"), ("b", "a"), ("c", "d")])


def test_cut_equality_ignores_shore_side():
    g = path_graph_abc()
    assert Cut(g, ["c"]) == Cut(g, ["a", "b"])
    assert Cut(g, ["c"]).capacity == 1
    with pytest.raises(GraphError):
        Cut(g, [])


def test_json_round_trip(tmp_path):
    g = Graph(["a", "b"], [("a", "b", F(3, 7))])
    p = tmp_path / "g.json"
    p.write_text(dump_graph(g))
    assert load_graph(p) == g
    with pytest.raises(GraphError):
        graph_from_dict({"nodes": ["a", "b"], "edges": [{"u": "a", "v": "b", "c": 0.5}]})
    p.write_text("{not json")
    with pytest.raises(GraphError):
        load_graph(p)
    assert json.loads(dump_graph(g))["edges"][0]["c"] == "3/7"


# --- shortest paths and closure ------------------------------------------------


def test_dijkstra_examples():
    g = Graph(["s", "a", "t"], [("s", "a", 1), ("a", "t", 1), ("s", "t", 3)])
    assert dijkstra(g, "s", "t") == (2, [("a", "s"), ("a", "t")])
    assert dijkstra(g, "s", "s") == (0, [])
    assert dijkstra(Graph(["s", "t"], []), "s", "t")[0] == INF


def test_metric_closure_examples():
    c = metric_closure(triangle123())
    assert c.cap == {("1", "2"): 1, ("1", "3"): 2, ("2", "3"): 3}
    assert metric_closure(Graph(["a", "b"], [("a", "b", 5)])).cap == {("a", "b"): 5}
    assert metric_closure(Graph(["a", "b"], [])).cap[("a", "b")] == INF


# --- spanning trees --------------------------------------------------------------


def test_kruskal_examples():
    assert kruskal_mst(triangle123())[1] == 3
    t = Graph(["a", "b", "c"], [("a", "b", 4), ("b", "c", 9)])
    assert kruskal_mst(t)[0].edges == t.edges
    k4 = Graph(list("abcd"), [(u, v, F(5, 2)) for u, v in combinations("abcd", 2)])
    assert kruskal_mst(k4)[1] == 3 * F(5, 2)


@given(graphs())
def test_kruskal_is_minimum(g):
    best = min(g.total_capacity(t.edges) for t in enumerate_spanning_trees(g.nodes, g.edges))
    assert kruskal_mst(g)[1] == best


def test_spanning_tree_count_of_k4():
    assert len(list(enumerate_spanning_trees(list("abcd")))) == 16


# --- cuts and flows ------------------------------------------------------------------


def test_max_flow_examples():
    value, cut = max_flow_min_cut(path_graph_abc(), "a", "c")
    assert value == 1 and cut == Cut(path_graph_abc(), ["c"])
    assert max_flow_min_cut(Graph(["a", "b"], [("a", "b", F(2, 3))]), "a", "b")[0] == F(2, 3)
    assert max_flow_min_cut(cycle4(), "a", "c")[0] == 2
    value, cut = max_flow_min_cut(Graph(["s", "t"], []), "s", "t")
    assert value == 0 and cut.edges == ()


@given(graphs())
def test_max_flow_equals_brute_force(g):
    for s, t in combinations(g.nodes, 2):
        value, cut = max_flow_min_cut(g, s, t)
        assert value == brute_force_min_cut(g, s, t)
        assert (s in cut.shore) != (t in cut.shore)
        assert cut.capacity == value


def test_gusfield_examples():
    h = gusfield_gomory_hu(path_graph_abc())
    assert h.edges == (("a", "b"), ("b", "c"))
    assert h.labels == {("a", "b"): 2, ("b", "c"): 1}
    h = gusfield_gomory_hu(cycle4())
    assert set(h.labels.values()) == {2}
    h = gusfield_gomory_hu(Graph(["a", "b"], [("a", "b", 7)]))
    assert h.labels == {("a", "b"): 7}


@given(graphs())
def test_gusfield_tree_is_gomory_hu(g):
    h = gusfield_gomory_hu(g)
    assert is_gomory_hu_tree(h, g)
    for u, v in combinations(g.nodes, 2):
        path = tree_path(h, u, v)
        assert min(h.labels[f] for f in path) == brute_force_min_cut(g, u, v)


def test_fundamental_cut_examples():
    g = path_graph_abc()
    h = Tree(g.nodes, [("a", "b"), ("b", "c")])
    assert fundamental_cut(h, ("a", "b"), g) == Cut(g, ["a"])
    assert fundamental_cut(h, ("a", "b"), g).capacity == 2
    assert fundamental_cut(h, ("b", "c"), g) == Cut(g, ["c"])
    star_a = Tree(cycle4().nodes, [("a", "b"), ("a", "c"), ("a", "d")])
    cut = fundamental_cut(star_a, ("a", "b"), cycle4())
    assert cut == Cut(cycle4(), ["b"]) and cut.capacity == 2


def test_requirement_examples():
    g = path_graph_abc()
    assert requirement_value(Tree(g.nodes, [("a", "b"), ("b", "c")]), g) == 3
    assert requirement_value(Tree(g.nodes, [("a", "c"), ("b", "c")]), g) == 5
    assert requirement_value(Tree(g.nodes, [("a", "b"), ("a", "c")]), g) == 4


@given(graphs(max_n=5))
def test_gomory_hu_trees_minimize_requirement(g):
    best = min(requirement_value(t, g) for t in enumerate_spanning_trees(g.nodes))
    assert requirement_value(gusfield_gomory_hu(g), g) == best


# --- T-cuts, Steiner trees, paths ------------------------------------------------------


def test_min_tcut_examples():
    g = path_graph_abc()
    value, cut = brute_force_min_tcut(g, ["a", "c"])
    assert value == 1 and cut == Cut(g, ["c"])
    assert brute_force_min_tcut(Graph(["a", "b"], [("a", "b", F(5, 3))]), ["a", "b"])[0] == F(5, 3)
    assert brute_force_min_tcut(cycle4(), list("abcd"))[0] == 2
    with pytest.raises(GraphError):
        brute_force_min_tcut(g, ["a", "b", "c"])


def test_steiner_examples():
    assert brute_force_steiner(star(), ["s1", "s2", "s3"])[0] == 3
    assert brute_force_steiner(star(), ["s1"]) == (0, [])
    g = triangle123()
    assert brute_force_steiner(g, g.nodes)[0] == kruskal_mst(g)[1]


def test_tree_path_and_symmetric_difference():
    h = Tree(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert tree_path(h, "a", "c") == [("a", "b"), ("b", "c")]
    assert symmetric_difference({("a", "b")}, {("a", "b")}) == set()
    assert symmetric_difference({("a", "b")}, {("b", "c")}) == {("a", "b"), ("b", "c")}


@given(graphs(max_n=6))
def test_all_cuts_enumerates_each_cut_once(g):
    cuts = list(all_cuts(g))
    assert len(cuts) == 2 ** (len(g.nodes) - 1) - 1
    assert len(set(cuts)) == len(cuts)
