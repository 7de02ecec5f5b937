"""Graphs and exact combinatorial oracles."""

from .core import INF, Cut, Digraph, Edge, Graph, GraphError, Tree, complete_edges, edge_key, fmt_edge
from .algorithms import (
    RequirementMismatch,
    designated_endpoint,
    dijkstra,
    enumerate_spanning_trees,
    fundamental_cut,
    gusfield_gomory_hu,
    is_gomory_hu_tree,
    kruskal_mst,
    max_flow_min_cut,
    metric_closure,
    requirement_value,
    symmetric_difference,
    tree_distances,
    tree_path,
)
from .brute import all_cuts, brute_force_min_cut, brute_force_min_tcut, brute_force_steiner
from .io import dump_graph, graph_from_dict, graph_to_dict, load_graph

__all__ = [
    "INF", "Cut", "Digraph", "Edge", "Graph", "GraphError", "Tree", "complete_edges", "edge_key", "fmt_edge",
    "RequirementMismatch", "designated_endpoint", "dijkstra", "enumerate_spanning_trees", "fundamental_cut",
    "gusfield_gomory_hu", "is_gomory_hu_tree", "kruskal_mst", "max_flow_min_cut", "metric_closure",
    "requirement_value", "symmetric_difference", "tree_distances", "tree_path",
    "all_cuts", "brute_force_min_cut", "brute_force_min_tcut", "brute_force_steiner",
    "dump_graph", "graph_from_dict", "graph_to_dict", "load_graph",
]
