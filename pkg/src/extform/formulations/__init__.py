"""Builders for the compact LP formulations and solution extractors."""

from .extract import (
    ExtractionError,
    NonVertexError,
    extract_fundamental_cuts,
    extract_tcut,
    extract_tree,
    lex_weights,
    solve_integral,
)
from .gomory_hu import build_ghtree_polytope_extension, build_gomory_hu_lp
from .handle import BlockRecorder, FormulationHandle, ename
from .hull import (
    DescriptionError,
    ExtensionDesc,
    PolyhedronDesc,
    build_balas_hull,
    build_coupled,
    extension_from_model,
    simplex_coupling,
    two_phase,
)
from .paths import build_shortest_path_lp, build_stcut_lp
from .steiner import BACKENDS, build_steiner_approx, steiner_parts
from .tcut import DEFAULT_MAX_NODES, SizeCapError, build_tcut_lp, check_terminals
from .trees import EQ10, EQ11, add_arborescence_extension, add_tree_extension, build_arborescence_extension, build_tree_extension

__all__ = [
    "ExtractionError", "NonVertexError", "extract_fundamental_cuts", "extract_tcut", "extract_tree",
    "lex_weights", "solve_integral",
    "build_ghtree_polytope_extension", "build_gomory_hu_lp",
    "BlockRecorder", "FormulationHandle", "ename",
    "DescriptionError", "ExtensionDesc", "PolyhedronDesc", "build_balas_hull", "build_coupled",
    "extension_from_model", "simplex_coupling", "two_phase",
    "build_shortest_path_lp", "build_stcut_lp",
    "BACKENDS", "build_steiner_approx", "steiner_parts",
    "DEFAULT_MAX_NODES", "SizeCapError", "build_tcut_lp", "check_terminals",
    "EQ10", "EQ11", "add_arborescence_extension", "add_tree_extension",
    "build_arborescence_extension", "build_tree_extension",
]
