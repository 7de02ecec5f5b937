"""Exact rational linear programming."""

from .model import (
    EQ,
    GE,
    LE,
    MAX,
    MIN,
    Constraint,
    Model,
    ModelBuilder,
    ModelError,
    NormalForm,
    NormalRow,
    Variable,
    build_model,
    normalize,
)
from .simplex import BLAND, DANTZIG, RULES, Aborted, Infeasible, Optimal, SolveOutcome, Unbounded, solve
from .certify import certificate_problems, is_certified
from .face import FaceSystemError, build_optimal_face_system
from .lpfile import LPFormatError, dump_lp, parse_lp, read_lp, write_lp

__all__ = [
    "EQ", "GE", "LE", "MAX", "MIN",
    "Constraint", "Model", "ModelBuilder", "ModelError", "NormalForm", "NormalRow", "Variable",
    "build_model", "normalize",
    "BLAND", "DANTZIG", "RULES", "Aborted", "Infeasible", "Optimal", "SolveOutcome", "Unbounded", "solve",
    "certificate_problems", "is_certified",
    "FaceSystemError", "build_optimal_face_system",
    "LPFormatError", "dump_lp", "parse_lp", "read_lp", "write_lp",
]
