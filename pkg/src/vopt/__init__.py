"""Descent methods for vector optimization under polyhedral ordering cones."""

from .cone import K1, K2, R2_PLUS, PolyhedralCone, cone_by_name, cone_leq, cone_strict_lt
from .problems import VectorProblem, get_problem, sample_start
from .solver import SolveTrace, SolverConfig, run

__all__ = [
    "PolyhedralCone", "R2_PLUS", "K1", "K2", "cone_by_name",
    "cone_leq", "cone_strict_lt",
    "VectorProblem", "get_problem", "sample_start",
    "SolverConfig", "SolveTrace", "run",
]

__version__ = "0.1.0"
