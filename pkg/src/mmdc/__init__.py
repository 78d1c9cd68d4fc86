"""Minimum-cost many-to-many matching with demands and capacities."""

from .flow import feasible, min_cost
from .gadget import GadgetGraph, build, side_counts
from .hungarian import Assignment, WeightMatrix
from .instance import (
    COST_LIMIT,
    Infeasible,
    MatchResult,
    ProblemInstance,
    ValidationError,
    from_points,
    necessary_feasibility,
    transpose,
    validate,
)
from .oracle import EnumerationBudget, brute_force, count_feasible
from .solver import ReductionError, SolveReport, solve_mmdc

__all__ = [
    "Assignment", "COST_LIMIT", "EnumerationBudget", "GadgetGraph", "Infeasible", "MatchResult",
    "ProblemInstance", "ReductionError", "SolveReport", "ValidationError", "WeightMatrix",
    "brute_force", "build", "count_feasible", "feasible", "from_points", "min_cost",
    "necessary_feasibility", "side_counts", "solve_mmdc", "transpose", "validate",
]
