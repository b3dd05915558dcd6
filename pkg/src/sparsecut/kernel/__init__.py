"""
Exact LP, MILP, enumeration and closure routines.
"""

from .branch_and_bound import milp_value, solve_milp
from .closure import (closure_contains, exact_closure_value, maximal_supports,
                      projection_tables)
from .decomposition import decomposed_milp_value
from .enumeration import enumerate_integer_points
from .lp import relaxation_program, solve_lp
from .models import LpResult, MilpResult, PointSet

__all__ = [
    "LpResult",
    "MilpResult",
    "PointSet",
    "closure_contains",
    "decomposed_milp_value",
    "enumerate_integer_points",
    "exact_closure_value",
    "maximal_supports",
    "milp_value",
    "projection_tables",
    "relaxation_program",
    "solve_lp",
    "solve_milp",
]
