"""
Chromatic, density and closed-form bounds.
"""

from .chromatic import (cover_program, fractional_chromatic_number,
                        fractional_mixed_chromatic, mixed_chromatic)
from .density import corrected_average_density
from .models import BoundReport
from .theoretical import (brooks_bound, closed_form_cycle_bound,
                          closed_form_tree_bound, molloy_reed_bound,
                          theoretical_bound)
from .tree_coloring import tree_mixed_coloring

__all__ = [
    "BoundReport",
    "brooks_bound",
    "closed_form_cycle_bound",
    "closed_form_tree_bound",
    "corrected_average_density",
    "cover_program",
    "fractional_chromatic_number",
    "fractional_mixed_chromatic",
    "mixed_chromatic",
    "molloy_reed_bound",
    "theoretical_bound",
    "tree_mixed_coloring",
]
