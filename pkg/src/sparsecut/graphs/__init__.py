"""
Interaction graphs, support lists and mixed stable sets.
"""

from .interaction import (build_covering_graph, build_graph,
                          build_packing_graph, support_columns)
from .models import InteractionGraph, MixedStableSet, SupportList
from .stable_sets import enumerate_mixed_stable_sets, is_mixed_stable
from .supports import (edge_support_list, list_columns, natural_sparse_list,
                       super_sparse_list, support_list_for,
                       trivial_support_list)

__all__ = [
    "InteractionGraph",
    "MixedStableSet",
    "SupportList",
    "build_covering_graph",
    "build_graph",
    "build_packing_graph",
    "edge_support_list",
    "enumerate_mixed_stable_sets",
    "is_mixed_stable",
    "list_columns",
    "natural_sparse_list",
    "super_sparse_list",
    "support_columns",
    "support_list_for",
    "trivial_support_list",
]
