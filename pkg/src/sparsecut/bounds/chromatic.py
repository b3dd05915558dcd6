"""
Fractional and integer mixed chromatic numbers.

Both are covering programs over the maximal mixed stable sets: one column
per set, one ``>= 1`` row per node, minimizing the total weight.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from sparsecut.bounds.models import BoundReport
from sparsecut.core.constants import BoundKind, KindTag, LpStatus, Relation, Sense
from sparsecut.core.models import Instance, Row
from sparsecut.graphs.models import (InteractionGraph, MixedStableSet,
                                     SupportList)
from sparsecut.graphs.stable_sets import enumerate_mixed_stable_sets
from sparsecut.graphs.supports import super_sparse_list
from sparsecut.kernel.branch_and_bound import solve_milp
from sparsecut.kernel.lp import solve_lp

logger = logging.getLogger(__name__)


def _check_inputs(graph: InteractionGraph, support_list: SupportList) -> None:
    if support_list.node_count != graph.node_count:
        raise ValueError(
            f"support list has {support_list.node_count} nodes, graph has {graph.node_count}"
        )
    if not support_list.covers():
        raise ValueError("support list does not cover every node; no mixed stable cover exists")


def cover_program(graph: InteractionGraph, sets: List[MixedStableSet]) -> Instance:
    """``min 1^T y`` s.t. every node is covered, ``0 <= y <= 1``."""
    rows = []
    for v in graph.nodes:
        coeffs = [(k, 1) for k, m in enumerate(sets) if v in m.nodes]
        rows.append(Row(coeffs=coeffs, relation=Relation.GE, rhs=1))
    return Instance.build(
        [1] * len(sets),
        rows,
        sense=Sense.MINIMIZE,
        kind_tag=KindTag.COVERING,
        name="mixed stable set cover",
    )


def fractional_mixed_chromatic(
    graph: InteractionGraph,
    support_list: SupportList,
    node_cap: Optional[int] = None,
) -> BoundReport:
    """
    Exact fractional mixed chromatic number eta^V(G).

    Args:
        graph: Interaction graph
        support_list: Support list covering the nodes
        node_cap: Override of the node cap for the enumeration
    Returns:
        BoundReport (packing_eta) whose certificate is the optimal weighting
    """
    _check_inputs(graph, support_list)
    if graph.node_count == 0:
        return BoundReport(bound_kind=BoundKind.PACKING_ETA, value=Fraction(0),
                           graph=graph, support_list=support_list)
    sets = enumerate_mixed_stable_sets(graph, support_list, maximal_only=True, node_cap=node_cap)
    result = solve_lp(cover_program(graph, sets))
    if result.status != LpStatus.OPTIMAL:
        raise RuntimeError(f"covering LP ended {result.status.value}")
    weights = tuple((m, y) for m, y in zip(sets, result.solution) if y)
    logger.debug("eta = %s over %d maximal sets", result.value, len(sets))
    return BoundReport(
        bound_kind=BoundKind.PACKING_ETA,
        value=result.value,
        graph=graph,
        support_list=support_list,
        weights=weights,
    )


def mixed_chromatic(
    graph: InteractionGraph,
    support_list: SupportList,
    node_cap: Optional[int] = None,
) -> BoundReport:
    """
    Exact mixed chromatic number: fewest mixed stable sets covering all nodes.

    Args:
        graph: Interaction graph
        support_list: Support list covering the nodes
        node_cap: Override of the node cap for the enumeration
    Returns:
        BoundReport (covering_eta_bar) whose certificate is the chosen family
    """
    _check_inputs(graph, support_list)
    if graph.node_count == 0:
        return BoundReport(bound_kind=BoundKind.COVERING_ETA_BAR, value=Fraction(0),
                           graph=graph, support_list=support_list)
    sets = enumerate_mixed_stable_sets(graph, support_list, maximal_only=True, node_cap=node_cap)
    result = solve_milp(cover_program(graph, sets))
    if result.status != LpStatus.OPTIMAL:
        raise RuntimeError(f"covering MILP ended {result.status.value}")
    family = tuple(m for m, y in zip(sets, result.solution) if y == 1)
    logger.debug("eta bar = %s (%d nodes explored)", result.value, result.nodes)
    return BoundReport(
        bound_kind=BoundKind.COVERING_ETA_BAR,
        value=result.value,
        graph=graph,
        support_list=support_list,
        family=family,
    )


def fractional_chromatic_number(graph: InteractionGraph) -> Fraction:
    """Classical fractional chromatic number (singleton support list)."""
    return fractional_mixed_chromatic(graph, super_sparse_list(graph)).value
