"""
Closed-form and dispatching bounds on closure strength.
"""

from fractions import Fraction

import networkx as nx

from sparsecut.bounds.chromatic import fractional_mixed_chromatic, mixed_chromatic
from sparsecut.bounds.density import corrected_average_density
from sparsecut.bounds.models import BoundReport
from sparsecut.core.constants import BoundKind, KindTag
from sparsecut.core.errors import DisconnectedGraphError
from sparsecut.graphs.models import InteractionGraph, SupportList


def theoretical_bound(
    instance_kind: KindTag, graph: InteractionGraph, support_list: SupportList
) -> BoundReport:
    """
    Bound factor for the closure over ``support_list``.

    Packing: z^cut <= eta * z^I. Covering: z^cut >= z^I / eta_bar, so the
    reported factor is eta_bar. General: z^cut <= (|V| + 1 - D_V) * z^I.
    """
    kind = KindTag(instance_kind)
    if kind == KindTag.PACKING:
        return fractional_mixed_chromatic(graph, support_list)
    if kind == KindTag.COVERING:
        return mixed_chromatic(graph, support_list)
    density = corrected_average_density(support_list)
    return density.model_copy(
        update={
            "value": graph.node_count + 1 - density.density,
            "graph": graph,
        }
    )


def _is_complete(graph: nx.Graph) -> bool:
    n = graph.number_of_nodes()
    return graph.number_of_edges() == n * (n - 1) // 2


def _is_odd_cycle(graph: nx.Graph) -> bool:
    n = graph.number_of_nodes()
    return n >= 3 and n % 2 == 1 and all(d == 2 for _, d in graph.degree)


def brooks_bound(graph: InteractionGraph) -> BoundReport:
    """Delta, or Delta + 1 for complete graphs and odd cycles."""
    g = graph.to_networkx()
    if g.number_of_nodes() == 0 or not nx.is_connected(g):
        raise DisconnectedGraphError("Brooks' bound needs a connected graph")
    delta = graph.max_degree
    if _is_complete(g) or _is_odd_cycle(g):
        delta += 1
    return BoundReport(bound_kind=BoundKind.BROOKS, value=Fraction(delta), graph=graph)


def closed_form_cycle_bound(K: int) -> Fraction:
    """eta of the cycle C_K with the edge support list."""
    if K < 3:
        raise ValueError(f"cycle length must be at least 3, got {K}")
    k, rest = divmod(K, 3)
    if rest == 0:
        return Fraction(3, 2)
    if rest == 1:
        return Fraction(3 * k + 1, 2 * k)
    return Fraction(3 * k + 2, 2 * k + 1)


def closed_form_tree_bound(delta: int) -> Fraction:
    """(2*Delta - 1) / Delta, the natural-sparse factor of trees."""
    if delta < 1:
        raise ValueError(f"maximum degree must be positive, got {delta}")
    return Fraction(2 * delta - 1, delta)


def molloy_reed_bound(graph: InteractionGraph) -> Fraction:
    """(omega + Delta + 1) / 2, an upper bound on the fractional chromatic number."""
    g = graph.to_networkx()
    omega = max((len(c) for c in nx.find_cliques(g)), default=0)
    return Fraction(omega + graph.max_degree + 1, 2)
