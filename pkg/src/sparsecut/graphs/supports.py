"""
Support lists: which node subsets cuts may live on.
"""

from typing import Iterable, List, Optional

from sparsecut.core.constants import GraphKind, SupportMode
from sparsecut.core.models import Instance
from sparsecut.graphs.interaction import support_columns
from sparsecut.graphs.models import InteractionGraph, NodeSet, SupportList


def _dedupe(members) -> List[NodeSet]:
    seen, ordered = set(), []
    for m in members:
        m = frozenset(m)
        if m and m not in seen:
            seen.add(m)
            ordered.append(m)
    return ordered


def super_sparse_list(graph: InteractionGraph) -> SupportList:
    """Every node on its own."""
    return SupportList(node_count=graph.node_count, members=[[v] for v in graph.nodes])


def natural_sparse_list(instance: Instance, graph: InteractionGraph) -> SupportList:
    """
    One member per row, in row order, without repeats. Hull constraints
    count as rows of a packing instance.

    For a packing graph the member of a row is the set of blocks meeting its
    support; for a covering graph it is the node holding the row.
    Args:
        instance: The instance the graph was built from
        graph: Its packing or covering interaction graph
    Returns:
        The natural support list
    """
    if graph.kind == GraphKind.COVERING:
        holder = {r: v for v in graph.nodes for r in graph.node_to_rows[v]}
        members = [[holder[r]] for r in range(instance.num_rows) if r in holder]
        return SupportList(node_count=graph.node_count, members=_dedupe(members))
    block_of = {}
    for v in graph.nodes:
        for j in graph.node_to_columns[v]:
            block_of[j] = v
    members = [{block_of[j] for j in support} for support in instance.constraint_supports()]
    return SupportList(node_count=graph.node_count, members=_dedupe(members))


def edge_support_list(graph: InteractionGraph) -> SupportList:
    """Each edge as a member, plus isolated nodes as singletons."""
    members = [set(e) for e in graph.edges]
    touched = {v for e in graph.edges for v in e}
    members.extend({v} for v in graph.nodes if v not in touched)
    return SupportList(node_count=graph.node_count, members=_dedupe(members))


def trivial_support_list(graph: InteractionGraph) -> SupportList:
    """The single member ``V``; its closure is the integer hull."""
    if graph.node_count == 0:
        return SupportList(node_count=0)
    return SupportList(node_count=graph.node_count, members=[list(graph.nodes)])


def list_columns(graph: InteractionGraph, support_list: SupportList) -> List[NodeSet]:
    """Column-index sets of every member."""
    return [support_columns(graph, member) for member in support_list]


def support_list_for(
    instance: Instance,
    graph: InteractionGraph,
    mode: SupportMode,
    custom: Optional[Iterable[Iterable[int]]] = None,
) -> SupportList:
    """The super sparse, natural sparse or a caller-given support list."""
    if mode == SupportMode.SUPER_SPARSE:
        return super_sparse_list(graph)
    if mode == SupportMode.NATURAL_SPARSE:
        return natural_sparse_list(instance, graph)
    if not custom:
        raise ValueError("custom support mode needs at least one support")
    return SupportList(node_count=graph.node_count, members=[list(m) for m in custom])
