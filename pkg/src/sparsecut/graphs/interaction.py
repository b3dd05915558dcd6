"""
Interaction graphs of block-structured constraint matrices.
"""

import itertools
import logging
from typing import Iterable, List

from sparsecut.core.constants import Axis, GraphKind
from sparsecut.core.errors import PartitionMismatchError
from sparsecut.core.models import BlockPartition, Instance
from sparsecut.graphs.models import InteractionGraph, NodeSet

logger = logging.getLogger(__name__)


def _check_partition(partition: BlockPartition, axis: Axis, size: int) -> None:
    if partition.axis != axis:
        raise PartitionMismatchError(
            f"expected a partition of the {axis.value}, got one of the {partition.axis.value}"
        )
    if partition.size != size:
        raise PartitionMismatchError(
            f"partition covers {partition.size} {axis.value}, the instance has {size}"
        )


def build_packing_graph(instance: Instance, col_partition: BlockPartition) -> InteractionGraph:
    """
    Nodes are column blocks; two blocks are adjacent when some row has
    nonzero entries in both.

    Args:
        instance: The instance providing the rows
        col_partition: Partition of the columns into blocks
    Returns:
        The packing interaction graph
    """
    _check_partition(col_partition, Axis.COLUMNS, instance.num_vars)
    block_of = {}
    for k, block in enumerate(col_partition.blocks):
        for j in block:
            block_of[j] = k
    edges = set()
    for support in instance.constraint_supports():
        touched = sorted({block_of[j] for j in support})
        edges.update(itertools.combinations(touched, 2))
    graph = InteractionGraph(
        kind=GraphKind.PACKING,
        node_count=col_partition.num_blocks,
        edges=edges,
        node_to_columns=col_partition.blocks,
    )
    logger.debug("packing graph: %d nodes, %d edges", graph.node_count, graph.edge_count)
    return graph


def build_covering_graph(instance: Instance, row_partition: BlockPartition) -> InteractionGraph:
    """
    Nodes are row blocks; two blocks are adjacent when some column has
    nonzero entries in both.

    Args:
        instance: The instance providing the rows
        row_partition: Partition of the rows into blocks
    Returns:
        The covering interaction graph; ``node_to_columns`` holds the union
        of the row supports of every block
    """
    _check_partition(row_partition, Axis.ROWS, instance.num_rows)
    supports = instance.row_supports()
    usupp: List[NodeSet] = [
        frozenset().union(*(supports[r] for r in block)) for block in row_partition.blocks
    ]
    edges = [
        (a, b)
        for a, b in itertools.combinations(range(len(usupp)), 2)
        if usupp[a] & usupp[b]
    ]
    graph = InteractionGraph(
        kind=GraphKind.COVERING,
        node_count=len(usupp),
        edges=edges,
        node_to_columns=usupp,
        node_to_rows=row_partition.blocks,
    )
    logger.debug("covering graph: %d nodes, %d edges", graph.node_count, graph.edge_count)
    return graph


def support_columns(graph: InteractionGraph, node_set: Iterable[int]) -> NodeSet:
    """Columns behind a set of nodes (blocks, or unions of row supports)."""
    nodes = list(node_set)
    if any(not 0 <= v < graph.node_count for v in nodes):
        raise ValueError(f"node set {sorted(nodes)} leaves the node range")
    return frozenset().union(*(graph.node_to_columns[v] for v in nodes))


def build_graph(instance: Instance, partition: BlockPartition) -> InteractionGraph:
    """Packing graph for a column partition, covering graph for a row partition."""
    if partition.axis == Axis.ROWS:
        return build_covering_graph(instance, partition)
    return build_packing_graph(instance, partition)
