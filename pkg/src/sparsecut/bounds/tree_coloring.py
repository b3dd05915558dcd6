"""
Edge/leaf labeling that covers a tree by 2*Delta - 1 mixed stable sets.
"""

import logging
from collections import deque
from typing import Dict, List, Set, Tuple

import networkx as nx

from sparsecut.core.errors import NotATreeError
from sparsecut.graphs.models import InteractionGraph, MixedStableSet

logger = logging.getLogger(__name__)


def tree_mixed_coloring(tree_graph: InteractionGraph) -> List[MixedStableSet]:
    """
    Cover every node of a tree exactly Delta times with 2*Delta - 1 mixed
    stable sets subordinate to the edges.

    Internal nodes are padded with extra leaves up to degree Delta, edges and
    leaves are labeled breadth-first from an internal root, and the padding is
    stripped again (an edge to a padding leaf becomes a singleton).
    Args:
        tree_graph: A tree with at least one edge
    Returns:
        One mixed stable set per label 1..2*Delta-1
    """
    graph = tree_graph.to_networkx()
    if graph.number_of_nodes() == 0 or not nx.is_tree(graph):
        raise NotATreeError("tree_mixed_coloring needs a tree")
    delta = tree_graph.max_degree
    if delta == 0:
        raise NotATreeError("a single node has no edges to label")
    n = tree_graph.node_count
    if delta == 1:
        return [MixedStableSet(node_count=n, parts=[list(tree_graph.edges[0])])]

    labels = 2 * delta - 1
    padded = graph.copy()
    next_node = n
    for v in sorted(graph.nodes):
        if graph.degree(v) >= 2:
            for _ in range(delta - graph.degree(v)):
                padded.add_edge(v, next_node)
                next_node += 1

    root = min(v for v in graph.nodes if graph.degree(v) >= 2)
    edge_label: Dict[Tuple[int, int], int] = {}
    leaf_labels: Dict[int, Set[int]] = {}

    def key(u: int, v: int) -> Tuple[int, int]:
        return (min(u, v), max(u, v))

    for k, child in enumerate(sorted(padded.neighbors(root)), start=1):
        edge_label[key(root, child)] = k
    parent = {root: None}
    queue = deque()
    for child in sorted(padded.neighbors(root)):
        parent[child] = root
        queue.append(child)
    while queue:
        v = queue.popleft()
        p = parent[v]
        used = {edge_label[key(p, w)] for w in padded.neighbors(p)}
        free = [lab for lab in range(1, labels + 1) if lab not in used]
        children = sorted(w for w in padded.neighbors(v) if w != p)
        if children:
            for child, lab in zip(children, free):
                edge_label[key(v, child)] = lab
                parent[child] = v
                queue.append(child)
        else:
            leaf_labels[v] = set(free)

    sets = []
    for lab in range(1, labels + 1):
        parts = []
        for (u, v), edge_lab in sorted(edge_label.items()):
            if edge_lab != lab:
                continue
            kept = [w for w in (u, v) if w < n]
            parts.append(kept)
        parts.extend([v] for v, labs in sorted(leaf_labels.items()) if lab in labs and v < n)
        sets.append(MixedStableSet(node_count=n, parts=parts))
    logger.debug("tree coloring: Delta=%d, %d sets", delta, len(sets))
    return sets
