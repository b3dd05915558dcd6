"""
Mixed stable sets subordinate to a support list.
"""

import logging
from typing import Iterable, List, Optional

from sparsecut.core.config import get_settings
from sparsecut.core.errors import CapExceededError
from sparsecut.graphs.models import (InteractionGraph, MixedStableSet,
                                     SupportList)

logger = logging.getLogger(__name__)


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def _nodes(mask: int) -> List[int]:
    out, v = [], 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def is_mixed_stable(
    graph: InteractionGraph, support_list: SupportList, parts: Iterable[Iterable[int]]
) -> bool:
    """
    Check the three defining conditions: every part inside a list member,
    parts pairwise disjoint, and no edge between two distinct parts.
    """
    parts = [frozenset(p) for p in parts]
    if any(not p or not support_list.admits(p) for p in parts):
        return False
    seen: set = set()
    part_index = {}
    for k, p in enumerate(parts):
        if seen & p:
            return False
        seen |= p
        for v in p:
            part_index[v] = k
    for u, v in graph.edges:
        if u in part_index and v in part_index and part_index[u] != part_index[v]:
            return False
    return True


class _Search:
    """Depth-first assignment of nodes to parts, in node order."""

    def __init__(self, graph: InteractionGraph, support_list: SupportList,
                 maximal_only: bool, cap: int):
        self.q = graph.node_count
        self.adj = graph.neighbor_masks()
        self.members = support_list.masks()
        self.maximal_only = maximal_only
        self.cap = cap
        self.found: List[List[int]] = []

    def admits(self, mask: int) -> bool:
        return any(mask & ~m == 0 for m in self.members)

    def can_join(self, v: int, parts: List[int], k: int) -> bool:
        """``v`` may enter part ``k`` (or a new part when ``k == len(parts)``)."""
        target = parts[k] if k < len(parts) else 0
        if not self.admits(target | (1 << v)):
            return False
        others = 0
        for i, p in enumerate(parts):
            if i != k:
                others |= p
        return self.adj[v] & others == 0

    def is_maximal(self, parts: List[int]) -> bool:
        covered = 0
        for p in parts:
            covered |= p
        for v in range(self.q):
            if covered >> v & 1:
                continue
            if any(self.can_join(v, parts, k) for k in range(len(parts) + 1)):
                return False
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                if self.admits(parts[a] | parts[b]):
                    return False
        return True

    def record(self, parts: List[int]) -> None:
        if not parts:
            return
        if self.maximal_only and not self.is_maximal(parts):
            return
        self.found.append(list(parts))
        if len(self.found) > self.cap:
            raise CapExceededError("mixed stable set count", len(self.found), self.cap)

    def run(self, v: int, parts: List[int]) -> None:
        if v == self.q:
            self.record(parts)
            return
        bit = 1 << v
        for k in range(len(parts)):
            if self.can_join(v, parts, k):
                parts[k] |= bit
                self.run(v + 1, parts)
                parts[k] &= ~bit
        if self.can_join(v, parts, len(parts)):
            parts.append(bit)
            self.run(v + 1, parts)
            parts.pop()
        self.run(v + 1, parts)


def enumerate_mixed_stable_sets(
    graph: InteractionGraph,
    support_list: SupportList,
    maximal_only: bool = True,
    node_cap: Optional[int] = None,
    set_cap: Optional[int] = None,
) -> List[MixedStableSet]:
    """
    List the nonempty mixed stable sets subordinate to ``support_list``.

    A set is maximal when no uncovered node can be added (to a part or as a
    new part) and no two parts can be merged inside a list member.
    Args:
        graph: Interaction graph
        support_list: Support list over the same nodes
        maximal_only: Keep only maximal sets
        node_cap: Node-count cap, defaults to ``SPARSECUT_NODE_CAP``
        set_cap: Cap on the number of sets, defaults to ``SPARSECUT_STABLE_SET_CAP``
    Returns:
        The sets in depth-first order (nodes ascending, joining before skipping)
    """
    settings = get_settings()
    node_cap = settings.node_cap if node_cap is None else node_cap
    set_cap = settings.stable_set_cap if set_cap is None else set_cap
    if support_list.node_count != graph.node_count:
        raise ValueError(
            f"support list has {support_list.node_count} nodes, graph has {graph.node_count}"
        )
    if graph.node_count > node_cap:
        raise CapExceededError("graph node count", graph.node_count, node_cap)
    search = _Search(graph, support_list, maximal_only, set_cap)
    search.run(0, [])
    logger.debug(
        "%d %smixed stable sets on %d nodes",
        len(search.found),
        "maximal " if maximal_only else "",
        graph.node_count,
    )
    return [
        MixedStableSet(node_count=graph.node_count, parts=[_nodes(p) for p in parts])
        for parts in search.found
    ]
