from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import (BaseModel, ConfigDict, Field, computed_field,
                      field_validator, model_validator)

from sparsecut.core.constants import GraphKind

NodeSet = FrozenSet[int]


def _as_node_sets(value) -> Tuple[NodeSet, ...]:
    return tuple(frozenset(int(v) for v in member) for member in value)


class InteractionGraph(BaseModel):
    """Block interaction graph; nodes are ``0..node_count-1``.

    ``node_to_columns[v]`` is the column set behind node ``v``: the block for a
    packing graph, the union of the row supports of the block for a covering
    graph.
    """

    model_config = ConfigDict(frozen=True)

    kind: GraphKind = Field(GraphKind.PACKING, description="packing or covering")
    node_count: int = Field(..., ge=0, description="Number of nodes q (or p)")
    edges: Tuple[Tuple[int, int], ...] = Field((), description="Sorted (u, v) pairs, u < v")
    node_to_columns: Tuple[NodeSet, ...] = Field(
        (), description="Column-index set per node"
    )
    node_to_rows: Tuple[NodeSet, ...] = Field(
        (), description="Row block per node (covering graphs only)"
    )

    @field_validator("edges", mode="before")
    @classmethod
    def _normalize_edges(cls, value):
        pairs = set()
        for u, v in value:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u + 1}")
            pairs.add((min(u, v), max(u, v)))
        return tuple(sorted(pairs))

    @field_validator("node_to_columns", "node_to_rows", mode="before")
    @classmethod
    def _coerce_columns(cls, value):
        return _as_node_sets(value)

    @model_validator(mode="after")
    def _check_ranges(self):
        for u, v in self.edges:
            if v >= self.node_count:
                raise ValueError(f"edge ({u + 1}, {v + 1}) leaves the node range")
        if len(self.node_to_columns) != self.node_count:
            raise ValueError("node_to_columns needs one entry per node")
        if self.kind == GraphKind.PACKING and any(not c for c in self.node_to_columns):
            raise ValueError("packing graph nodes need a nonempty column block")
        return self

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Sequence[Tuple[int, int]],
        kind: GraphKind = GraphKind.PACKING,
    ) -> "InteractionGraph":
        """Graph whose node ``v`` stands for column ``v``."""
        return cls(
            kind=kind,
            node_count=node_count,
            edges=edges,
            node_to_columns=[[v] for v in range(node_count)],
        )

    @classmethod
    def from_networkx(cls, graph: nx.Graph, kind: GraphKind = GraphKind.PACKING):
        """Relabel ``graph`` to ``0..n-1`` in sorted node order."""
        order = {v: i for i, v in enumerate(sorted(graph.nodes))}
        return cls.from_edges(
            len(order), [(order[u], order[v]) for u, v in graph.edges], kind
        )

    @computed_field
    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    def neighbor_masks(self) -> List[int]:
        """Adjacency of every node as an integer bitmask."""
        masks = [0] * self.node_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def neighbors(self, v: int) -> NodeSet:
        return frozenset(
            b for a, b in self.edges if a == v
        ) | frozenset(a for a, b in self.edges if b == v)

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.nodes), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph

    def to_edge_list_text(self) -> str:
        """``q`` on the first line, then one ``i j`` pair per edge (1-based)."""
        lines = [str(self.node_count)]
        lines.extend(f"{u + 1} {v + 1}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list_text(
        cls, text: str, kind: GraphKind = GraphKind.PACKING
    ) -> "InteractionGraph":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty edge list")
        node_count = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"expected 'i j', got {ln!r}")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        return cls.from_edges(node_count, edges, kind)


class SupportList(BaseModel):
    """Collection of node subsets on which cuts may be supported."""

    model_config = ConfigDict(frozen=True)

    node_count: int = Field(..., ge=0, description="Size of the node range")
    members: Tuple[NodeSet, ...] = Field((), description="Node subsets V^1..V^m")

    @field_validator("members", mode="before")
    @classmethod
    def _coerce_members(cls, value):
        return _as_node_sets(value)

    @model_validator(mode="after")
    def _check_members(self):
        for k, member in enumerate(self.members):
            if not member:
                raise ValueError(f"support list member {k + 1} is empty")
            if any(not 0 <= v < self.node_count for v in member):
                raise ValueError(f"support list member {k + 1} leaves the node range")
        return self

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[NodeSet]:
        return iter(self.members)

    @property
    def union(self) -> NodeSet:
        return frozenset().union(*self.members)

    def covers(self) -> bool:
        return self.union == frozenset(range(self.node_count))

    def masks(self) -> List[int]:
        return [sum(1 << v for v in member) for member in self.members]

    def admits(self, nodes: NodeSet) -> bool:
        """Whether ``nodes`` lies inside some member."""
        return any(nodes <= member for member in self.members)

    def describe(self) -> str:
        """Members as ``{1,2}|{1,3}`` (1-based)."""
        return "|".join(
            "{" + ",".join(str(v + 1) for v in sorted(m)) + "}" for m in self.members
        )


class MixedStableSet(BaseModel):
    """Pairwise-disjoint node subsets, each usable as one cut support."""

    model_config = ConfigDict(frozen=True)

    node_count: int = Field(..., ge=0, description="Size of the node range")
    parts: Tuple[NodeSet, ...] = Field((), description="Parts of the collection M")

    @field_validator("parts", mode="before")
    @classmethod
    def _coerce_parts(cls, value):
        parts = _as_node_sets(value)
        return tuple(sorted(parts, key=lambda p: (min(p) if p else -1, sorted(p))))

    @model_validator(mode="after")
    def _check_parts(self):
        for part in self.parts:
            if not part:
                raise ValueError("mixed stable set parts must be nonempty")
        return self

    @property
    def nodes(self) -> NodeSet:
        return frozenset().union(*self.parts)

    @property
    def incidence(self) -> Tuple[int, ...]:
        """0/1 node vector of the covered nodes."""
        covered = self.nodes
        return tuple(int(v in covered) for v in range(self.node_count))

    def describe(self) -> str:
        return "{" + ", ".join(
            "{" + ",".join(str(v + 1) for v in sorted(p)) + "}" for p in self.parts
        ) + "}"

    def part_of(self, v: int) -> Optional[NodeSet]:
        for part in self.parts:
            if v in part:
                return part
        return None
