import itertools
import random

import networkx as nx
import pytest
from pydantic import ValidationError

from sparsecut.constructions import make_dsc, make_tight_cover
from sparsecut.core.constants import Axis, GraphKind, KindTag, Relation, SupportMode
from sparsecut.core.errors import CapExceededError, PartitionMismatchError
from sparsecut.core.models import BlockPartition, Instance, Row
from sparsecut.core.smilp import load_instance
from sparsecut.graphs import (InteractionGraph, SupportList,
                              build_covering_graph, build_graph,
                              build_packing_graph, edge_support_list,
                              enumerate_mixed_stable_sets, is_mixed_stable,
                              list_columns, natural_sparse_list,
                              super_sparse_list, support_columns,
                              support_list_for)


def _path_instance() -> Instance:
    """Rows on columns {0,1}, {1,2,3} and {3}; blocks {0}, {1,2}, {3}."""
    rows = [
        Row(coeffs=[(0, 1), (1, 1)], relation=Relation.LE, rhs=1),
        Row(coeffs=[(1, 1), (2, 1), (3, 1)], relation=Relation.LE, rhs=2),
        Row(coeffs=[(3, 2)], relation=Relation.LE, rhs=1),
    ]
    return Instance.build([1, 1, 1, 1], rows, kind_tag=KindTag.PACKING)


def _path_partition() -> BlockPartition:
    return BlockPartition(axis=Axis.COLUMNS, size=4, blocks=[[0], [1, 2], [3]])


def test_packing_graph_links_blocks_sharing_a_row():
    graph = build_packing_graph(_path_instance(), _path_partition())
    assert graph.kind == GraphKind.PACKING
    assert graph.node_count == 3
    assert graph.edges == ((0, 1), (1, 2))
    assert support_columns(graph, [1, 2]) == frozenset({1, 2, 3})


def test_packing_graph_rejects_row_partitions():
    rows = BlockPartition.singletons(Axis.ROWS, 3)
    with pytest.raises(PartitionMismatchError):
        build_packing_graph(_path_instance(), rows)
    with pytest.raises(PartitionMismatchError):
        build_packing_graph(_path_instance(), BlockPartition.singletons(Axis.COLUMNS, 5))


def test_covering_graph_links_row_blocks_sharing_a_column():
    instance = _path_instance()
    graph = build_covering_graph(instance, BlockPartition.singletons(Axis.ROWS, 3))
    assert graph.kind == GraphKind.COVERING
    assert graph.edges == ((0, 1), (1, 2))
    assert graph.node_to_columns[1] == frozenset({1, 2, 3})
    assert graph.node_to_rows[2] == frozenset({2})
    assert build_graph(instance, BlockPartition.singletons(Axis.ROWS, 3)) == graph


def test_tight_cover_has_a_clique_covering_graph():
    instance, rows = make_tight_cover(K=3, n=3)
    graph = build_graph(instance, rows)
    assert graph.node_count == 3
    assert graph.edge_count == 3


def test_support_lists():
    instance = _path_instance()
    graph = build_packing_graph(instance, _path_partition())
    assert super_sparse_list(graph).members == (
        frozenset({0}), frozenset({1}), frozenset({2})
    )
    natural = natural_sparse_list(instance, graph)
    assert natural.members == (frozenset({0, 1}), frozenset({1, 2}), frozenset({2}))
    assert natural.covers()
    assert list_columns(graph, natural)[1] == frozenset({1, 2, 3})
    assert edge_support_list(graph).describe() == "{1,2}|{2,3}"


def test_natural_list_of_a_covering_graph_uses_row_holders():
    instance, partition = make_dsc(2)
    rows = BlockPartition.singletons(Axis.ROWS, instance.num_rows)
    graph = build_covering_graph(instance, rows)
    natural = natural_sparse_list(instance, graph)
    assert natural.members == tuple(frozenset({r}) for r in range(instance.num_rows))
    assert build_graph(instance, partition).node_count == 2


def test_custom_support_list():
    instance = _path_instance()
    graph = build_packing_graph(instance, _path_partition())
    custom = support_list_for(instance, graph, SupportMode.CUSTOM, [[0, 1, 2]])
    assert custom.members == (frozenset({0, 1, 2}),)
    with pytest.raises(ValueError):
        support_list_for(instance, graph, SupportMode.CUSTOM, [])
    with pytest.raises(ValidationError):
        SupportList(node_count=3, members=[[0, 3]])


def test_edge_list_text_round_trip():
    graph = InteractionGraph.from_networkx(nx.cycle_graph(4))
    text = graph.to_edge_list_text()
    assert text.splitlines()[0] == "4"
    assert InteractionGraph.from_edge_list_text(text) == graph


def test_graph_rejects_self_loops():
    with pytest.raises(ValidationError):
        InteractionGraph.from_edges(2, [(1, 1)])


def test_mixed_stable_sets_of_a_star_with_edge_supports():
    # centre 0 with leaves 1 and 2
    graph = InteractionGraph.from_edges(3, [(0, 1), (0, 2)])
    supports = edge_support_list(graph)
    found = {m.describe() for m in enumerate_mixed_stable_sets(graph, supports)}
    assert found == {"{{1,2}}", "{{1,3}}", "{{2}, {3}}"}


def test_all_mixed_stable_sets_are_stable():
    graph = InteractionGraph.from_networkx(nx.cycle_graph(5))
    supports = edge_support_list(graph)
    every = enumerate_mixed_stable_sets(graph, supports, maximal_only=False)
    maximal = enumerate_mixed_stable_sets(graph, supports)
    assert all(is_mixed_stable(graph, supports, m.parts) for m in every)
    assert {m.parts for m in maximal} <= {m.parts for m in every}
    assert all(m.parts for m in every)


def _set_partitions(nodes):
    if not nodes:
        yield []
        return
    first, rest = nodes[0], nodes[1:]
    for partition in _set_partitions(rest):
        for k in range(len(partition)):
            yield partition[:k] + [partition[k] | {first}] + partition[k + 1:]
        yield partition + [frozenset({first})]


def _brute_force_mixed_stable_sets(graph, supports):
    found = set()
    for size in range(1, graph.node_count + 1):
        for subset in itertools.combinations(range(graph.node_count), size):
            for parts in _set_partitions(list(subset)):
                inside = all(any(p <= m for m in supports) for p in parts)
                owner = {v: k for k, p in enumerate(parts) for v in p}
                separated = all(
                    owner[u] == owner[v]
                    for u, v in graph.edges
                    if u in owner and v in owner
                )
                if inside and separated:
                    found.add(frozenset(parts))
    return found


@pytest.mark.parametrize("seed", range(12))
def test_mixed_stable_set_enumeration_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    graph = InteractionGraph.from_networkx(nx.gnp_random_graph(n, 0.5, seed=seed))
    if seed % 2:
        supports = edge_support_list(graph)
    else:
        members = [rng.sample(range(n), rng.randint(1, n)) for _ in range(rng.randint(1, 3))]
        supports = SupportList(node_count=n, members=members)
    every = enumerate_mixed_stable_sets(graph, supports, maximal_only=False)
    assert {frozenset(m.parts) for m in every} == _brute_force_mixed_stable_sets(
        graph, supports.members
    )


def test_is_mixed_stable_conditions():
    graph = InteractionGraph.from_networkx(nx.path_graph(4))
    supports = edge_support_list(graph)
    assert is_mixed_stable(graph, supports, [[0, 1], [3]])
    # parts joined by the edge 1-2
    assert not is_mixed_stable(graph, supports, [[0, 1], [2]])
    # part outside every member
    assert not is_mixed_stable(graph, supports, [[0, 2]])
    # overlapping parts
    assert not is_mixed_stable(graph, supports, [[0, 1], [1]])


def test_stable_set_enumeration_cap():
    graph = InteractionGraph.from_networkx(nx.path_graph(6))
    with pytest.raises(CapExceededError):
        enumerate_mixed_stable_sets(graph, super_sparse_list(graph), node_cap=5)


def test_graph_of_a_loaded_instance(star_file):
    document = load_instance(star_file)
    graph = build_graph(document.instance, document.graph_partition())
    assert graph.edges == ((0, 1), (0, 2))
    assert graph.max_degree == 2
