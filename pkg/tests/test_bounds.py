from collections import Counter
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from sparsecut.bounds import (brooks_bound, closed_form_cycle_bound,
                              closed_form_tree_bound,
                              corrected_average_density,
                              fractional_chromatic_number,
                              fractional_mixed_chromatic, mixed_chromatic,
                              molloy_reed_bound, theoretical_bound,
                              tree_mixed_coloring)
from sparsecut.core.constants import BoundKind, KindTag
from sparsecut.core.errors import (CapExceededError, DisconnectedGraphError,
                                   NoCoveringSubListError, NotATreeError)
from sparsecut.graphs import (InteractionGraph, SupportList,
                              edge_support_list, is_mixed_stable,
                              super_sparse_list)


def _graph(g: nx.Graph) -> InteractionGraph:
    return InteractionGraph.from_networkx(g)


@pytest.mark.parametrize("K", range(3, 10))
def test_cycle_eta_matches_the_closed_form(K):
    graph = _graph(nx.cycle_graph(K))
    report = fractional_mixed_chromatic(graph, edge_support_list(graph))
    assert report.value == closed_form_cycle_bound(K)
    assert report.verify()


@pytest.mark.parametrize(
    "K, expected", [(5, Fraction(5, 3)), (6, Fraction(3, 2)), (7, Fraction(7, 4))]
)
def test_cycle_closed_form_values(K, expected):
    assert closed_form_cycle_bound(K) == expected


def test_cycle_closed_form_needs_three_nodes():
    with pytest.raises(ValueError):
        closed_form_cycle_bound(2)


def test_path_with_two_overlapping_supports():
    # path 2 - 1 - 3 with supports {1,2} and {1,3}
    graph = InteractionGraph.from_edges(3, [(0, 1), (0, 2)])
    supports = SupportList(node_count=3, members=[[0, 1], [0, 2]])
    fractional = fractional_mixed_chromatic(graph, supports)
    integer = mixed_chromatic(graph, supports)
    assert fractional.value == Fraction(3, 2)
    assert integer.value == 2
    assert fractional.verify()
    assert integer.verify()


def test_star_packing_bound():
    graph = _graph(nx.star_graph(10))
    report = theoretical_bound(KindTag.PACKING, graph, edge_support_list(graph))
    assert report.bound_kind == BoundKind.PACKING_ETA
    assert report.value == Fraction(19, 10)
    assert report.value == closed_form_tree_bound(10)


def test_covering_clique_bound():
    graph = _graph(nx.complete_graph(10))
    report = theoretical_bound(KindTag.COVERING, graph, super_sparse_list(graph))
    assert report.bound_kind == BoundKind.COVERING_ETA_BAR
    assert report.value == 10
    assert len(report.family) == 10
    assert report.verify()


def test_general_star_bound():
    graph = _graph(nx.star_graph(9))
    report = theoretical_bound(KindTag.GENERAL, graph, edge_support_list(graph))
    assert report.bound_kind == BoundKind.GENERAL_DENSITY
    assert report.density == 2
    assert report.value == 9
    assert report.verify()


def test_singletons_give_the_fractional_chromatic_number():
    assert fractional_chromatic_number(_graph(nx.complete_graph(4))) == 4
    assert fractional_chromatic_number(_graph(nx.cycle_graph(5))) == Fraction(5, 2)
    assert fractional_chromatic_number(_graph(nx.path_graph(4))) == 2


def test_uncovered_nodes_are_rejected():
    graph = _graph(nx.path_graph(3))
    partial = SupportList(node_count=3, members=[[0, 1]])
    with pytest.raises(ValueError):
        fractional_mixed_chromatic(graph, partial)
    with pytest.raises(NoCoveringSubListError):
        corrected_average_density(partial)


def test_corrected_average_density_picks_the_densest_cover():
    supports = SupportList(node_count=3, members=[[0, 1], [1, 2], [2]])
    report = corrected_average_density(supports)
    assert report.density == 2
    assert report.sub_list.members == (frozenset({0, 1}), frozenset({1, 2}))
    assert report.verify()


def test_corrected_average_density_cap():
    supports = SupportList(node_count=1, members=[[0]] * 3)
    with pytest.raises(CapExceededError):
        corrected_average_density(supports, cap=2)


def test_brooks_bound():
    assert brooks_bound(_graph(nx.cycle_graph(5))).value == 3
    assert brooks_bound(_graph(nx.cycle_graph(6))).value == 2
    assert brooks_bound(_graph(nx.complete_graph(4))).value == 4
    assert brooks_bound(_graph(nx.star_graph(3))).value == 3
    with pytest.raises(DisconnectedGraphError):
        brooks_bound(InteractionGraph.from_edges(3, [(0, 1)]))


def test_molloy_reed_bound_dominates_eta():
    graph = _graph(nx.cycle_graph(7))
    assert molloy_reed_bound(graph) >= fractional_chromatic_number(graph)


def _small_atlas():
    return [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 5]


def _clique_number(g: nx.Graph) -> int:
    return max(len(c) for c in nx.find_cliques(g))


def test_fractional_chromatic_number_on_every_small_graph():
    # C5 is the only imperfect graph on at most five nodes
    pentagon = nx.cycle_graph(5)
    for g in _small_atlas():
        expected = Fraction(5, 2) if nx.is_isomorphic(g, pentagon) else _clique_number(g)
        assert fractional_chromatic_number(_graph(g)) == expected, nx.to_edgelist(g)


def test_molloy_reed_bound_on_every_small_connected_graph():
    for g in _small_atlas():
        if not nx.is_connected(g):
            continue
        graph = _graph(g)
        delta = max((d for _, d in g.degree), default=0)
        assert molloy_reed_bound(graph) == Fraction(_clique_number(g) + delta + 1, 2)
        assert molloy_reed_bound(graph) >= fractional_chromatic_number(graph)


def test_tree_coloring_of_random_trees():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        size = int(rng.integers(3, 12))
        sequence = [int(v) for v in rng.integers(0, size, size=size - 2)]
        graph = _graph(nx.from_prufer_sequence(sequence))
        delta = graph.max_degree
        supports = edge_support_list(graph)
        sets = tree_mixed_coloring(graph)
        assert len(sets) == 2 * delta - 1
        assert all(is_mixed_stable(graph, supports, m.parts) for m in sets)
        cover = Counter(v for m in sets for v in m.nodes)
        assert all(cover[v] == delta for v in graph.nodes)


def test_tree_coloring_matches_the_tree_bound():
    graph = _graph(nx.star_graph(4))
    sets = tree_mixed_coloring(graph)
    # each node covered Delta times, so weights 1/Delta give the closed form
    assert Fraction(len(sets), graph.max_degree) == closed_form_tree_bound(4)
    eta = fractional_mixed_chromatic(graph, edge_support_list(graph)).value
    assert eta == closed_form_tree_bound(4)


def test_tree_coloring_rejects_cycles():
    with pytest.raises(NotATreeError):
        tree_mixed_coloring(_graph(nx.cycle_graph(4)))


def test_bound_report_yaml():
    graph = _graph(nx.cycle_graph(3))
    text = fractional_mixed_chromatic(graph, edge_support_list(graph)).to_yaml()
    assert "bound_kind: packing_eta" in text
    assert "value: 3/2" in text
