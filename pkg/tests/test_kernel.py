from fractions import Fraction

import pytest

from sparsecut.constructions import GenParams, gen_random_instance
from sparsecut.core.constants import (KindTag, LpStatus, Relation, Sense,
                                      SupportMode)
from sparsecut.core.errors import CapExceededError, InfeasibleInstanceError
from sparsecut.core.models import Cut, HullConstraint, Instance, Row
from sparsecut.graphs import build_graph, list_columns, support_list_for
from sparsecut.kernel import (closure_contains, decomposed_milp_value,
                              enumerate_integer_points, exact_closure_value,
                              maximal_supports, milp_value, solve_lp,
                              solve_milp)
from sparsecut.kernel.simplex import ONE, Tableau


def test_lp_optimum_is_exact(half_pair):
    result = solve_lp(half_pair)
    assert result.status == LpStatus.OPTIMAL
    assert result.value == Fraction(3, 2)
    assert sum(result.solution) == Fraction(3, 2)


def test_lp_with_extra_cut(half_pair):
    cut = Cut(coeffs=[(0, 1), (1, 1)], rhs=1, support=frozenset({0, 1}))
    assert solve_lp(half_pair, [cut]).value == 1


def test_lp_reports_unbounded_and_infeasible():
    unbounded = Instance.build([1, 0], [], upper=None, integer=False)
    assert solve_lp(unbounded).status == LpStatus.UNBOUNDED

    infeasible = Instance.build(
        [1], [Row(coeffs=[(0, 1)], relation=Relation.GE, rhs=2)], upper=1
    )
    assert solve_lp(infeasible).status == LpStatus.INFEASIBLE


def test_lp_minimization():
    instance = Instance.build(
        [2, 3],
        [Row(coeffs=[(0, 1), (1, 1)], relation=Relation.GE, rhs=Fraction(3, 2))],
        sense=Sense.MINIMIZE,
        kind_tag=KindTag.COVERING,
    )
    result = solve_lp(instance)
    assert result.value == Fraction(7, 2)
    assert result.solution == (Fraction(1), Fraction(1, 2))


def test_branch_and_bound_and_enumeration_agree(knapsack):
    bnb = solve_milp(knapsack)
    assert bnb.status == LpStatus.OPTIMAL
    assert bnb.value == 9
    assert knapsack.is_integer_feasible(bnb.solution)
    assert milp_value(knapsack).value == 9


def test_branch_and_bound_needs_finite_bounds():
    instance = Instance.build(
        [3, 2],
        [Row(coeffs=[(0, 2), (1, 2)], relation=Relation.LE, rhs=7)],
        upper=None,
    )
    assert solve_lp(instance).value == Fraction(21, 2)
    with pytest.raises(ValueError):
        solve_milp(instance)


def test_milp_infeasible():
    instance = Instance.build(
        [1, 1],
        [Row(coeffs=[(0, 2), (1, 2)], relation=Relation.EQ, rhs=1)],
    )
    assert solve_milp(instance).status == LpStatus.INFEASIBLE
    assert milp_value(instance).status == LpStatus.INFEASIBLE


def test_enumeration_is_lexicographic(half_pair):
    points = enumerate_integer_points(half_pair)
    assert list(points) == [(0, 0), (0, 1), (1, 0)]
    assert points.project([1]) == [(0,), (1,)]


def test_enumeration_respects_hulls():
    hull = HullConstraint(columns=(0, 1), points=[(0, 0), (1, 1)])
    instance = Instance.build([1, 1, 1], [], hulls=[hull])
    points = enumerate_integer_points(instance)
    assert len(points) == 4
    assert all(p[0] == p[1] for p in points)


def test_enumeration_cap():
    instance = Instance.build([1] * 5, [])
    with pytest.raises(CapExceededError) as excinfo:
        enumerate_integer_points(instance, cap=16)
    assert excinfo.value.size == 32


def test_maximal_supports_drops_nested_sets():
    assert maximal_supports([[0], [0, 1], [1, 0], [2], []]) == [(0, 1), (2,)]


def test_closure_over_the_full_support_is_the_integer_hull(half_pair):
    assert exact_closure_value(half_pair, [[0, 1]]) == 1


def test_closure_over_singletons_is_the_lp(half_pair):
    assert exact_closure_value(half_pair, [[0], [1]]) == Fraction(3, 2)


def test_three_cycle_closure(three_cycle):
    instance, _ = three_cycle
    assert exact_closure_value(instance, [[0], [1], [2]]) == Fraction(5, 2)
    assert exact_closure_value(instance, [[0, 1], [1, 2], [0, 2]]) == Fraction(3, 2)
    assert exact_closure_value(instance, [[0, 1, 2]]) == 1


def test_closure_contains(three_cycle):
    instance, _ = three_cycle
    singletons = [[0], [1], [2]]
    centre = [Fraction(5, 6)] * 3
    assert closure_contains(instance, singletons, centre)
    assert not closure_contains(instance, [[0, 1]], centre)
    assert not closure_contains(instance, singletons, [1, 1, 1])


def test_closure_of_an_empty_hull_raises():
    instance = Instance.build(
        [1, 1], [Row(coeffs=[(0, 2), (1, 2)], relation=Relation.EQ, rhs=1)]
    )
    with pytest.raises(InfeasibleInstanceError):
        exact_closure_value(instance, [[0], [1]])


def test_minimizing_closure():
    instance = Instance.build(
        [1, 1, 1],
        [
            Row(coeffs=[(0, 1), (1, 1)], relation=Relation.GE, rhs=1),
            Row(coeffs=[(1, 1), (2, 1)], relation=Relation.GE, rhs=1),
            Row(coeffs=[(0, 1), (2, 1)], relation=Relation.GE, rhs=1),
        ],
        sense=Sense.MINIMIZE,
        kind_tag=KindTag.COVERING,
    )
    assert solve_lp(instance).value == Fraction(3, 2)
    assert milp_value(instance).value == 2
    assert exact_closure_value(instance, [[0, 1, 2]]) == 2
    assert exact_closure_value(instance, [[0, 1], [1, 2], [0, 2]]) == Fraction(3, 2)


def test_decomposition_matches_branch_and_bound(three_cycle):
    instance, _ = three_cycle
    supports = [[0, 1], [1, 2], [0, 2]]
    assert decomposed_milp_value(instance, supports).value == 1


def test_node_limit_refuses_to_report_an_unproven_optimum(knapsack):
    with pytest.raises(CapExceededError) as excinfo:
        solve_milp(knapsack, node_limit=1)
    assert excinfo.value.cap == 1
    assert solve_milp(knapsack, node_limit=1000).value == 9


@pytest.mark.parametrize("kind", [KindTag.PACKING, KindTag.COVERING, KindTag.GENERAL])
@pytest.mark.parametrize("seed", range(4))
def test_larger_supports_give_tighter_closures(kind, seed):
    instance, partition = gen_random_instance(GenParams(kind=kind, nv=3, sqr=2, seed=seed))
    graph = build_graph(instance, partition)
    n = instance.num_vars
    singletons = [[j] for j in range(n)]
    natural = list_columns(graph, support_list_for(instance, graph, SupportMode.NATURAL_SPARSE))
    coarse = exact_closure_value(instance, singletons)
    finer = exact_closure_value(instance, singletons + [list(s) for s in natural])
    full = exact_closure_value(instance, [list(range(n))])
    assert full == milp_value(instance).value
    if instance.maximize:
        assert full <= finer <= coarse
    else:
        assert full >= finer >= coarse


def test_tied_reduced_costs_enter_the_lowest_column():
    tableau = Tableau(3, {0: ONE, 1: ONE, 2: ONE}, [({0: ONE, 1: ONE, 2: ONE}, Relation.LE, ONE)])
    assert tableau.solve() == LpStatus.OPTIMAL
    assert tableau.solution([0, 1, 2]) == [1, 0, 0]
    assert tableau.pivots == 1
