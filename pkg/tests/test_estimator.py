from fractions import Fraction

import pytest
from pydantic import ValidationError

from sparsecut.bounds import theoretical_bound
from sparsecut.constructions import (GenParams, gen_random_instance,
                                     make_tight_3cycle, make_tight_general_ns,
                                     make_tight_general_ss, make_tight_star_ss,
                                     make_tight_tree_ns)
from sparsecut.core.constants import (KindTag, SignRule, SupportMode,
                                      Termination)
from sparsecut.core.utils import closure_ratio
from sparsecut.estimator import EstimatorConfig, estimate_zcut, generate_cut
from sparsecut.graphs import build_graph, list_columns, support_list_for
from sparsecut.kernel import (enumerate_integer_points, exact_closure_value,
                              milp_value)


def test_config_rejects_non_positive_epsilon():
    with pytest.raises(ValidationError):
        EstimatorConfig(epsilon=0)
    assert EstimatorConfig(epsilon="1/100").epsilon == Fraction(1, 100)


def test_sign_rule_follows_the_kind():
    config = EstimatorConfig()
    assert config.resolve_sign_rule(KindTag.PACKING) == SignRule.NONNEGATIVE
    assert config.resolve_sign_rule(KindTag.COVERING) == SignRule.NONPOSITIVE
    assert config.resolve_sign_rule(KindTag.GENERAL) == SignRule.FREE


def test_generate_cut_separates_the_lp_optimum(half_pair):
    x_star = [Fraction(1), Fraction(1, 2)]
    cut = generate_cut(half_pair, [0, 1], x_star)
    assert cut is not None
    assert cut.violation(x_star) > 0
    for point in enumerate_integer_points(half_pair):
        assert cut.is_satisfied_by(point)


def test_generate_cut_returns_none_inside_the_hull(half_pair):
    assert generate_cut(half_pair, [0, 1], [Fraction(1, 2), Fraction(1, 2)]) is None
    assert generate_cut(half_pair, [0], [Fraction(1), Fraction(1, 2)]) is None


def test_generate_cut_without_enumeration(knapsack):
    x_star = [Fraction(1), Fraction(1, 3), Fraction(1)]
    cut = generate_cut(knapsack, [0, 1, 2], x_star)
    assert cut is not None
    assert cut.is_satisfied_by((1, 1, 0))
    assert cut.violation(x_star) > 0


def test_singleton_supports_keep_the_lp(three_cycle):
    instance, _ = three_cycle
    run = estimate_zcut(instance, [[0], [1], [2]])
    assert run.z_lp == Fraction(5, 2)
    assert run.z_estimate == Fraction(5, 2)
    assert run.cuts_added == ()
    assert run.termination == Termination.STALLED_ALL_SUPPORTS


def test_full_support_reaches_the_integer_hull(three_cycle):
    instance, _ = three_cycle
    run = estimate_zcut(instance, [[0, 1, 2]])
    assert run.z_estimate == 1
    assert run.cuts_added
    assert run.trace[0].z_value == run.z_lp
    assert all(entry.round == k for k, entry in enumerate(run.trace, start=1))


def test_cut_cap_stops_the_run(three_cycle):
    instance, _ = three_cycle
    run = estimate_zcut(instance, [[0, 1], [1, 2], [0, 2]], EstimatorConfig(max_cuts=1))
    assert len(run.cuts_added) == 1
    assert run.termination == Termination.CAP_HIT


def test_empty_support_list_is_rejected(three_cycle):
    instance, _ = three_cycle
    with pytest.raises(ValueError):
        estimate_zcut(instance, [])


@pytest.mark.parametrize(
    "kind, seed",
    [
        (KindTag.PACKING, 1),
        (KindTag.PACKING, 2),
        (KindTag.COVERING, 1),
        (KindTag.GENERAL, 3),
    ],
)
def test_estimate_is_sandwiched(kind, seed):
    instance, partition = gen_random_instance(GenParams(kind=kind, nv=3, sqr=2, seed=seed))
    graph = build_graph(instance, partition)
    supports = list_columns(graph, support_list_for(instance, graph, SupportMode.NATURAL_SPARSE))
    run = estimate_zcut(instance, supports)
    exact = exact_closure_value(instance, supports)
    z_int = milp_value(instance).value
    points = list(enumerate_integer_points(instance))
    for cut in run.cuts_added:
        assert all(cut.is_satisfied_by(p) for p in points)
    if instance.maximize:
        assert z_int <= exact <= run.z_estimate <= run.z_lp
    else:
        assert z_int >= exact >= run.z_estimate >= run.z_lp


def test_trace_and_yaml(three_cycle):
    instance, _ = three_cycle
    run = estimate_zcut(instance, [[0, 1, 2]])
    lines = run.to_trace_csv().splitlines()
    assert lines[0] == "round,support_id,z_value,violation,cut_id"
    assert lines[1].startswith("1,1,5/2,")
    assert "z_estimate: 1" in run.to_yaml()


@pytest.mark.parametrize("kind", [KindTag.PACKING, KindTag.COVERING, KindTag.GENERAL])
def test_random_instances_respect_the_sandwich_and_the_bound(kind):
    for seed in range(30):
        instance, partition = gen_random_instance(GenParams(kind=kind, nv=3, sqr=2, seed=seed))
        graph = build_graph(instance, partition)
        support_list = support_list_for(instance, graph, SupportMode.NATURAL_SPARSE)
        supports = list_columns(graph, support_list)
        run = estimate_zcut(instance, supports)
        exact = exact_closure_value(instance, supports)
        z_int = milp_value(instance).value
        points = list(enumerate_integer_points(instance))
        for cut in run.cuts_added:
            assert all(cut.is_satisfied_by(p) for p in points), seed
        if instance.maximize:
            assert z_int <= exact <= run.z_estimate <= run.z_lp, seed
        else:
            assert z_int >= exact >= run.z_estimate >= run.z_lp, seed
        ratio = closure_ratio(instance.maximize, z_int, exact)
        bound = theoretical_bound(instance.kind_tag, graph, support_list).value
        assert ratio is not None and 1 <= ratio <= bound, seed


@pytest.mark.parametrize(
    "built, mode",
    [
        (make_tight_3cycle("1/2"), SupportMode.SUPER_SPARSE),
        (make_tight_star_ss(2), SupportMode.SUPER_SPARSE),
        (make_tight_tree_ns(2, 3), SupportMode.NATURAL_SPARSE),
        (make_tight_general_ss(3), SupportMode.SUPER_SPARSE),
        (make_tight_general_ns(3), SupportMode.NATURAL_SPARSE),
    ],
)
def test_estimate_has_no_gap_on_tight_families(built, mode):
    instance, partition = built
    graph = build_graph(instance, partition)
    supports = list_columns(graph, support_list_for(instance, graph, mode))
    assert estimate_zcut(instance, supports).z_estimate == exact_closure_value(instance, supports)
