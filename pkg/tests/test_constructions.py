import itertools
from fractions import Fraction

import pytest

from sparsecut.constructions import (GenParams, gen_random_instance,
                                     make_affine_design, make_dsc,
                                     make_planes_partition, make_ssc,
                                     make_tight_general_ns,
                                     make_tight_star_ss, make_tight_tree_ns,
                                     random_partition, two_stage_instance,
                                     verify_tightness)
from sparsecut.core.constants import (Axis, ComparisonMode, KindTag, Relation,
                                      Sense, TightFamily)
from sparsecut.core.errors import CapExceededError
from sparsecut.core.validation import validate
from sparsecut.graphs import build_graph
from sparsecut.kernel import solve_lp


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_affine_design_properties(n):
    design = make_affine_design(n)
    assert len(design.families) == n
    for family in design.families:
        assert sorted(itertools.chain.from_iterable(family)) == list(range(n * n))
    for fi, fj in itertools.combinations(design.families, 2):
        assert all(len(a & b) <= 1 for a in fi for b in fj)


def test_affine_design_needs_a_prime():
    with pytest.raises(ValueError):
        make_affine_design(4)


def test_cross_pairs_avoid_common_sets():
    design = make_affine_design(3)
    pairs = design.cross_pairs(0)
    assert len(pairs) == 27
    assert all(design.set_of(0, a) != design.set_of(0, b) for a, b in pairs)


@pytest.mark.parametrize("n", [2, 3])
def test_planes_partition_properties(n):
    planes = make_planes_partition(n)
    assert planes.ground_size == n**n
    for g in range(planes.ground_size):
        assert planes.index(planes.coordinates(g)) == g
    one_full_family = [(0, j) for j in range(n)]
    assert planes.covers(one_full_family)
    assert planes.full_family(one_full_family) == 0
    # one set from every family never covers
    assert not planes.covers([(i, 0) for i in range(n)])


def test_planes_partition_cap():
    with pytest.raises(CapExceededError):
        make_planes_partition(5, cap=81)


def test_generator_is_deterministic():
    params = GenParams(nv=4, sqr=2, seed=11)
    first, partition = gen_random_instance(params)
    second, _ = gen_random_instance(params)
    assert first == second
    assert partition.axis == Axis.COLUMNS
    assert partition.num_blocks == 4
    assert first.num_vars == 8
    other, _ = gen_random_instance(params.model_copy(update={"seed": 12}))
    assert other != first


@pytest.mark.parametrize("kind", list(KindTag))
def test_generated_instances_respect_their_kind(kind):
    instance, partition = gen_random_instance(GenParams(kind=kind, nv=3, sqr=2, seed=5))
    assert validate(instance) == []
    assert instance.kind_tag == kind
    assert all(hi == 1 for _, hi in instance.var_bounds)
    if kind == KindTag.COVERING:
        assert instance.sense == Sense.MINIMIZE
        assert partition.axis == Axis.ROWS
        assert all(r.relation == Relation.GE for r in instance.rows)
    else:
        assert instance.sense == Sense.MAXIMIZE
        assert partition.axis == Axis.COLUMNS


def test_two_stage_generator_builds_a_star():
    instance, partition = gen_random_instance(
        GenParams(nv=4, sqr=2, seed=3, two_stage=True)
    )
    graph = build_graph(instance, partition)
    assert graph.edge_count == 3
    assert graph.max_degree == 3
    assert instance.num_rows == 6


def test_generator_aliases():
    params = GenParams.model_validate({"M": 3, "M_eps": 2, "ObjM": 4})
    assert (params.coef_max, params.noise_max, params.obj_max) == (3, 2, 4)


def test_two_stage_instance_partitions():
    instance, columns, rows = two_stage_instance(3, 2, 2, kind=KindTag.COVERING, seed=1)
    assert instance.num_vars == 8
    assert columns.num_blocks == 4
    assert rows.num_blocks == 3
    assert build_graph(instance, rows).edge_count == 3
    assert build_graph(instance, columns).max_degree == 3


def test_random_partition():
    partition = random_partition(10, 4, seed=2)
    assert partition.num_blocks == 4
    assert random_partition(10, 4, seed=2) == partition
    with pytest.raises(ValueError):
        random_partition(3, 4)


def test_ssc_lp_is_at_most_two():
    instance = make_ssc(3)
    assert instance.num_rows == 7
    assert solve_lp(instance).value <= 2


def test_dsc_partition():
    instance, partition = make_dsc(2)
    assert instance.num_vars == 8
    assert [sorted(b) for b in partition.blocks] == [[0, 1, 2, 3], [4, 5, 6, 7]]


def test_tight_builders_validate_their_parameters():
    with pytest.raises(ValueError):
        make_tight_star_ss(2, "3/2")
    with pytest.raises(ValueError):
        make_tight_tree_ns(3, 2)
    with pytest.raises(ValueError):
        make_tight_general_ns(1)


@pytest.mark.parametrize(
    "family, params, expected",
    [
        (TightFamily.THREE_CYCLE, {"eps": Fraction(1, 2)}, (Fraction(5, 2), 1)),
        (TightFamily.THREE_CYCLE, {"eps": Fraction(1, 3)}, (Fraction(8, 3), 1)),
        (TightFamily.STAR_SS, {"delta": 2}, (3, 2)),
        (TightFamily.STAR_SS, {"delta": 3, "eps": Fraction(1, 3)}, (5, 3)),
        (TightFamily.TREE_NS, {"delta": 2, "n": 3}, (7, 5)),
        (TightFamily.GENERAL_SS, {"K": 3}, (Fraction(5, 2), 1)),
        (TightFamily.GENERAL_NS, {"K": 3}, (3, 1)),
        (TightFamily.GENERAL_NS, {"K": 2}, (2, 2)),
    ],
)
def test_exact_tight_families(family, params, expected):
    report = verify_tightness(family, params)
    assert report.mode == ComparisonMode.EXACT
    assert (report.z_closure, report.z_int) == expected
    assert report.ok


def test_tree_family_on_the_five_design():
    report = verify_tightness(TightFamily.TREE_NS, {"delta": 2, "n": 5})
    assert (report.z_closure, report.z_int) == (13, 9)
    assert report.ok


def test_cycle_family_certificate():
    report = verify_tightness(TightFamily.CYCLE_NS, {"K": 3, "n": 3})
    assert report.mode == ComparisonMode.CERTIFICATE
    assert report.z_closure == 9
    assert report.z_int <= 7
    assert report.ok


def test_cover_family_certificate():
    report = verify_tightness(TightFamily.COVER, {"K": 2, "n": 3})
    assert report.z_int >= 2
    assert report.z_closure <= 3
    assert report.ok


@pytest.mark.parametrize("q", [2, 3])
def test_set_cover_families(q):
    ssc = verify_tightness(TightFamily.SSC, {"q": q})
    assert ssc.z_int >= q
    assert ssc.z_lp <= 2
    assert ssc.ok
    dsc = verify_tightness(TightFamily.DSC, {"q": q})
    assert dsc.z_closure == dsc.z_lp
    assert dsc.ok


def test_unknown_family_parameters():
    with pytest.raises(ValueError):
        verify_tightness(TightFamily.THREE_CYCLE, {"delta": 2})


def test_tightness_report_yaml():
    text = verify_tightness(TightFamily.THREE_CYCLE).to_yaml()
    assert "family: 3cycle" in text
    assert "ok: true" in text
