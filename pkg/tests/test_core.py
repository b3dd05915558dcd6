from fractions import Fraction

import pytest
from pydantic import ValidationError

from sparsecut.core.constants import Axis, KindTag, Relation, Sense, VarKind
from sparsecut.core.errors import (InstanceFormatError, InvariantViolationError,
                                   PartitionMismatchError)
from sparsecut.core.models import (BlockPartition, Cut, HullConstraint,
                                   Instance, Row)
from sparsecut.core.smilp import (dump_smilp, load_instance, parse_smilp,
                                  save_instance)
from sparsecut.core.utils import (closure_ratio, format_rational,
                                  parse_index_sets, parse_rational)
from sparsecut.core.validation import validate


def test_parse_rational_accepts_integers_and_fractions():
    assert parse_rational("3") == 3
    assert parse_rational(" -5/3 ") == Fraction(-5, 3)


@pytest.mark.parametrize("token", ["0.5", "1e3", "", "abc"])
def test_parse_rational_rejects_decimals_and_garbage(token):
    with pytest.raises(ValueError):
        parse_rational(token)


def test_format_rational_uses_lowest_terms():
    assert format_rational(Fraction(4, 6)) == "2/3"
    assert format_rational(Fraction(6, 3)) == "2"


def test_closure_ratio_follows_the_sense():
    assert closure_ratio(True, 2, 3) == Fraction(3, 2)
    assert closure_ratio(False, 3, 2) == Fraction(3, 2)
    assert closure_ratio(True, 0, 0) == 1
    assert closure_ratio(True, 0, 1) is None


def test_parse_index_sets_is_one_based():
    assert parse_index_sets(["1,3", "2"]) == [[0, 2], [1]]
    with pytest.raises(ValueError):
        parse_index_sets(["0,1"])
    with pytest.raises(ValueError):
        parse_index_sets([" , "])


def test_instance_rejects_floats():
    with pytest.raises((TypeError, ValidationError)):
        Instance.build([0.5, 1], [])


def test_lattice_size_and_feasibility(knapsack):
    assert knapsack.lattice_size() == 8
    assert knapsack.is_integer_feasible((1, 1, 0))
    assert not knapsack.is_integer_feasible((1, 1, 1))
    assert knapsack.objective_value((1, 1, 0)) == 9


def test_unbounded_variables_have_no_lattice():
    instance = Instance.build([1], [], upper=None)
    assert instance.lattice_size() is None


def test_block_partition_must_cover_every_index():
    with pytest.raises(ValidationError):
        BlockPartition(axis=Axis.COLUMNS, size=3, blocks=[[0], [1]])
    with pytest.raises(ValidationError):
        BlockPartition(axis=Axis.COLUMNS, size=2, blocks=[[0, 1], [1]])
    partition = BlockPartition(axis=Axis.COLUMNS, size=3, blocks=[[0, 2], [1]])
    assert partition.block_of(2) == 0


def test_cut_coefficients_stay_on_the_support():
    with pytest.raises(ValidationError):
        Cut(coeffs=[(0, 1), (2, 1)], rhs=1, support=frozenset({0, 1}))
    cut = Cut(coeffs=[(0, 2), (1, 2)], rhs=2, support=frozenset({0, 1}))
    assert cut.violation((1, 1)) == 2
    assert cut.normalized().rhs == Fraction(1, 2)


def test_hull_constraint_checks_point_shape():
    with pytest.raises(ValidationError):
        HullConstraint(columns=(0, 1), points=[(0, 1, 1)])
    hull = HullConstraint(columns=(0, 1), points=[(0, 0), (1, 1)])
    assert hull.contains_integer_point((1, 1, 0))
    assert not hull.contains_integer_point((1, 0, 0))


def test_validate_reports_every_violation():
    instance = Instance.build(
        [1, -1],
        [
            Row(coeffs=[(1, 1), (0, -2)], relation=Relation.GE, rhs=-1),
        ],
        kind_tag=KindTag.PACKING,
    )
    diagnostics = validate(instance)
    assert "objective sign, column 2" in diagnostics
    assert "column indices not increasing, row 1" in diagnostics
    assert "coefficient sign, row 1 column 1" in diagnostics
    assert "rhs sign, row 1" in diagnostics
    assert "relation >= not allowed for packing, row 1" in diagnostics


def test_validate_accepts_general_rows(three_cycle):
    instance, _ = three_cycle
    assert validate(instance) == []
    general = Instance.build(
        [1, 1],
        [Row(coeffs=[(0, -1), (1, 1)], relation=Relation.EQ, rhs=0)],
        kind_tag=KindTag.GENERAL,
    )
    assert validate(general) == []


def test_smilp_round_trip(three_cycle):
    instance, partition = three_cycle
    instance = instance.model_copy(update={"name": ""})
    text = dump_smilp(instance, [partition])
    document = parse_smilp(text)
    assert document.instance == instance
    assert document.col_partition == partition
    assert document.row_partition is None
    assert dump_smilp(document.instance, document.partitions) == text


def test_smilp_load_and_save(tmp_path, star_file):
    document = load_instance(star_file)
    instance = document.instance
    assert instance.num_vars == 3
    assert instance.num_rows == 2
    assert instance.rows[0].rhs == Fraction(3, 2)
    assert instance.var_kind == (VarKind.INTEGER,) * 3
    assert document.graph_partition().num_blocks == 3

    target = tmp_path / "copy.smilp"
    save_instance(instance, document.partitions, target)
    assert load_instance(target) == document


def test_smilp_reads_hulls_and_row_blocks():
    text = "\n".join(
        [
            "SMILP 1",
            "sense min",
            "kind covering",
            "vars 3",
            "obj 1 2 3",
            "vartypes BBI",
            "row >= 1 : 1 1 2 1",
            "row >= 1 : 2 1",
            "hull 1 2 : 0 1 | 1 0 | 1 1",
            "rowblocks 2 : 1 | 2",
        ]
    )
    document = parse_smilp(text)
    assert document.instance.sense == Sense.MINIMIZE
    assert document.instance.var_bounds[2] == (0, None)
    assert document.instance.hulls[0].points == ((0, 1), (1, 0), (1, 1))
    assert document.graph_partition().axis == Axis.ROWS
    with pytest.raises(PartitionMismatchError):
        document.graph_partition(KindTag.PACKING)


@pytest.mark.parametrize(
    "text, line",
    [
        ("sense max\n", 1),
        ("SMILP 1\nsense max\nkind packing\nvars 2\nobj 1\n", 5),
        ("SMILP 1\nsense max\nkind packing\nvars 2\nobj 1 1\nvartypes BB\nrow <= 1 : 3 1\n", 7),
        ("SMILP 1\nsense max\nkind packing\nvars 2\nobj 1 0.5\n", 5),
        ("SMILP 1\nsense max\nkind packing\nvars 2\nobj 1 1\nvartypes BX\n", 6),
    ],
)
def test_smilp_errors_carry_the_line(text, line):
    with pytest.raises(InstanceFormatError) as excinfo:
        parse_smilp(text)
    assert excinfo.value.line == line


def test_load_reports_undecodable_bytes_with_their_line(tmp_path):
    path = tmp_path / "latin1.smilp"
    path.write_bytes(b"SMILP 1\nsense max\n# caf\xe9\n")
    with pytest.raises(InstanceFormatError) as excinfo:
        load_instance(path)
    assert excinfo.value.line == 3
    assert "invalid UTF-8" in str(excinfo.value)


def test_smilp_rejects_instances_breaking_their_kind():
    text = "SMILP 1\nsense max\nkind packing\nvars 1\nobj 1\nvartypes B\nrow <= 1 : 1 -1\n"
    with pytest.raises(InvariantViolationError) as excinfo:
        parse_smilp(text)
    assert "coefficient sign, row 1 column 1" in excinfo.value.diagnostics


def test_save_refuses_unrepresentable_bounds(tmp_path):
    instance = Instance.build([1], [], upper=2)
    with pytest.raises(InstanceFormatError):
        save_instance(instance, [], tmp_path / "bad.smilp")
