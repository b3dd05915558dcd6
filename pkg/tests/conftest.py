from pathlib import Path

import pytest

from sparsecut.constructions import make_tight_3cycle
from sparsecut.core.constants import Axis, KindTag, Relation
from sparsecut.core.models import BlockPartition, Instance, Row

STAR_SMILP = """\
SMILP 1
# star on three blocks, the centre shares a row with each leaf
sense max
kind packing
vars 3
obj 1 1 1
vartypes BBB
row <= 3/2 : 1 1 2 1
row <= 3/2 : 1 1 3 1
colblocks 3 : 1 | 2 | 3
"""


@pytest.fixture
def knapsack() -> Instance:
    """max 5x1 + 4x2 + 3x3 s.t. 2x1 + 3x2 + x3 <= 5, binary; z^I = 9."""
    return Instance.build(
        [5, 4, 3],
        [Row(coeffs=[(0, 2), (1, 3), (2, 1)], relation=Relation.LE, rhs=5)],
        kind_tag=KindTag.PACKING,
    )


@pytest.fixture
def half_pair() -> Instance:
    """max x1 + x2 s.t. 2x1 + 2x2 <= 3; z^LP = 3/2, z^I = 1."""
    return Instance.build(
        [1, 1],
        [Row(coeffs=[(0, 2), (1, 2)], relation=Relation.LE, rhs=3)],
        kind_tag=KindTag.PACKING,
    )


@pytest.fixture
def three_cycle():
    return make_tight_3cycle("1/2")


@pytest.fixture
def singleton_columns():
    def build(n: int) -> BlockPartition:
        return BlockPartition.singletons(Axis.COLUMNS, n)

    return build


@pytest.fixture
def star_file(tmp_path: Path) -> Path:
    path = tmp_path / "star.smilp"
    path.write_text(STAR_SMILP, encoding="utf-8")
    return path
