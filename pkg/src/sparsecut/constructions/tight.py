"""
Packing and general instances on which sparse closures are provably weak.
"""

import itertools
from fractions import Fraction
from typing import List, Tuple

from sparsecut.core.constants import Axis, KindTag, Relation
from sparsecut.core.models import BlockPartition, HullConstraint, Instance, Row
from sparsecut.core.utils import as_fraction
from sparsecut.constructions.designs import is_prime, make_affine_design

ONE = Fraction(1)


def _row(columns, rhs, relation: Relation = Relation.LE) -> Row:
    return Row(coeffs=[(j, 1) for j in sorted(columns)], relation=relation, rhs=rhs)


def _columns(blocks) -> BlockPartition:
    blocks = [list(b) for b in blocks]
    return BlockPartition(axis=Axis.COLUMNS, size=sum(len(b) for b in blocks), blocks=blocks)


def _check_eps(eps, high: Fraction) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps <= high:
        raise ValueError(f"eps must lie in (0, {high}], got {eps}")
    return eps


def make_tight_3cycle(eps="1/2") -> Tuple[Instance, BlockPartition]:
    """Three binaries with pairwise rows ``x_i + x_j <= 2 - 2*eps/3``.

    z^I = 1 while the singleton closure reaches ``3 - eps``.
    """
    eps = _check_eps(eps, ONE)
    rhs = 2 - Fraction(2, 3) * eps
    rows = [_row(pair, rhs) for pair in itertools.combinations(range(3), 2)]
    instance = Instance.build(
        [1, 1, 1], rows, kind_tag=KindTag.PACKING, upper=1, name=f"tight-3cycle-eps{eps}"
    )
    return instance, _columns([[0], [1], [2]])


def make_tight_star_ss(delta: int = 2, eps="1/2") -> Tuple[Instance, BlockPartition]:
    """``x_i + x_{delta+i} <= 2 - eps`` with the first delta columns in one block."""
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")
    eps = _check_eps(eps, ONE)
    rows = [_row([i, delta + i], 2 - eps) for i in range(delta)]
    instance = Instance.build(
        [1] * (2 * delta),
        rows,
        kind_tag=KindTag.PACKING,
        upper=1,
        name=f"tight-star-ss-d{delta}-eps{eps}",
    )
    return instance, _columns([range(delta)] + [[delta + i] for i in range(delta)])


def make_tight_tree_ns(delta: int = 2, n: int = 5) -> Tuple[Instance, BlockPartition]:
    """
    Star packing instance from an affine n-design.

    Columns ``0..n^2-1`` are x, column ``n^2 + i`` is y_i. Rows are
    ``sum x <= n`` and ``x_a + x_b + y_i <= 2`` for every pair a, b lying in
    different sets of family i. The objective is
    ``sum x + (n-1)/(delta-1) * sum y``.
    Args:
        delta: Number of leaves, at least 2
        n: Prime with ``n >= delta``
    Returns:
        The instance and the partition ``{x, y_1, ..., y_delta}``
    """
    if delta < 2 or not is_prime(n) or n < delta:
        raise ValueError(f"need delta >= 2 and a prime n >= delta, got delta={delta}, n={n}")
    design = make_affine_design(n)
    size = n * n
    rows = [_row(range(size), n)]
    for i in range(delta):
        y = size + i
        rows.extend(_row([a, b, y], 2) for a, b in design.cross_pairs(i))
    weight = Fraction(n - 1, delta - 1)
    instance = Instance.build(
        [1] * size + [weight] * delta,
        rows,
        kind_tag=KindTag.PACKING,
        upper=1,
        name=f"tight-tree-ns-d{delta}-n{n}",
    )
    return instance, _columns([range(size)] + [[size + i] for i in range(delta)])


def make_tight_cycle_ns(K: int = 3, n: int = 3) -> Tuple[Instance, BlockPartition]:
    """
    Cycle packing instance: K blocks of n^2 binaries.

    Block i uses family i of an affine n-design to couple it with block
    ``i+1 mod K`` in both orientations:
    ``x^i_a + x^i_b + x^{i+1}_c <= 2`` and ``x^{i+1}_a + x^{i+1}_b + x^i_c <= 2``
    for a, b in different sets of the family and every c.
    """
    if K < 3 or not is_prime(n) or n < K:
        raise ValueError(f"need K >= 3 and a prime n >= K, got K={K}, n={n}")
    design = make_affine_design(n)
    size = n * n

    def col(block: int, j: int) -> int:
        return (block % K) * size + j

    rows: List[Row] = [_row([col(i, j) for j in range(size)], n) for i in range(K)]
    for i in range(K):
        pairs = design.cross_pairs(i)
        for here, there in ((i, i + 1), (i + 1, i)):
            for a, b in pairs:
                for c in range(size):
                    rows.append(_row([col(here, a), col(here, b), col(there, c)], 2))
    instance = Instance.build(
        [1] * (K * size),
        rows,
        kind_tag=KindTag.PACKING,
        upper=1,
        name=f"tight-cycle-ns-K{K}-n{n}",
    )
    return instance, _columns([range(i * size, (i + 1) * size) for i in range(K)])


def make_tight_general_ss(K: int = 3, eps="1/2") -> Tuple[Instance, BlockPartition]:
    """
    General-matrix star on K nodes with ``2K - 1`` binaries.

    ``sum_{i<K} x_i = 1``, ``x_i + x_j <= 2 - eps`` for ``i < K-1`` and
    ``j >= K, j != K + i``, and ``x_{K-1} + x_j <= 2 - eps`` for ``j >= K``;
    maximize ``x_{K-1} + sum_{j>=K} x_j``.
    """
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    eps = as_fraction(eps)
    if not 0 < eps < Fraction(K - 1, K):
        raise ValueError(f"eps must lie in (0, {Fraction(K - 1, K)}), got {eps}")
    leaves = range(K, 2 * K - 1)
    rows = [_row(range(K), 1, Relation.EQ)]
    for i in range(K - 1):
        rows.extend(_row([i, j], 2 - eps) for j in leaves if j != K + i)
    rows.extend(_row([K - 1, j], 2 - eps) for j in leaves)
    objective = [0] * (K - 1) + [1] * K
    instance = Instance.build(
        objective,
        rows,
        kind_tag=KindTag.GENERAL,
        upper=1,
        name=f"tight-general-ss-K{K}-eps{eps}",
    )
    return instance, _columns([range(K)] + [[j] for j in leaves])


def make_tight_general_ns(K: int = 3) -> Tuple[Instance, BlockPartition]:
    """
    Point-set-backed instance with ``2K`` binaries ``(x, y)``.

    Hull k constrains ``(x, y_k)`` to the points where ``y_k = 1`` iff x is
    the unit vector e_k or its complement; the objective is ``sum y``.
    """
    if K < 2 or 2 * K > 20:
        raise ValueError(f"K must lie in [2, 10], got {K}")
    hulls = []
    for k in range(K):
        unit = tuple(int(i == k) for i in range(K))
        complement = tuple(1 - v for v in unit)
        points = [
            x + (int(x in (unit, complement)),) for x in itertools.product((0, 1), repeat=K)
        ]
        hulls.append(HullConstraint(columns=tuple(range(K)) + (K + k,), points=points))
    instance = Instance.build(
        [0] * K + [1] * K,
        kind_tag=KindTag.GENERAL,
        upper=1,
        hulls=hulls,
        name=f"tight-general-ns-K{K}",
    )
    return instance, _columns([range(K)] + [[K + k] for k in range(K)])
