"""
Covering instances where sparse cuts fail: the special set cover, its
doubled variant, and the scenario-specific construction on a clique.
"""

from fractions import Fraction
from typing import Optional, Tuple

from sparsecut.core.config import get_settings
from sparsecut.core.constants import Axis, KindTag, Relation, Sense
from sparsecut.core.errors import CapExceededError
from sparsecut.core.models import BlockPartition, Instance, Row
from sparsecut.constructions.designs import (is_prime, make_affine_design,
                                             make_planes_partition)

MAX_SSC_ORDER = 4


def _odd(v: int, u: int) -> bool:
    return bin(v & u).count("1") % 2 == 1


def _ssc_rows(q: int, copies: int):
    """Rows ``sum_{v : u in S(v)} x_v >= 1`` for every nonzero u.

    The row of u = 0 would read ``0 >= 1`` and is left out.
    """
    size = 2**q
    rows = []
    for u in range(1, size):
        cols = [c * size + v for c in range(copies) for v in range(size) if _odd(v, u)]
        rows.append(Row(coeffs=[(j, 1) for j in cols], relation=Relation.GE, rhs=1))
    return rows


def _check_order(q: int) -> None:
    if not 1 <= q <= MAX_SSC_ORDER:
        raise ValueError(f"q must lie in [1, {MAX_SSC_ORDER}], got {q}")


def make_ssc(q: int = 3) -> Instance:
    """Set cover of the nonzero vectors of GF(2)^q by the sets ``S(v)``."""
    _check_order(q)
    return Instance.build(
        [1] * 2**q,
        _ssc_rows(q, 1),
        sense=Sense.MINIMIZE,
        kind_tag=KindTag.COVERING,
        upper=1,
        name=f"ssc-{q}",
    )


def make_dsc(q: int = 3) -> Tuple[Instance, BlockPartition]:
    """``A x + A y >= 1`` with the column partition ``{x, y}``."""
    _check_order(q)
    size = 2**q
    instance = Instance.build(
        [1] * (2 * size),
        _ssc_rows(q, 2),
        sense=Sense.MINIMIZE,
        kind_tag=KindTag.COVERING,
        upper=1,
        name=f"dsc-{q}",
    )
    partition = BlockPartition(
        axis=Axis.COLUMNS, size=2 * size, blocks=[range(size), range(size, 2 * size)]
    )
    return instance, partition


def make_tight_cover(
    K: int = 2, n: int = 3, cap: Optional[int] = None
) -> Tuple[Instance, BlockPartition]:
    """
    Two-stage covering instance whose covering graph is the clique K_K.

    Scenario k owns ``n^n`` rows, one per element g of the planes partition.
    Inside set i of design family k, the t-th smallest column carries the
    indicator of ``G^i_t``, so the row of g reads
    ``sum_i x_{F_k^i[u_i]} + y_k >= 1`` where u are the coordinates of g.
    The objective is ``sum x + n^n * sum y``.
    Args:
        K: Number of scenarios
        n: Prime with ``n >= max(K, 2)``
        cap: Cap on ``n^n``, defaults to ``SPARSECUT_PLANES_CAP``
    Returns:
        The instance and its row partition, one block per scenario
    """
    if K < 1 or not is_prime(n) or n < max(K, 2):
        raise ValueError(f"need K >= 1 and a prime n >= max(K, 2), got K={K}, n={n}")
    cap = get_settings().planes_cap if cap is None else cap
    if n**n > cap:
        raise CapExceededError("rows per scenario", n**n, cap)
    planes = make_planes_partition(n, cap=cap)
    design = make_affine_design(n)
    size = n * n
    ground = planes.ground_size
    rows = []
    for k in range(K):
        ordered = [sorted(s) for s in design.families[k]]
        for g in range(ground):
            u = planes.coordinates(g)
            cols = sorted(ordered[i][u[i]] for i in range(n))
            coeffs = [(j, 1) for j in cols] + [(size + k, 1)]
            rows.append(Row(coeffs=coeffs, relation=Relation.GE, rhs=1))
    instance = Instance.build(
        [1] * size + [Fraction(ground)] * K,
        rows,
        sense=Sense.MINIMIZE,
        kind_tag=KindTag.COVERING,
        upper=1,
        name=f"tight-cover-K{K}-n{n}",
    )
    partition = BlockPartition(
        axis=Axis.ROWS,
        size=K * ground,
        blocks=[range(k * ground, (k + 1) * ground) for k in range(K)],
    )
    return instance, partition
