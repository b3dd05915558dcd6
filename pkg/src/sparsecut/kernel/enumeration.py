"""
Exhaustive enumeration of the integer points of a bounded pure integer instance.
"""

import logging
import math
from typing import List, Optional, Tuple

from sparsecut.core.config import get_settings
from sparsecut.core.constants import Relation
from sparsecut.core.errors import CapExceededError
from sparsecut.core.models import Instance
from sparsecut.core.utils import scale_to_integers
from sparsecut.kernel.models import PointSet

logger = logging.getLogger(__name__)


def enumerate_integer_points(instance: Instance, cap: Optional[int] = None) -> PointSet:
    """
    List every integer-feasible point, in lexicographic order.

    The search fixes variables in index order and prunes a partial assignment
    as soon as some row cannot be satisfied by any completion within bounds.
    Args:
        instance: Pure integer instance with finite bounds
        cap: Maximum lattice size; defaults to ``SPARSECUT_POINT_CAP``
    Returns:
        PointSet of the feasible points
    """
    if cap is None:
        cap = get_settings().point_cap
    if not instance.is_pure_integer:
        raise ValueError("point enumeration needs every variable to be integer")
    size = instance.lattice_size()
    if size is None:
        raise ValueError("point enumeration needs finite variable bounds")
    if size > cap:
        raise CapExceededError("lattice", size, cap)

    n = instance.num_vars
    domains = [
        range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in instance.var_bounds
    ]
    if any(len(d) == 0 for d in domains):
        return PointSet(num_vars=n)

    # slack_le[r] = b - act - (min completion) must stay >= 0 for <= rows,
    # slack_ge[r] = act + (max completion) - b must stay >= 0 for >= rows.
    m = len(instance.rows)
    slack_le = [0] * m
    slack_ge = [0] * m
    checks_le = [False] * m
    checks_ge = [False] * m
    # per variable, per domain value: list of (row, delta_le, delta_ge)
    effects: List[List[List[Tuple[int, int, int]]]] = [
        [[] for _ in d] for d in domains
    ]
    for r, row in enumerate(instance.rows):
        cols = [j for j, _ in row.coeffs]
        ints, b = scale_to_integers([a for _, a in row.coeffs], row.rhs)
        checks_le[r] = row.relation in (Relation.LE, Relation.EQ)
        checks_ge[r] = row.relation in (Relation.GE, Relation.EQ)
        low_total = high_total = 0
        for j, a in zip(cols, ints):
            d = domains[j]
            lo_c, hi_c = min(a * d[0], a * d[-1]), max(a * d[0], a * d[-1])
            low_total += lo_c
            high_total += hi_c
            for k, v in enumerate(d):
                delta_le = a * v - lo_c
                delta_ge = a * v - hi_c
                if (checks_le[r] and delta_le) or (checks_ge[r] and delta_ge):
                    effects[j][k].append((r, delta_le, delta_ge))
        slack_le[r] = b - low_total
        slack_ge[r] = high_total - b
        if (checks_le[r] and slack_le[r] < 0) or (checks_ge[r] and slack_ge[r] < 0):
            logger.debug("row %d cannot be satisfied inside the bounds", r + 1)
            return PointSet(num_vars=n)

    hull_sets = [(h.columns, set(h.points)) for h in instance.hulls]
    points: List[Tuple[int, ...]] = []
    x = [0] * n

    def search(j: int) -> None:
        if j == n:
            for columns, allowed in hull_sets:
                if tuple(x[c] for c in columns) not in allowed:
                    return
            points.append(tuple(x))
            return
        for k, v in enumerate(domains[j]):
            touched = effects[j][k]
            feasible = True
            for r, dle, dge in touched:
                slack_le[r] -= dle
                slack_ge[r] += dge
                if (checks_le[r] and slack_le[r] < 0) or (checks_ge[r] and slack_ge[r] < 0):
                    feasible = False
            if feasible:
                x[j] = v
                search(j + 1)
            for r, dle, dge in touched:
                slack_le[r] += dle
                slack_ge[r] -= dge
        x[j] = 0

    search(0)
    logger.debug("enumerated %d feasible points out of a %d-point lattice", len(points), size)
    return PointSet(num_vars=n, points=tuple(points))
