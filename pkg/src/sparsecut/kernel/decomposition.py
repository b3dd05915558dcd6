"""
Integer optima of down-closed packing instances from support projections.

When every row lies inside one of the supports, a point is feasible iff each
of its projections is a projected feasible point, so the optimum is a join of
the projection tables.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from sparsecut.core.constants import LpStatus
from sparsecut.core.models import Instance
from sparsecut.kernel.closure import (Projections, is_down_closed,
                                      maximal_supports, projected_points)
from sparsecut.kernel.models import MilpResult

logger = logging.getLogger(__name__)


def decomposed_milp_value(
    instance: Instance,
    supports: Iterable[Iterable[int]],
    cap: Optional[int] = None,
    projections: Optional[Projections] = None,
) -> MilpResult:
    """
    Exact z^I by backtracking over the projections onto ``supports``.

    Args:
        instance: Down-closed packing instance
        supports: Column sets; every row support must lie inside one of them
        cap: Lattice cap for each projection enumeration
        projections: Precomputed projection tables, keyed by sorted columns
    Returns:
        MilpResult with the optimal value and one optimal point
    """
    if not is_down_closed(instance):
        raise ValueError("decomposition needs a down-closed packing instance")
    support_sets = maximal_supports(supports)
    for r, row in enumerate(instance.rows):
        if row.support and not any(row.support <= set(s) for s in support_sets):
            raise ValueError(f"row {r + 1} is not inside any support")

    c = instance.objective
    x: List[int] = [0] * instance.num_vars
    covered: set = set()
    for columns in support_sets:
        covered.update(columns)
    for j, (_, hi) in enumerate(instance.var_bounds):
        if j not in covered and c[j] > 0:
            if hi is None:
                return MilpResult(status=LpStatus.UNBOUNDED)
            x[j] = int(hi)

    # per support: new columns, positions shared with earlier supports, table
    seen: set = set()
    plan = []
    for columns in support_sets:
        table = (projections or {}).get(columns) or projected_points(instance, columns, cap=cap)
        shared = [pos for pos, j in enumerate(columns) if j in seen]
        fresh = [pos for pos, j in enumerate(columns) if j not in seen]
        index: Dict[Tuple[int, ...], List[Tuple[Fraction, Tuple[int, ...]]]] = {}
        for p in table:
            gain = sum((c[columns[pos]] * p[pos] for pos in fresh), Fraction(0))
            index.setdefault(tuple(p[pos] for pos in shared), []).append((gain, p))
        for entries in index.values():
            entries.sort(key=lambda e: -e[0])
        best_gain = max((e[0][0] for e in index.values()), default=Fraction(0))
        plan.append((columns, shared, fresh, index, best_gain))
        seen.update(columns)

    # optimistic completion value after step k
    tail = [Fraction(0)] * (len(plan) + 1)
    for k in range(len(plan) - 1, -1, -1):
        tail[k] = tail[k + 1] + plan[k][4]

    base = instance.objective_value(x)
    best_value: Optional[Fraction] = None
    best_point: Optional[List[int]] = None

    def search(k: int, value: Fraction) -> None:
        nonlocal best_value, best_point
        if best_value is not None and value + tail[k] <= best_value:
            return
        if k == len(plan):
            best_value, best_point = value, list(x)
            return
        columns, shared, fresh, index, _ = plan[k]
        key = tuple(x[columns[pos]] for pos in shared)
        for gain, p in index.get(key, ()):
            if best_value is not None and value + gain + tail[k + 1] <= best_value:
                break
            for pos in fresh:
                x[columns[pos]] = p[pos]
            search(k + 1, value + gain)
        for pos in fresh:
            x[columns[pos]] = 0

    search(0, base)
    if best_point is None:
        return MilpResult(status=LpStatus.INFEASIBLE)
    logger.debug("decomposed optimum %s over %d supports", best_value, len(plan))
    return MilpResult(
        status=LpStatus.OPTIMAL,
        value=best_value,
        solution=tuple(Fraction(v) for v in best_point),
    )
