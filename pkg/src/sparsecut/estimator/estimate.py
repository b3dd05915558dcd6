"""
Iterative estimation of the optimum over a family of sparse closures.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

from sparsecut.core.config import get_settings
from sparsecut.core.constants import LpStatus, Termination, VarKind
from sparsecut.core.errors import (CapExceededError, InfeasibleInstanceError,
                                   UnboundedSeparationError)
from sparsecut.core.models import Cut, Instance
from sparsecut.estimator.models import ClosureRun, EstimatorConfig, TraceEntry
from sparsecut.estimator.separation import generate_cut
from sparsecut.kernel.enumeration import enumerate_integer_points
from sparsecut.kernel.lp import solve_lp
from sparsecut.kernel.models import PointSet

logger = logging.getLogger(__name__)


def _is_integral(instance: Instance, x) -> bool:
    return all(
        kind != VarKind.INTEGER or v.denominator == 1
        for kind, v in zip(instance.var_kind, x)
    )


def _try_enumerate(instance: Instance, cap: int) -> Optional[PointSet]:
    size = instance.lattice_size()
    if not instance.is_pure_integer or size is None or size > cap:
        return None
    try:
        return enumerate_integer_points(instance, cap=cap)
    except CapExceededError:
        return None


def estimate_zcut(
    instance: Instance,
    supports: Iterable[Iterable[int]],
    config: Optional[EstimatorConfig] = None,
) -> ClosureRun:
    """
    Tighten the LP relaxation with sparse cuts, cycling through the supports.

    Each round solves the LP with the cuts found so far. An integral optimum
    ends the run. While the last round made progress (the value moved by more
    than epsilon or a cut was added) the current support is tried again;
    otherwise the next support is tried, and the run stops once every support
    failed in a row.
    Args:
        instance: Instance with boxed integer variables
        supports: Column-index sets N_1..N_t
        config: Tolerances and caps
    Returns:
        ClosureRun whose estimate bounds the closure optimum from the LP side
    """
    config = config or EstimatorConfig()
    supports = [sorted(set(s)) for s in supports]
    if not supports:
        raise ValueError("estimate_zcut needs at least one support")
    cap = config.point_cap or get_settings().point_cap
    points = _try_enumerate(instance, cap)
    if points is not None and not points:
        raise InfeasibleInstanceError("the instance has no integer-feasible point")
    projected: Dict[int, Optional[list]] = {}
    known: Dict[int, list] = {}

    sign = 1 if instance.maximize else -1
    t = len(supports)
    cuts: List[Cut] = []
    trace: List[TraceEntry] = []
    z_lp: Optional[Fraction] = None
    z_old: Optional[Fraction] = None
    progressed = True
    i = count = rounds = 0

    while True:
        lp = solve_lp(instance, cuts)
        if lp.status == LpStatus.INFEASIBLE:
            raise InfeasibleInstanceError("the LP relaxation is infeasible")
        if lp.status == LpStatus.UNBOUNDED:
            raise UnboundedSeparationError("the LP relaxation is unbounded")
        z_new, x_star = lp.value, lp.solution
        if z_lp is None:
            z_lp = z_new
        if _is_integral(instance, x_star):
            termination = Termination.INTEGRAL_SOLUTION
            break
        improvement = None if z_old is None else sign * (z_old - z_new)
        if progressed or improvement is None or improvement > config.epsilon:
            count = 0
        else:
            i = (i + 1) % t
            count += 1
        if count == t:
            termination = Termination.STALLED_ALL_SUPPORTS
            break
        if rounds >= config.max_rounds or len(cuts) >= config.max_cuts:
            termination = Termination.CAP_HIT
            break
        z_old = z_new

        if points is not None and i not in projected:
            projected[i] = points.project(supports[i])
        cut = generate_cut(
            instance,
            supports[i],
            x_star,
            config,
            projected=projected.get(i),
            known=known.setdefault(i, []),
        )
        rounds += 1
        progressed = cut is not None
        if cut is not None:
            cuts.append(cut)
            logger.info("round %d: cut %d on support %d, z = %s", rounds, len(cuts), i + 1, z_new)
        trace.append(
            TraceEntry(
                round=rounds,
                support_id=i,
                z_value=z_new,
                violation=None if cut is None else cut.violation(x_star),
                cut_id=None if cut is None else len(cuts) - 1,
                certificate=None if cut is None else cut.rhs,
            )
        )

    logger.info(
        "estimate %s after %d rounds, %d cuts (%s)", z_new, rounds, len(cuts), termination.value
    )
    return ClosureRun(
        z_lp=z_lp,
        z_estimate=z_new,
        cuts_added=tuple(cuts),
        rounds=rounds,
        termination=termination,
        trace=tuple(trace),
    )
