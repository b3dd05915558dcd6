"""
Exact optimization over sparse closures.

A point lies in the closure of all cuts supported on ``N`` iff it lies in the
LP relaxation and its projection onto ``N`` lies in the convex hull of the
projected integer points. Both the optimization oracle and the membership
test express the hull condition with convex multipliers, generated on demand
from the enumerated points.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sparsecut.core.constants import KindTag, LpStatus, Relation
from sparsecut.core.errors import InfeasibleInstanceError
from sparsecut.core.models import Instance
from sparsecut.core.utils import common_denominator
from sparsecut.kernel.enumeration import enumerate_integer_points
from sparsecut.kernel.lp import (LinearProgram, ProgramRow, RelaxationSolver,
                                 relaxation_program)
from sparsecut.kernel.models import PointSet

logger = logging.getLogger(__name__)

COLUMNS_PER_ROUND = 10
Projections = Dict[Tuple[int, ...], List[Tuple[int, ...]]]


def maximal_supports(supports: Iterable[Iterable[int]]) -> List[Tuple[int, ...]]:
    """Distinct nonempty supports not contained in another one, sorted.

    Hull conditions on a subset of a support are implied by the condition on
    the support itself.
    """
    distinct = {frozenset(s) for s in supports}
    distinct.discard(frozenset())
    keep = [s for s in distinct if not any(s < t for t in distinct)]
    return sorted(tuple(sorted(s)) for s in keep)


class _Pool:
    """Distinct projections of the points onto a support, in sparse form."""

    def __init__(self, projected: Sequence[Tuple[int, ...]]):
        self.points = list(projected)
        self.sparse = [[(pos, v) for pos, v in enumerate(p) if v] for p in self.points]
        self.used: set = set()

    def index(self, point: Tuple[int, ...]) -> int:
        return self.points.index(point)

    def candidates(
        self, weights: Sequence[Fraction], offset: Fraction, limit: int
    ) -> List[int]:
        """Unused points with ``sum_pos weights[pos] * p_pos > offset``, best first."""
        den = common_denominator([*weights, offset])
        w = [int(x * den) for x in weights]
        threshold = int(offset * den)
        scored = []
        for idx, entries in enumerate(self.sparse):
            if idx in self.used:
                continue
            s = 0
            for pos, v in entries:
                s += w[pos] * v
            if s > threshold:
                scored.append((threshold - s, idx))
        scored.sort()
        return [idx for _, idx in scored[:limit]]


class _HullBlock:
    def __init__(self, columns: Tuple[int, ...], pool: _Pool):
        self.columns = columns
        self.pool = pool
        self.coupling_rows: List[int] = []
        self.convexity_row = -1


def _attach_block(
    program: LinearProgram, columns: Tuple[int, ...], pool: _Pool, seed: int
) -> _HullBlock:
    """Add ``x_j - sum lambda p_j = 0`` and ``sum lambda = 1`` with one seed column."""
    block = _HullBlock(columns, pool)
    lam = program.add_column()
    pool.used.add(seed)
    point = pool.points[seed]
    for pos, j in enumerate(columns):
        coeffs = {j: Fraction(1)}
        if point[pos]:
            coeffs[lam] = Fraction(-point[pos])
        block.coupling_rows.append(len(program.rows))
        program.rows.append(ProgramRow(coeffs, Relation.EQ, Fraction(0)))
    block.convexity_row = len(program.rows)
    program.rows.append(ProgramRow({lam: Fraction(1)}, Relation.EQ, Fraction(1)))
    return block


def _generate_columns(solver: RelaxationSolver, blocks: List[_HullBlock], sign: int) -> int:
    """One pricing round over every block; returns the number of columns added.

    ``sign`` is -1 when the coupling rows read ``x_j - sum lambda p_j`` and +1
    when they read ``sum lambda p_j + ...``.
    """
    added = 0
    for block in blocks:
        duals = [solver.row_dual(r) for r in block.coupling_rows]
        weights = [-sign * y for y in duals]
        offset = solver.row_dual(block.convexity_row)
        for idx in block.pool.candidates(weights, offset, COLUMNS_PER_ROUND):
            block.pool.used.add(idx)
            entries = {
                block.coupling_rows[pos]: Fraction(sign * v)
                for pos, v in block.pool.sparse[idx]
            }
            entries[block.convexity_row] = Fraction(1)
            solver.add_column(entries)
            added += 1
    return added


def _run(solver: RelaxationSolver, blocks: List[_HullBlock], sign: int) -> LpStatus:
    status = solver.solve()
    rounds = 0
    while status == LpStatus.OPTIMAL:
        added = _generate_columns(solver, blocks, sign)
        if not added:
            break
        rounds += 1
        status = solver.reoptimize()
    logger.debug("column generation: %d rounds, status %s", rounds, status.value)
    return status


def _points_for(instance: Instance, points: Optional[PointSet], cap: Optional[int]) -> PointSet:
    if points is None:
        points = enumerate_integer_points(instance, cap=cap)
    if not points:
        raise InfeasibleInstanceError("the instance has no integer-feasible point")
    return points


def is_down_closed(instance: Instance) -> bool:
    """Packing instances without hulls: zeroing coordinates keeps a point feasible."""
    return (
        instance.kind_tag == KindTag.PACKING
        and not instance.hulls
        and all(lo == 0 for lo, _ in instance.var_bounds)
        and all(
            row.relation == Relation.LE
            and row.rhs >= 0
            and all(a >= 0 for _, a in row.coeffs)
            for row in instance.rows
        )
    )


def projected_points(
    instance: Instance,
    columns: Sequence[int],
    points: Optional[PointSet] = None,
    cap: Optional[int] = None,
) -> List[Tuple[int, ...]]:
    """
    Distinct projections of the integer points onto ``columns``.

    Down-closed instances are enumerated with every other column fixed to 0,
    which yields the same projections from a much smaller lattice.
    """
    if points is None and is_down_closed(instance):
        keep = set(columns)
        bounds = tuple(
            (lo, hi if j in keep else Fraction(0))
            for j, (lo, hi) in enumerate(instance.var_bounds)
        )
        restricted = instance.model_copy(update={"var_bounds": bounds})
        return enumerate_integer_points(restricted, cap=cap).project(columns)
    return _points_for(instance, points, cap).project(columns)


def projection_tables(
    instance: Instance, supports: Iterable[Iterable[int]], cap: Optional[int] = None
) -> Projections:
    """Projection tables of every maximal support, keyed by the sorted columns."""
    return {c: projected_points(instance, c, cap=cap) for c in maximal_supports(supports)}


def exact_closure_value(
    instance: Instance,
    supports: Iterable[Iterable[int]],
    points: Optional[PointSet] = None,
    cap: Optional[int] = None,
    projections: Optional[Projections] = None,
) -> Fraction:
    """
    Optimum of ``c^T x`` over the LP relaxation intersected with the sparse
    closures of every support.

    Args:
        instance: Pure integer instance with finite bounds
        supports: Column-index sets (0-based)
        points: Pre-enumerated integer points, enumerated when omitted
        cap: Lattice cap for the enumeration
        projections: Precomputed projection tables of a down-closed instance
    Returns:
        The exact closure value in the instance's own sense
    """
    support_sets = maximal_supports(supports)
    if points is None and is_down_closed(instance):
        seed_point = (0,) * instance.num_vars
        projections = projections or {}
        pools = [
            projections.get(c) or projected_points(instance, c, cap=cap) for c in support_sets
        ]
    else:
        points = _points_for(instance, points, cap)
        seed_point, _ = points.best(instance.objective, instance.maximize)
        pools = [points.project(c) for c in support_sets]
    program = relaxation_program(instance)
    blocks = []
    for columns, projected in zip(support_sets, pools):
        pool = _Pool(projected)
        seed = pool.index(tuple(seed_point[j] for j in columns))
        blocks.append(_attach_block(program, columns, pool, seed))
    solver = RelaxationSolver(program)
    status = _run(solver, blocks, sign=-1)
    if status != LpStatus.OPTIMAL:
        raise InfeasibleInstanceError(f"closure master ended {status.value}")
    x = solver.primal(range(instance.num_vars))
    value = instance.objective_value(x)
    logger.debug("closure value %s over %d supports", value, len(blocks))
    return value


def in_convex_hull(point: Sequence[Fraction], projected: Sequence[Tuple[int, ...]]) -> bool:
    """Whether ``point`` is a convex combination of ``projected``."""
    if not projected:
        return False
    k = len(point)
    if k == 0:
        return True
    target = tuple(point)
    if all(Fraction(v).denominator == 1 for v in target):
        as_int = tuple(int(v) for v in target)
        if as_int in set(projected):
            return True
    # columns: t+_pos, t-_pos for every coordinate, then multipliers
    program = LinearProgram(
        num_vars=2 * k,
        num_columns=2 * k,
        objective={c: Fraction(-1) for c in range(2 * k)},
    )
    pool = _Pool(projected)
    block = _HullBlock(tuple(range(k)), pool)
    lam = program.add_column()
    pool.used.add(0)
    for pos in range(k):
        coeffs = {2 * pos: Fraction(1), 2 * pos + 1: Fraction(-1)}
        if pool.points[0][pos]:
            coeffs[lam] = Fraction(pool.points[0][pos])
        block.coupling_rows.append(len(program.rows))
        program.rows.append(ProgramRow(coeffs, Relation.EQ, Fraction(target[pos])))
    block.convexity_row = len(program.rows)
    program.rows.append(ProgramRow({lam: Fraction(1)}, Relation.EQ, Fraction(1)))
    solver = RelaxationSolver(program)
    status = _run(solver, [block], sign=1)
    return status == LpStatus.OPTIMAL and solver.value == 0


def closure_contains(
    instance: Instance,
    supports: Iterable[Iterable[int]],
    point: Sequence,
    points: Optional[PointSet] = None,
    cap: Optional[int] = None,
    projections: Optional[Projections] = None,
) -> bool:
    """
    Certify that ``point`` belongs to the sparse closure of ``supports``.

    Args:
        instance: Pure integer instance with finite bounds
        supports: Column-index sets (0-based)
        point: Candidate point (rationals)
        points: Pre-enumerated integer points
        cap: Lattice cap for the enumeration
        projections: Precomputed projection tables of a down-closed instance
    Returns:
        True iff the point is in the LP relaxation and every projection is in
        the hull of the projected integer points
    """
    point = [Fraction(v) for v in point]
    if len(point) != instance.num_vars or not instance.satisfies_rows(point):
        return False
    for hull in instance.hulls:
        if not in_convex_hull([point[j] for j in hull.columns], hull.points):
            return False
    down_closed = points is None and is_down_closed(instance)
    if points is None and not down_closed:
        points = _points_for(instance, points, cap)
    projections = projections if down_closed and projections else {}
    for columns in maximal_supports(supports):
        projected = projections.get(columns) or projected_points(instance, columns, points, cap)
        if not in_convex_hull([point[j] for j in columns], projected):
            logger.debug("projection onto %s is outside the hull", columns)
            return False
    return True
