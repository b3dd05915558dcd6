"""
Depth-first branch-and-bound over the exact LP relaxation.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sparsecut.core.config import get_settings
from sparsecut.core.constants import LpStatus, Relation, VarKind
from sparsecut.core.errors import CapExceededError
from sparsecut.core.models import Cut, Instance
from sparsecut.kernel.enumeration import enumerate_integer_points
from sparsecut.kernel.lp import RelaxationSolver, relaxation_program
from sparsecut.kernel.models import MilpResult

logger = logging.getLogger(__name__)


def _branching_variable(instance: Instance, x: Sequence[Fraction]) -> Optional[int]:
    """First integer variable with the largest distance to an integer."""
    best_j, best_gap = None, Fraction(0)
    for j, kind in enumerate(instance.var_kind):
        if kind != VarKind.INTEGER:
            continue
        frac = x[j] - math.floor(x[j])
        gap = min(frac, 1 - frac)
        if gap > best_gap:
            best_j, best_gap = j, gap
    return best_j


def _integral_objective(instance: Instance) -> bool:
    return all(
        c.denominator == 1 and (c == 0 or kind == VarKind.INTEGER)
        for c, kind in zip(instance.objective, instance.var_kind)
    )


def solve_milp(
    instance: Instance,
    extra_cuts: Sequence[Cut] = (),
    node_limit: Optional[int] = None,
) -> MilpResult:
    """
    Exact integer optimum by branch-and-bound.

    Branches on the first most-fractional variable, explores depth-first
    and processes the floor branch before the ceiling branch.
    Args:
        instance: Instance whose integer variables all have finite bounds
        extra_cuts: Cuts added to every relaxation
        node_limit: Optional cap on explored nodes; reaching it with open
            nodes left raises CapExceededError
    Returns:
        MilpResult with the optimal value in the instance's own sense
    """
    for j, (kind, (_, hi)) in enumerate(zip(instance.var_kind, instance.var_bounds)):
        if kind == VarKind.INTEGER and hi is None:
            raise ValueError(f"integer variable {j + 1} has no finite upper bound")

    root = RelaxationSolver(relaxation_program(instance, extra_cuts))
    status = root.solve()
    if status == LpStatus.UNBOUNDED:
        return MilpResult(status=status, nodes=1)
    if status == LpStatus.INFEASIBLE:
        return MilpResult(status=status, nodes=1)

    integral = _integral_objective(instance)
    sign = 1 if instance.maximize else -1
    n = instance.num_vars
    incumbent: Optional[List[Fraction]] = None
    incumbent_value: Optional[Fraction] = None
    nodes = 0
    # entries: (solver, None) for solved nodes, (parent, (j, relation, bound)) otherwise
    stack: List[Tuple[RelaxationSolver, Optional[Tuple[int, Relation, int]]]] = [(root, None)]

    while stack:
        if node_limit is not None and nodes >= node_limit:
            # open nodes remain, so neither optimality nor infeasibility is proven
            raise CapExceededError("branch-and-bound node count", nodes + 1, node_limit)
        solver, branch = stack.pop()
        if branch is not None:
            solver = solver.copy()
            j, relation, bound = branch
            if solver.add_row({j: Fraction(1)}, relation, Fraction(bound)) != LpStatus.OPTIMAL:
                nodes += 1
                continue
        nodes += 1
        bound_value = solver.value
        if integral:
            bound_value = Fraction(math.floor(bound_value))
        if incumbent_value is not None and bound_value <= incumbent_value:
            continue
        x = solver.primal(range(n))
        j = _branching_variable(instance, x)
        if j is None:
            incumbent, incumbent_value = x, solver.value
            logger.debug("node %d: incumbent %s", nodes, sign * incumbent_value)
            continue
        down = math.floor(x[j])
        stack.append((solver, (j, Relation.GE, down + 1)))
        stack.append((solver, (j, Relation.LE, down)))

    logger.debug("branch-and-bound explored %d nodes", nodes)
    if incumbent is None:
        return MilpResult(status=LpStatus.INFEASIBLE, nodes=nodes)
    return MilpResult(
        status=LpStatus.OPTIMAL,
        value=instance.objective_value(incumbent),
        solution=tuple(incumbent),
        nodes=nodes,
    )


def milp_value(instance: Instance, cap: Optional[int] = None) -> MilpResult:
    """z^I through enumeration when the lattice fits ``cap``, else branch-and-bound."""
    if cap is None:
        cap = get_settings().point_cap
    size = instance.lattice_size()
    if instance.is_pure_integer and size is not None and size <= cap:
        points = enumerate_integer_points(instance, cap=cap)
        if not points:
            return MilpResult(status=LpStatus.INFEASIBLE)
        best, value = points.best(instance.objective, instance.maximize)
        return MilpResult(
            status=LpStatus.OPTIMAL,
            value=value,
            solution=tuple(Fraction(v) for v in best),
        )
    return solve_milp(instance)
