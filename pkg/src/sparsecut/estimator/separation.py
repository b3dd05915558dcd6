"""
Cut generation on one support by row generation over integer points.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sparsecut.core.constants import LpStatus, Relation, Sense, SignRule
from sparsecut.core.errors import (InfeasibleInstanceError,
                                    UnboundedSeparationError)
from sparsecut.core.models import Cut, Instance
from sparsecut.estimator.models import EstimatorConfig
from sparsecut.kernel.branch_and_bound import solve_milp
from sparsecut.kernel.lp import LinearProgram, ProgramRow, RelaxationSolver

logger = logging.getLogger(__name__)

Projected = Tuple[Fraction, ...]


class _SeparationLP:
    """``max x*^T alpha - beta`` s.t. ``alpha^T p <= beta`` for p in X, ``|alpha|_1 = 1``.

    Columns: alpha+ per support position (unless the rule forbids it), alpha-
    likewise, then beta+ and beta-.
    """

    def __init__(self, x_star: Sequence[Fraction], rule: SignRule):
        k = len(x_star)
        self.k = k
        self.plus = list(range(k)) if rule != SignRule.NONPOSITIVE else []
        offset = len(self.plus)
        self.minus = [offset + i for i in range(k)] if rule != SignRule.NONNEGATIVE else []
        self.beta_plus = offset + len(self.minus)
        self.beta_minus = self.beta_plus + 1
        n = self.beta_minus + 1
        objective: Dict[int, Fraction] = {}
        for pos, x in enumerate(x_star):
            if x and self.plus:
                objective[self.plus[pos]] = Fraction(x)
            if x and self.minus:
                objective[self.minus[pos]] = -Fraction(x)
        objective[self.beta_plus] = Fraction(-1)
        objective[self.beta_minus] = Fraction(1)
        norm = {c: Fraction(1) for c in self.plus + self.minus}
        self.program = LinearProgram(num_vars=n, num_columns=n, objective=objective,
                                     rows=[ProgramRow(norm, Relation.EQ, Fraction(1))])
        self.solver: Optional[RelaxationSolver] = None

    def point_row(self, p: Projected) -> Dict[int, Fraction]:
        coeffs: Dict[int, Fraction] = {self.beta_plus: Fraction(-1), self.beta_minus: Fraction(1)}
        for pos, v in enumerate(p):
            if v and self.plus:
                coeffs[self.plus[pos]] = Fraction(v)
            if v and self.minus:
                coeffs[self.minus[pos]] = Fraction(-v)
        return coeffs

    def solve(self, points: List[Projected]) -> LpStatus:
        for p in points:
            self.program.rows.append(ProgramRow(self.point_row(p), Relation.LE, Fraction(0)))
        self.solver = RelaxationSolver(self.program)
        return self.solver.solve()

    def add_point(self, p: Projected) -> LpStatus:
        return self.solver.add_row(self.point_row(p), Relation.LE, Fraction(0))

    def alpha(self) -> List[Fraction]:
        a = [Fraction(0)] * self.k
        for pos in range(self.k):
            if self.plus:
                a[pos] += self.solver.value_of(self.plus[pos])
            if self.minus:
                a[pos] -= self.solver.value_of(self.minus[pos])
        return a

    def beta(self) -> Fraction:
        return self.solver.value_of(self.beta_plus) - self.solver.value_of(self.beta_minus)


def _inner_max(
    instance: Instance,
    columns: Sequence[int],
    alpha: Sequence[Fraction],
    projected: Optional[List[Projected]],
) -> Tuple[Fraction, Projected]:
    """max of alpha^T x|N over the integer points, with a maximizer."""
    if projected is not None:
        if not projected:
            raise InfeasibleInstanceError("no integer point to separate against")
        best_value, best_point = None, None
        for p in projected:
            v = sum((a * x for a, x in zip(alpha, p) if x), Fraction(0))
            if best_value is None or v > best_value:
                best_value, best_point = v, p
        return best_value, best_point
    objective = [Fraction(0)] * instance.num_vars
    for j, a in zip(columns, alpha):
        objective[j] = a
    probe = instance.model_copy(update={"objective": tuple(objective), "sense": Sense.MAXIMIZE})
    try:
        result = solve_milp(probe)
    except ValueError as e:
        raise UnboundedSeparationError(str(e)) from e
    if result.status == LpStatus.UNBOUNDED:
        raise UnboundedSeparationError("inner maximization is unbounded; bound every variable")
    if result.status != LpStatus.OPTIMAL:
        raise InfeasibleInstanceError("the instance has no integer-feasible point")
    return result.value, tuple(result.solution[j] for j in columns)


def generate_cut(
    instance: Instance,
    support: Sequence[int],
    x_star: Sequence[Fraction],
    config: Optional[EstimatorConfig] = None,
    projected: Optional[List[Projected]] = None,
    known: Optional[List[Projected]] = None,
) -> Optional[Cut]:
    """
    Find a valid inequality on ``support`` violated by ``x_star``.

    The separation LP is solved over a growing set X of integer points; its
    best cut is checked against every integer point, and the maximizer joins
    X until the cut holds for all of them.
    Args:
        instance: Instance whose integer hull the cut must be valid for
        support: Allowed columns N
        x_star: Point to separate (full length)
        config: Estimator configuration
        projected: Distinct projections of the integer points onto the
            sorted support; the inner maximization runs branch-and-bound when
            omitted
        known: X, kept by the caller across calls on the same support
    Returns:
        The cut, whose right-hand side is the exact extreme value of alpha
        over the integer points, or None when no cut is violated by more
        than epsilon
    """
    config = config or EstimatorConfig()
    columns = sorted(set(support))
    if not columns:
        return None
    rule = config.resolve_sign_rule(instance.kind_tag)
    known = [] if known is None else known
    x_proj = [Fraction(x_star[j]) for j in columns]
    if not known:
        seed = {
            SignRule.NONNEGATIVE: Fraction(1),
            SignRule.NONPOSITIVE: Fraction(-1),
            SignRule.FREE: Fraction(1),
        }[rule]
        _, first = _inner_max(instance, columns, [seed] * len(columns), projected)
        known.append(first)

    sep = _SeparationLP(x_proj, rule)
    status = sep.solve(known)
    iterations = 0
    while True:
        if status != LpStatus.OPTIMAL:
            raise UnboundedSeparationError(f"separation LP ended {status.value}")
        alpha, beta = sep.alpha(), sep.beta()
        violation = sum((a * x for a, x in zip(alpha, x_proj)), Fraction(0)) - beta
        if violation <= config.epsilon:
            logger.debug("no cut on %s after %d points", columns, len(known))
            return None
        best, maximizer = _inner_max(instance, columns, alpha, projected)
        iterations += 1
        if best - beta <= config.epsilon:
            break
        known.append(maximizer)
        status = sep.add_point(maximizer)

    coeffs = {j: a for j, a in zip(columns, alpha) if a}
    if instance.sense == Sense.MINIMIZE:
        cut = Cut(coeffs={j: -a for j, a in coeffs.items()}, rhs=-best,
                  relation=Relation.GE, support=frozenset(columns))
    else:
        cut = Cut(coeffs=coeffs, rhs=best, relation=Relation.LE, support=frozenset(columns))
    logger.debug(
        "cut on %s after %d inner solves, violation %s", columns, iterations, cut.violation(x_star)
    )
    return cut
