"""
LP relaxations of instances, with lazily activated rows.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from sparsecut.core.constants import LpStatus, Relation
from sparsecut.core.models import Cut, Instance
from sparsecut.kernel.models import LpResult
from sparsecut.kernel.simplex import Tableau

logger = logging.getLogger(__name__)

# instances with more rows than this start from the rows violated at the origin
LAZY_MIN_ROWS = 40
LAZY_BATCH = 25


@dataclass
class ProgramRow:
    coeffs: Dict[int, Fraction]
    relation: Relation
    rhs: Fraction
    lazy: bool = False

    def violation(self, value_of) -> Fraction:
        act = sum((a * value_of(j) for j, a in self.coeffs.items()), Fraction(0))
        if self.relation == Relation.LE:
            return act - self.rhs
        if self.relation == Relation.GE:
            return self.rhs - act
        return abs(act - self.rhs)


@dataclass
class LinearProgram:
    """``max objective^T z`` over ``rows``, ``z >= 0``.

    Columns ``0..num_vars-1`` are the instance variables; further columns are
    auxiliary (hull multipliers).
    """

    num_vars: int
    num_columns: int
    objective: Dict[int, Fraction]
    rows: List[ProgramRow] = field(default_factory=list)

    def add_column(self) -> int:
        self.num_columns += 1
        return self.num_columns - 1


def _origin_feasible(row: ProgramRow) -> bool:
    if row.relation == Relation.LE:
        return row.rhs >= 0
    if row.relation == Relation.GE:
        return row.rhs <= 0
    return row.rhs == 0


def relaxation_program(
    instance: Instance,
    extra_cuts: Sequence[Cut] = (),
    lower: Optional[Sequence[Fraction]] = None,
    upper: Optional[Sequence[Optional[Fraction]]] = None,
) -> LinearProgram:
    """
    Build the LP relaxation of ``instance`` in maximization form.

    Args:
        instance: Source instance
        extra_cuts: Additional valid inequalities
        lower: Override of the variable lower bounds
        upper: Override of the variable upper bounds
    Returns:
        The linear program; hull constraints become convex multipliers
    """
    n = instance.num_vars
    sign = 1 if instance.maximize else -1
    program = LinearProgram(
        num_vars=n,
        num_columns=n,
        objective={j: sign * c for j, c in enumerate(instance.objective) if c},
    )
    lazy_ok = len(instance.rows) > LAZY_MIN_ROWS
    for row in instance.rows:
        prow = ProgramRow(row.coeff_map(), row.relation, row.rhs)
        prow.lazy = lazy_ok and prow.relation != Relation.EQ and _origin_feasible(prow)
        program.rows.append(prow)

    for j, (lo, hi) in enumerate(instance.var_bounds):
        if lower is not None:
            lo = lower[j]
        if upper is not None:
            hi = upper[j]
        if hi is not None:
            program.rows.append(ProgramRow({j: Fraction(1)}, Relation.LE, Fraction(hi)))
        if lo:
            program.rows.append(ProgramRow({j: Fraction(1)}, Relation.GE, Fraction(lo)))

    for hull in instance.hulls:
        lambdas = [program.add_column() for _ in hull.points]
        for pos, j in enumerate(hull.columns):
            coeffs = {j: Fraction(1)}
            for lam, point in zip(lambdas, hull.points):
                if point[pos]:
                    coeffs[lam] = Fraction(-point[pos])
            program.rows.append(ProgramRow(coeffs, Relation.EQ, Fraction(0)))
        program.rows.append(
            ProgramRow({lam: Fraction(1) for lam in lambdas}, Relation.EQ, Fraction(1))
        )

    for cut in extra_cuts:
        program.rows.append(ProgramRow(dict(cut.coeffs), cut.relation, cut.rhs))
    return program


class RelaxationSolver:
    """Solves a LinearProgram, activating lazy rows as they become violated."""

    def __init__(self, program: LinearProgram, batch: int = LAZY_BATCH):
        self.program = program
        self.batch = batch
        self.tableau_row: Dict[int, int] = {}
        self.column_of: Dict[int, int] = {}
        self.tableau = self._fresh_tableau(all_rows=False)

    def _fresh_tableau(self, all_rows: bool) -> Tableau:
        self.tableau_row = {}
        self.column_of = {}
        initial = []
        for i, row in enumerate(self.program.rows):
            if all_rows or not row.lazy:
                self.tableau_row[i] = len(initial)
                initial.append((row.coeffs, row.relation, row.rhs))
        return Tableau(self.program.num_columns, self.program.objective, initial)

    def _tcol(self, j: int) -> int:
        return self.column_of.get(j, j)

    def _tableau_coeffs(self, coeffs: Dict[int, Fraction]) -> Dict[int, Fraction]:
        if not self.column_of:
            return coeffs
        return {self._tcol(j): a for j, a in coeffs.items()}

    def value_of(self, j: int) -> Fraction:
        return self.tableau.primal_value(self._tcol(j))

    @property
    def status(self) -> Optional[LpStatus]:
        return self.tableau.status

    @property
    def value(self) -> Fraction:
        return self.tableau.value

    def solve(self) -> LpStatus:
        status = self._activate(self.tableau.solve())
        if status == LpStatus.UNBOUNDED and len(self.tableau_row) < len(self.program.rows):
            logger.debug("unbounded with inactive rows; re-solving with every row")
            self.tableau = self._fresh_tableau(all_rows=True)
            status = self.tableau.solve()
        return status

    def _activate(self, status: LpStatus) -> LpStatus:
        rounds = 0
        while status == LpStatus.OPTIMAL:
            if len(self.tableau_row) == len(self.program.rows):
                break
            violated = []
            for i, row in enumerate(self.program.rows):
                if i in self.tableau_row:
                    continue
                v = row.violation(self.value_of)
                if v > 0:
                    violated.append((-v, i))
            if not violated:
                break
            violated.sort()
            rounds += 1
            for _, i in violated[: self.batch]:
                row = self.program.rows[i]
                self.tableau_row[i] = self.tableau.num_rows
                status = self.tableau.add_row(
                    self._tableau_coeffs(row.coeffs), row.relation, row.rhs
                )
                if status != LpStatus.OPTIMAL:
                    break
        if rounds:
            logger.debug(
                "lazy activation: %d rounds, %d of %d rows active",
                rounds,
                len(self.tableau_row),
                len(self.program.rows),
            )
        self.tableau.status = status
        return status

    def add_row(self, coeffs: Dict[int, Fraction], relation: Relation, rhs: Fraction) -> LpStatus:
        """Add a permanent inequality to the solved program and re-optimize."""
        self.program.rows.append(ProgramRow(dict(coeffs), relation, Fraction(rhs)))
        self.tableau_row[len(self.program.rows) - 1] = self.tableau.num_rows
        status = self.tableau.add_row(self._tableau_coeffs(coeffs), relation, rhs)
        return self._activate(status)

    def add_column(self, entries: Dict[int, Fraction], cost: Fraction = Fraction(0)) -> int:
        """Add a column given its coefficients per active program row."""
        column = self.program.add_column()
        for i, a in entries.items():
            self.program.rows[i].coeffs[column] = a
        if cost:
            self.program.objective[column] = cost
        mapped = {self.tableau_row[i]: a for i, a in entries.items()}
        self.column_of[column] = self.tableau.add_column(mapped, cost)
        return column

    def reoptimize(self) -> LpStatus:
        return self._activate(self.tableau.reoptimize())

    def primal(self, columns: Sequence[int]) -> List[Fraction]:
        return [self.value_of(j) for j in columns]

    def row_dual(self, program_row: int) -> Fraction:
        return self.tableau.row_dual(self.tableau_row[program_row])

    def ray(self) -> List[Fraction]:
        """Improving direction over the instance variables after UNBOUNDED."""
        j = self.tableau.ray_column
        direction = [Fraction(0)] * self.program.num_vars
        if j is None:
            return direction
        if j < self.program.num_vars:
            direction[j] = Fraction(1)
        for r, basic in enumerate(self.tableau.basis):
            if basic < self.program.num_vars:
                a = self.tableau.rows[r].get(j)
                if a:
                    direction[basic] = -a
        return direction

    def copy(self) -> "RelaxationSolver":
        other = RelaxationSolver.__new__(RelaxationSolver)
        other.program = LinearProgram(
            num_vars=self.program.num_vars,
            num_columns=self.program.num_columns,
            objective=self.program.objective,
            rows=list(self.program.rows),
        )
        other.batch = self.batch
        other.tableau_row = dict(self.tableau_row)
        other.column_of = dict(self.column_of)
        other.tableau = self.tableau.copy()
        return other


def solve_lp(instance: Instance, extra_cuts: Sequence[Cut] = ()) -> LpResult:
    """
    Solve the LP relaxation of ``instance`` with ``extra_cuts`` exactly.

    Infeasibility and unboundedness are reported through the status.
    Args:
        instance: The instance
        extra_cuts: Cuts intersected with the relaxation
    Returns:
        LpResult with the exact optimum
    """
    solver = RelaxationSolver(relaxation_program(instance, extra_cuts))
    status = solver.solve()
    if status == LpStatus.OPTIMAL:
        x = solver.primal(range(instance.num_vars))
        return LpResult(status=status, value=instance.objective_value(x), solution=tuple(x))
    if status == LpStatus.UNBOUNDED:
        return LpResult(status=status, ray=tuple(solver.ray()))
    return LpResult(status=status)
