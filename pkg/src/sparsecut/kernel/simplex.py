"""
Exact rational simplex tableau.

Rows are stored sparsely as ``{column: Fraction}`` dictionaries expressed in
the current basis. The tableau always maximizes; callers negate objectives of
minimization problems. Every original row owns an *initial* column (its slack
or artificial) whose current tableau column is the matching column of the
basis inverse, which is what ``row_dual`` and ``add_column`` rely on.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sparsecut.core.constants import LpStatus, Relation

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

STRUCTURAL = 0
SLACK = 1
ARTIFICIAL = 2

# consecutive degenerate pivots tolerated before switching to Bland's rule
DEGENERATE_STREAK = 25


class Tableau:
    """A sparse, exact simplex tableau for ``max c^T z, rows, z >= 0``.

    Pricing is Dantzig's rule: the entering column has the largest positive
    reduced cost, ties going to the lowest column index. After more than
    ``DEGENERATE_STREAK`` consecutive degenerate pivots the tableau switches to
    Bland's rule (lowest improving index) until the next solve. The leaving
    row is chosen by the minimum ratio, ties going to the lowest basic column.

    Args:
        num_structural: Number of structural columns
        objective: Sparse objective ``{column: c_j}``
        rows: ``(coeffs, relation, rhs)`` triples over structural columns
    """

    def __init__(
        self,
        num_structural: int,
        objective: Dict[int, Fraction],
        rows: Iterable[Tuple[Dict[int, Fraction], Relation, Fraction]] = (),
    ):
        self.kind: List[int] = [STRUCTURAL] * num_structural
        self.cost: Dict[int, Fraction] = {j: c for j, c in objective.items() if c}
        self.rows: List[Dict[int, Fraction]] = []
        self.rhs: List[Fraction] = []
        self.basis: List[int] = []
        self.row_of: Dict[int, int] = {}
        self.init_col: List[int] = []
        self.flip: List[int] = []
        self.d: Dict[int, Fraction] = {}
        self.value = ZERO
        self.status: Optional[LpStatus] = None
        self.ray_column: Optional[int] = None
        self.pivots = 0
        self._bland = False
        self._pending: List[Tuple[Dict[int, Fraction], Relation, Fraction]] = list(rows)

    # ------------------------------------------------------------------ setup

    @property
    def num_columns(self) -> int:
        return len(self.kind)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def _new_column(self, kind: int) -> int:
        self.kind.append(kind)
        return len(self.kind) - 1

    def _append_row(self, row: Dict[int, Fraction], rhs: Fraction, basic: int, flip: int):
        r = len(self.rows)
        self.rows.append(row)
        self.rhs.append(rhs)
        self.basis.append(basic)
        self.row_of[basic] = r
        self.init_col.append(basic)
        self.flip.append(flip)

    def _standard_form(self) -> None:
        for coeffs, relation, rhs in self._pending:
            row = {j: Fraction(a) for j, a in coeffs.items() if a}
            rhs = Fraction(rhs)
            flip = 1
            if rhs < 0:
                row = {j: -a for j, a in row.items()}
                rhs = -rhs
                flip = -1
                if relation == Relation.LE:
                    relation = Relation.GE
                elif relation == Relation.GE:
                    relation = Relation.LE
            if relation == Relation.LE:
                s = self._new_column(SLACK)
                row[s] = ONE
                self._append_row(row, rhs, s, flip)
            else:
                if relation == Relation.GE:
                    row[self._new_column(SLACK)] = -ONE
                art = self._new_column(ARTIFICIAL)
                row[art] = ONE
                self._append_row(row, rhs, art, flip)
        self._pending = []

    # ---------------------------------------------------------------- pivoting

    def _pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != ONE:
            inv = ONE / piv
            for k in row:
                row[k] *= inv
            self.rhs[r] *= inv
        row[j] = ONE
        rhs_r = self.rhs[r]
        items = list(row.items())
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(j)
            if not f:
                continue
            for k, v in items:
                nv = other.get(k, ZERO) - f * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
            self.rhs[i] -= f * rhs_r
        f = self.d.get(j)
        if f:
            for k, v in items:
                nv = self.d.get(k, ZERO) - f * v
                if nv:
                    self.d[k] = nv
                else:
                    self.d.pop(k, None)
            self.value += f * rhs_r
        old = self.basis[r]
        del self.row_of[old]
        self.basis[r] = j
        self.row_of[j] = r
        self.pivots += 1

    def _entering(self, allow_artificial: bool) -> Optional[int]:
        best_j, best_v = None, ZERO
        for j, v in self.d.items():
            if v <= 0 or (not allow_artificial and self.kind[j] == ARTIFICIAL):
                continue
            if self._bland:
                if best_j is None or j < best_j:
                    best_j = j
            elif v > best_v or (v == best_v and best_j is not None and j < best_j):
                best_j, best_v = j, v
        return best_j

    def _leaving(self, j: int) -> Optional[int]:
        best_r, best_ratio = None, None
        for r, row in enumerate(self.rows):
            a = row.get(j)
            if a is None:
                continue
            if self.kind[self.basis[r]] == ARTIFICIAL and self.rhs[r] == 0:
                # an artificial left basic at zero must not become positive
                ratio = ZERO
            elif a <= 0:
                continue
            else:
                ratio = self.rhs[r] / a
            if (
                best_r is None
                or ratio < best_ratio
                or (ratio == best_ratio and self.basis[r] < self.basis[best_r])
            ):
                best_r, best_ratio = r, ratio
        return best_r

    def _primal(self, allow_artificial: bool) -> LpStatus:
        streak = 0
        while True:
            j = self._entering(allow_artificial)
            if j is None:
                return LpStatus.OPTIMAL
            r = self._leaving(j)
            if r is None:
                self.ray_column = j
                return LpStatus.UNBOUNDED
            if self.rhs[r] == 0:
                streak += 1
                if streak > DEGENERATE_STREAK and not self._bland:
                    logger.debug("switching to Bland's rule after %d degenerate pivots", streak)
                    self._bland = True
            else:
                streak = 0
            self._pivot(r, j)

    def _dual(self) -> LpStatus:
        streak = 0
        while True:
            r = None
            for i, b in enumerate(self.rhs):
                if b >= 0:
                    continue
                if r is None:
                    r = i
                elif self._bland:
                    if self.basis[i] < self.basis[r]:
                        r = i
                elif b < self.rhs[r] or (b == self.rhs[r] and self.basis[i] < self.basis[r]):
                    r = i
            if r is None:
                return LpStatus.OPTIMAL
            best_j, best_ratio = None, None
            for j, a in self.rows[r].items():
                if a >= 0 or self.kind[j] == ARTIFICIAL:
                    continue
                ratio = self.d.get(j, ZERO) / a
                if best_j is None or ratio < best_ratio or (ratio == best_ratio and j < best_j):
                    best_j, best_ratio = j, ratio
            if best_j is None:
                return LpStatus.INFEASIBLE
            if best_ratio == 0:
                streak += 1
                if streak > DEGENERATE_STREAK:
                    self._bland = True
            else:
                streak = 0
            self._pivot(r, best_j)

    # ------------------------------------------------------------------ phases

    def _price_out(self, costs: Dict[int, Fraction]) -> None:
        """Set reduced costs and value for objective ``costs``."""
        d = dict(costs)
        value = ZERO
        for r, row in enumerate(self.rows):
            cb = costs.get(self.basis[r])
            if not cb:
                continue
            value += cb * self.rhs[r]
            for k, v in row.items():
                nv = d.get(k, ZERO) - cb * v
                if nv:
                    d[k] = nv
                else:
                    d.pop(k, None)
        for b in self.basis:
            d.pop(b, None)
        self.d = d
        self.value = value

    def solve(self) -> LpStatus:
        """Run phase 1 and phase 2 from scratch."""
        self._standard_form()
        artificials = [j for j, k in enumerate(self.kind) if k == ARTIFICIAL]
        if artificials:
            self._price_out({j: -ONE for j in artificials})
            self._primal(allow_artificial=True)
            if self.value < 0:
                logger.debug("phase 1 ended at %s: infeasible", self.value)
                self.status = LpStatus.INFEASIBLE
                return self.status
            self._drive_out_artificials()
        self._bland = False
        self._price_out(self.cost)
        self.status = self._primal(allow_artificial=False)
        logger.debug("simplex finished: %s after %d pivots", self.status.value, self.pivots)
        return self.status

    def _drive_out_artificials(self) -> None:
        for r in range(len(self.rows)):
            if self.kind[self.basis[r]] != ARTIFICIAL:
                continue
            candidates = [j for j in self.rows[r] if self.kind[j] != ARTIFICIAL]
            if candidates:
                self._pivot(r, min(candidates))
            # otherwise the row is redundant; its artificial stays basic at zero

    def reoptimize(self) -> LpStatus:
        """Continue primal simplex after columns were added."""
        self.status = self._primal(allow_artificial=False)
        return self.status

    # ----------------------------------------------------------- modification

    def add_row(self, coeffs: Dict[int, Fraction], relation: Relation, rhs: Fraction) -> LpStatus:
        """Append an inequality to an optimal tableau and restore optimality.

        The row is expressed in the current basis and the dual simplex
        repairs primal feasibility.
        """
        if relation == Relation.EQ:
            raise ValueError("equality rows cannot be added to a solved tableau")
        sign = -1 if relation == Relation.GE else 1
        row = {j: sign * Fraction(a) for j, a in coeffs.items() if a}
        b = sign * Fraction(rhs)
        for j in [j for j in row if j in self.row_of]:
            a = row.get(j)
            if not a:
                continue
            r = self.row_of[j]
            for k, v in self.rows[r].items():
                nv = row.get(k, ZERO) - a * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b -= a * self.rhs[r]
        s = self._new_column(SLACK)
        row[s] = ONE
        self._append_row(row, b, s, sign)
        if b < 0:
            self.status = self._dual()
        else:
            self.status = LpStatus.OPTIMAL
        return self.status

    def add_column(self, entries: Dict[int, Fraction], cost: Fraction) -> int:
        """Append a structural column given its coefficients per original row.

        Args:
            entries: ``{row index: coefficient}`` in the rows' original orientation
            cost: Objective coefficient (maximization)
        Returns:
            The new column index
        """
        j = self._new_column(STRUCTURAL)
        scaled = {r: self.flip[r] * Fraction(a) for r, a in entries.items() if a}
        dj = Fraction(cost)
        for r, a in scaled.items():
            dj += a * self.d.get(self.init_col[r], ZERO)
        for r, a in scaled.items():
            col = self.init_col[r]
            for i, row in enumerate(self.rows):
                v = row.get(col)
                if v:
                    nv = row.get(j, ZERO) + a * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        if cost:
            self.cost[j] = Fraction(cost)
        if dj:
            self.d[j] = dj
        return j

    # ------------------------------------------------------------------ output

    def primal_value(self, j: int) -> Fraction:
        r = self.row_of.get(j)
        return self.rhs[r] if r is not None else ZERO

    def solution(self, columns: Sequence[int]) -> List[Fraction]:
        return [self.primal_value(j) for j in columns]

    def row_dual(self, r: int) -> Fraction:
        """Dual value of original row ``r`` at the current (optimal) basis."""
        return -self.flip[r] * self.d.get(self.init_col[r], ZERO)

    def copy(self) -> "Tableau":
        other = Tableau.__new__(Tableau)
        other.kind = list(self.kind)
        other.cost = dict(self.cost)
        other.rows = [dict(row) for row in self.rows]
        other.rhs = list(self.rhs)
        other.basis = list(self.basis)
        other.row_of = dict(self.row_of)
        other.init_col = list(self.init_col)
        other.flip = list(self.flip)
        other.d = dict(self.d)
        other.value = self.value
        other.status = self.status
        other.ray_column = self.ray_column
        other.pivots = self.pivots
        other._bland = self._bland
        other._pending = list(self._pending)
        return other
