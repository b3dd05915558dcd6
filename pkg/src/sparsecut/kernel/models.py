from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field

from sparsecut.core.constants import LpStatus


class LpResult(BaseModel):
    """Outcome of an exact LP relaxation solve."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: LpStatus = Field(..., description="optimal, infeasible or unbounded")
    value: Optional[Fraction] = Field(None, description="Optimal value z^LP")
    solution: Tuple[Fraction, ...] = Field((), description="Optimal point")
    ray: Tuple[Fraction, ...] = Field(
        (), description="Improving direction when unbounded"
    )

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class MilpResult(BaseModel):
    """Outcome of branch-and-bound."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: LpStatus = Field(..., description="optimal, infeasible or unbounded")
    value: Optional[Fraction] = Field(None, description="Optimal value z^I")
    solution: Tuple[Fraction, ...] = Field((), description="Optimal integer point")
    nodes: int = Field(0, description="Branch-and-bound nodes explored")

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class PointSet(BaseModel):
    """Integer-feasible points of an instance, in enumeration order."""

    model_config = ConfigDict(frozen=True)

    num_vars: int = Field(..., ge=0, description="Dimension of every point")
    points: Tuple[Tuple[int, ...], ...] = Field((), description="Feasible points")

    @computed_field
    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __bool__(self) -> bool:
        return bool(self.points)

    def project(self, columns: Sequence[int]) -> List[Tuple[int, ...]]:
        """Distinct projections onto ``columns``, sorted."""
        return sorted({tuple(p[j] for j in columns) for p in self.points})

    def best(self, objective: Sequence[Fraction], maximize: bool = True):
        """Optimal point and value of a linear objective (first in order on ties)."""
        best_point, best_value = None, None
        for p in self.points:
            v = sum((c * x for c, x in zip(objective, p)), Fraction(0))
            if (
                best_value is None
                or (maximize and v > best_value)
                or (not maximize and v < best_value)
            ):
                best_point, best_value = p, v
        return best_point, best_value

    def max_activity(self, coeffs: Iterable[Tuple[int, Fraction]]) -> Optional[Fraction]:
        """max over points of ``sum a_j p_j``; None for an empty set."""
        coeffs = list(coeffs)
        best = None
        for p in self.points:
            v = sum((a * p[j] for j, a in coeffs), Fraction(0))
            if best is None or v > best:
                best = v
        return best
