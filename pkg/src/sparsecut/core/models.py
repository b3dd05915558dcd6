import math
from fractions import Fraction
from math import prod
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pydantic import (BaseModel, ConfigDict, Field, computed_field,
                      field_validator, model_validator)

from sparsecut.core.constants import Axis, KindTag, Relation, Sense, VarKind
from sparsecut.core.utils import as_fraction, dot, is_integral

SparseVector = Tuple[Tuple[int, Fraction], ...]


def _sparse(entries) -> SparseVector:
    if isinstance(entries, dict):
        entries = entries.items()
    return tuple((int(j), as_fraction(a)) for j, a in entries)


class Row(BaseModel):
    """One constraint ``sum_j a_j x_j  <relation>  rhs``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: SparseVector = Field(
        (), description="Sparse coefficients as (column, value) pairs"
    )
    relation: Relation = Field(Relation.LE, description="Row relation")
    rhs: Fraction = Field(Fraction(0), description="Right-hand side")

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce_coeffs(cls, v):
        return _sparse(v)

    @field_validator("rhs", mode="before")
    @classmethod
    def _coerce_rhs(cls, v):
        return as_fraction(v)

    def coeff_map(self) -> Dict[int, Fraction]:
        return dict(self.coeffs)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(j for j, a in self.coeffs if a != 0)

    def activity(self, point: Sequence) -> Fraction:
        return dot(self.coeff_map(), point)

    def is_satisfied_by(self, point: Sequence) -> bool:
        lhs = self.activity(point)
        if self.relation == Relation.LE:
            return lhs <= self.rhs
        if self.relation == Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


class HullConstraint(BaseModel):
    """Extensional constraint: ``x|columns`` lies in the convex hull of ``points``.

    Used for feasible sets that are only known through their integer points.
    """

    model_config = ConfigDict(frozen=True)

    columns: Tuple[int, ...] = Field(..., description="Constrained columns")
    points: Tuple[Tuple[int, ...], ...] = Field(
        ..., description="0/1 points spanning the hull, one entry per column"
    )

    @model_validator(mode="after")
    def _check_shape(self):
        if not self.columns:
            raise ValueError("hull constraint needs at least one column")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("hull columns must be distinct")
        for p in self.points:
            if len(p) != len(self.columns):
                raise ValueError("hull point length differs from column count")
            if any(v not in (0, 1) for v in p):
                raise ValueError("hull points must be 0/1 vectors")
        return self

    def contains_integer_point(self, point: Sequence) -> bool:
        projected = tuple(point[j] for j in self.columns)
        return projected in set(self.points)


class Instance(BaseModel):
    """A MILP ``max/min c^T x`` over rows, bounds, integrality and hulls."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sense: Sense = Field(Sense.MAXIMIZE, description="Optimization direction")
    num_vars: int = Field(..., ge=0, description="Number of variables n")
    objective: Tuple[Fraction, ...] = Field(..., description="Objective vector c")
    rows: Tuple[Row, ...] = Field((), description="Constraint rows (A, b)")
    var_kind: Tuple[VarKind, ...] = Field(..., description="Domain per variable")
    var_bounds: Tuple[Tuple[Fraction, Optional[Fraction]], ...] = Field(
        ..., description="(lower, upper) per variable, upper None means +inf"
    )
    kind_tag: KindTag = Field(KindTag.GENERAL, description="Structural class")
    hulls: Tuple[HullConstraint, ...] = Field(
        (), description="Extensional point-set constraints"
    )
    name: str = Field("", description="Free-form label")

    @field_validator("objective", mode="before")
    @classmethod
    def _coerce_objective(cls, v):
        return tuple(as_fraction(c) for c in v)

    @field_validator("var_bounds", mode="before")
    @classmethod
    def _coerce_bounds(cls, v):
        return tuple(
            (as_fraction(lo), None if hi is None else as_fraction(hi)) for lo, hi in v
        )

    @model_validator(mode="after")
    def _check_lengths(self):
        n = self.num_vars
        for label, seq in (
            ("objective", self.objective),
            ("var_kind", self.var_kind),
            ("var_bounds", self.var_bounds),
        ):
            if len(seq) != n:
                raise ValueError(f"{label} has length {len(seq)}, expected {n}")
        for h in self.hulls:
            if any(not 0 <= j < n for j in h.columns):
                raise ValueError("hull column out of range")
        return self

    @classmethod
    def build(
        cls,
        objective: Sequence,
        rows: Sequence[Row] = (),
        *,
        sense: Sense = Sense.MAXIMIZE,
        kind_tag: KindTag = KindTag.GENERAL,
        upper: Optional[Sequence] = 1,
        integer: bool = True,
        hulls: Sequence[HullConstraint] = (),
        name: str = "",
    ) -> "Instance":
        """Convenience constructor: uniform kind, lower bounds 0.

        ``upper`` may be a single value applied to every variable, a list,
        or None for unbounded variables.
        """
        n = len(objective)
        if upper is None or not isinstance(upper, (list, tuple)):
            upper = [upper] * n
        kind = VarKind.INTEGER if integer else VarKind.CONTINUOUS
        return cls(
            sense=sense,
            num_vars=n,
            objective=tuple(objective),
            rows=tuple(rows),
            var_kind=(kind,) * n,
            var_bounds=tuple((0, u) for u in upper),
            kind_tag=kind_tag,
            hulls=tuple(hulls),
            name=name,
        )

    @computed_field
    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def maximize(self) -> bool:
        return self.sense == Sense.MAXIMIZE

    @property
    def is_pure_integer(self) -> bool:
        return all(k == VarKind.INTEGER for k in self.var_kind)

    def row_supports(self) -> List[FrozenSet[int]]:
        return [r.support for r in self.rows]

    def constraint_supports(self) -> List[FrozenSet[int]]:
        """Row supports followed by the column sets of the hull constraints."""
        return self.row_supports() + [frozenset(h.columns) for h in self.hulls]

    def lattice_size(self) -> Optional[int]:
        """Number of integer points in the bound box, None when unbounded."""
        sizes = []
        for kind, (lo, hi) in zip(self.var_kind, self.var_bounds):
            if kind != VarKind.INTEGER or hi is None:
                return None
            width = math.floor(hi) - math.ceil(lo) + 1
            sizes.append(max(width, 0))
        return prod(sizes)

    def objective_value(self, point: Sequence) -> Fraction:
        return sum((c * x for c, x in zip(self.objective, point)), Fraction(0))

    def satisfies_rows(self, point: Sequence) -> bool:
        """Exact check of rows and bounds (hulls excluded)."""
        for (lo, hi), x in zip(self.var_bounds, point):
            if x < lo or (hi is not None and x > hi):
                return False
        return all(r.is_satisfied_by(point) for r in self.rows)

    def is_integer_feasible(self, point: Sequence) -> bool:
        if len(point) != self.num_vars:
            return False
        for kind, x in zip(self.var_kind, point):
            if kind == VarKind.INTEGER and not is_integral(x):
                return False
        if not self.satisfies_rows(point):
            return False
        return all(h.contains_integer_point(point) for h in self.hulls)


class BlockPartition(BaseModel):
    """Ordered partition of the column or row index range."""

    model_config = ConfigDict(frozen=True)

    axis: Axis = Field(..., description="Which index range is partitioned")
    size: int = Field(..., ge=0, description="Length of the index range")
    blocks: Tuple[FrozenSet[int], ...] = Field(..., description="Disjoint blocks")

    @field_validator("blocks", mode="before")
    @classmethod
    def _coerce_blocks(cls, v):
        return tuple(frozenset(int(i) for i in b) for b in v)

    @model_validator(mode="after")
    def _check_partition(self):
        seen: set = set()
        for k, block in enumerate(self.blocks):
            if not block:
                raise ValueError(f"block {k + 1} is empty")
            if seen & block:
                raise ValueError(f"block {k + 1} overlaps an earlier block")
            seen |= block
        if seen != set(range(self.size)):
            raise ValueError(f"blocks do not cover the {self.axis.value} 1..{self.size}")
        return self

    @classmethod
    def singletons(cls, axis: Axis, size: int) -> "BlockPartition":
        return cls(axis=axis, size=size, blocks=[[i] for i in range(size)])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, index: int) -> int:
        for k, block in enumerate(self.blocks):
            if index in block:
                return k
        raise KeyError(index)


class Cut(BaseModel):
    """A valid inequality ``alpha^T x <= beta`` (or ``>=`` for minimize)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: SparseVector = Field((), description="Sparse coefficients alpha")
    rhs: Fraction = Field(Fraction(0), description="Right-hand side beta")
    relation: Relation = Field(Relation.LE, description="Inherited from the sense")
    support: FrozenSet[int] = Field(frozenset(), description="Allowed columns N")

    @field_validator("coeffs", mode="before")
    @classmethod
    def _coerce_coeffs(cls, v):
        return tuple((j, a) for j, a in _sparse(v) if a != 0)

    @field_validator("rhs", mode="before")
    @classmethod
    def _coerce_rhs(cls, v):
        return as_fraction(v)

    @model_validator(mode="after")
    def _check_support(self):
        outside = [j for j, _ in self.coeffs if j not in self.support]
        if outside:
            raise ValueError(f"cut coefficients outside support: {outside}")
        return self

    def as_row(self) -> Row:
        return Row(coeffs=self.coeffs, relation=self.relation, rhs=self.rhs)

    def violation(self, point: Sequence) -> Fraction:
        """Positive amount by which ``point`` violates the cut (<= 0 if satisfied)."""
        lhs = dot(dict(self.coeffs), point)
        if self.relation == Relation.GE:
            return self.rhs - lhs
        return lhs - self.rhs

    def is_satisfied_by(self, point: Sequence) -> bool:
        return self.violation(point) <= 0

    def normalized(self) -> "Cut":
        norm = sum((abs(a) for _, a in self.coeffs), Fraction(0))
        if norm == 0:
            return self
        return self.model_copy(
            update={
                "coeffs": tuple((j, a / norm) for j, a in self.coeffs),
                "rhs": self.rhs / norm,
            }
        )
