from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sparsecut.constructions.random_instances import GenParams
from sparsecut.core.constants import KindTag, SupportMode
from sparsecut.core.utils import as_fraction, format_rational
from sparsecut.estimator.models import EstimatorConfig


class ExperimentConfig(BaseModel):
    """A batch of seeded random instances and how to measure them."""

    model_config = ConfigDict(frozen=True)

    generator: GenParams = Field(..., description="Generator parameters; seed is the base seed")
    count: int = Field(10, ge=1, description="Number of instances")
    mode: SupportMode = Field(SupportMode.NATURAL_SPARSE, description="Support list")
    estimator: EstimatorConfig = Field(default_factory=EstimatorConfig)
    oracle: bool = Field(
        True, description="Use the exact closure value when the lattice fits the cap"
    )
    cap: Optional[int] = Field(None, ge=1, description="Lattice cap; None uses the settings")
    workers: int = Field(1, ge=1, description="Worker processes")
    out: Optional[Path] = Field(None, description="CSV output path")
    db: Optional[Path] = Field(None, description="SQLite results store")

    @field_validator("mode")
    @classmethod
    def _no_custom(cls, v):
        if v == SupportMode.CUSTOM:
            raise ValueError("experiments derive supports from the graph; use ss or ns")
        return v

    @property
    def kind(self) -> KindTag:
        return self.generator.kind

    def params_for(self, index: int) -> GenParams:
        """Generator parameters of the ``index``-th instance (0-based)."""
        return self.generator.model_copy(update={"seed": self.generator.seed + index})


class RatioRow(BaseModel):
    """Measured closure strength of one instance."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: int = Field(..., ge=1, description="1-based instance id")
    seed: int = Field(..., description="Seed the instance was generated from")
    graph: str = Field("", description="Edge list of the interaction graph")
    maximize: bool = Field(True, description="Sense of the instance")
    z_int: Optional[Fraction] = Field(None, description="Integer optimum z^I")
    z_closure: Optional[Fraction] = Field(None, description="Closure value or estimate")
    z_lp: Optional[Fraction] = Field(None, description="LP relaxation value")
    exact: bool = Field(False, description="z_closure comes from the exact oracle")
    gap: Optional[Fraction] = Field(None, description="Estimate minus the exact closure value")
    ratio: Optional[Fraction] = Field(None, description="Closure over z^I; z^I over closure for min")
    bound: Optional[Fraction] = Field(None, description="Theoretical bound factor")
    skipped: Optional[str] = Field(None, description="Why the instance was not measured")

    @field_validator("z_int", "z_closure", "z_lp", "gap", "ratio", "bound", mode="before")
    @classmethod
    def _coerce(cls, v):
        return None if v is None else as_fraction(v)

    @property
    def ok(self) -> bool:
        """The ratio respects the bound."""
        return self.ratio is not None and self.bound is not None and self.ratio <= self.bound

    @property
    def sandwiched(self) -> bool:
        """The closure value lies between z^I and the LP value."""
        if self.ratio is None or self.ratio < 1:
            return False
        if self.z_lp is None or self.z_closure is None or self.z_int is None:
            return True
        if self.maximize:
            return self.z_closure <= self.z_lp
        return self.z_closure >= self.z_lp

    @property
    def estimate_bracketed(self) -> bool:
        """With an exact closure value, the estimate lies between it and the LP value."""
        if self.gap is None or self.z_closure is None:
            return True
        estimate = self.z_closure + self.gap
        if self.maximize:
            return self.gap >= 0 and (self.z_lp is None or estimate <= self.z_lp)
        return self.gap <= 0 and (self.z_lp is None or estimate >= self.z_lp)

    @property
    def consistent(self) -> bool:
        return self.ok and self.sandwiched and self.estimate_bracketed

    def to_csv_row(self) -> List[str]:
        def cell(v):
            return "" if v is None else format_rational(v)

        return [
            str(self.id),
            cell(self.z_int),
            cell(self.z_closure),
            cell(self.ratio),
            cell(self.bound),
            "1" if self.ok else "0",
        ]


class GraphSummary(BaseModel):
    """Averages over the instances sharing one interaction graph."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: str
    instances: int
    average_ratio: Fraction
    max_ratio: Fraction
    bound: Fraction


class ExperimentResult(BaseModel):
    """Rows of an experiment in instance order."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    config: ExperimentConfig
    rows: Tuple[RatioRow, ...] = ()

    @property
    def measured(self) -> List[RatioRow]:
        return [r for r in self.rows if r.skipped is None]

    @property
    def skipped(self) -> List[RatioRow]:
        return [r for r in self.rows if r.skipped is not None]

    @property
    def violations(self) -> List[RatioRow]:
        return [r for r in self.measured if not r.consistent]

    @property
    def ok(self) -> bool:
        return not self.violations

    def average_ratio(self) -> Optional[Fraction]:
        ratios = [r.ratio for r in self.measured]
        if not ratios:
            return None
        return sum(ratios, Fraction(0)) / len(ratios)

    def max_ratio(self) -> Optional[Fraction]:
        return max((r.ratio for r in self.measured), default=None)

    def by_graph(self) -> List[GraphSummary]:
        """One summary per distinct graph, in order of first appearance."""
        groups = {}
        for row in self.measured:
            groups.setdefault(row.graph, []).append(row)
        return [
            GraphSummary(
                graph=graph,
                instances=len(rows),
                average_ratio=sum((r.ratio for r in rows), Fraction(0)) / len(rows),
                max_ratio=max(r.ratio for r in rows),
                bound=rows[0].bound,
            )
            for graph, rows in groups.items()
        ]
