import csv
import io
from fractions import Fraction
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sparsecut.core.constants import (DEFAULT_EPSILON, TRACE_HEADER, KindTag,
                                      SignRule, Termination)
from sparsecut.core.models import Cut
from sparsecut.core.utils import as_fraction, dump_yaml, format_rational


class EstimatorConfig(BaseModel):
    """Tolerances and caps of the cut-closure estimator."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    epsilon: Fraction = Field(DEFAULT_EPSILON, description="Improvement and violation tolerance")
    max_cuts: int = Field(500, ge=0, description="Cap on the number of cuts added")
    max_rounds: int = Field(2000, ge=1, description="Cap on separation rounds")
    point_cap: Optional[int] = Field(
        None, ge=1, description="Lattice cap for enumerating P^I; None uses the settings"
    )
    sign_rule: Optional[SignRule] = Field(
        None, description="Coefficient signs; None derives them from the instance kind"
    )

    @field_validator("epsilon", mode="before")
    @classmethod
    def _coerce_epsilon(cls, v):
        v = as_fraction(v)
        if v <= 0:
            raise ValueError("epsilon must be positive")
        return v

    def resolve_sign_rule(self, kind: KindTag) -> SignRule:
        if self.sign_rule is not None:
            return self.sign_rule
        if kind == KindTag.PACKING:
            return SignRule.NONNEGATIVE
        if kind == KindTag.COVERING:
            return SignRule.NONPOSITIVE
        return SignRule.FREE


class TraceEntry(BaseModel):
    """One separation round."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    round: int = Field(..., ge=1, description="1-based round number")
    support_id: int = Field(..., ge=0, description="Index of the support N_i")
    z_value: Fraction = Field(..., description="LP value before the round")
    violation: Optional[Fraction] = Field(None, description="Violation of x* by the cut")
    cut_id: Optional[int] = Field(None, description="Index of the cut in cuts_added")
    certificate: Optional[Fraction] = Field(
        None, description="max alpha^T p over the integer points (equals beta)"
    )


class ClosureRun(BaseModel):
    """Outcome of the cut-closure estimator."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    z_lp: Fraction = Field(..., description="Value of the plain LP relaxation")
    z_estimate: Fraction = Field(..., description="LP value after the added cuts")
    cuts_added: Tuple[Cut, ...] = Field((), description="Cuts in the order added")
    rounds: int = Field(0, ge=0, description="Separation rounds run")
    termination: Termination = Field(..., description="Why the run stopped")
    trace: Tuple[TraceEntry, ...] = Field((), description="Per-round log")

    def to_trace_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for e in self.trace:
            writer.writerow(
                [
                    e.round,
                    e.support_id + 1,
                    format_rational(e.z_value),
                    "" if e.violation is None else format_rational(e.violation),
                    "" if e.cut_id is None else e.cut_id + 1,
                ]
            )
        return out.getvalue()

    def to_yaml(self) -> str:
        return dump_yaml(
            {
                "z_lp": self.z_lp,
                "z_estimate": self.z_estimate,
                "rounds": self.rounds,
                "termination": self.termination,
                "cuts": [
                    {"support": sorted(j + 1 for j in c.support),
                     "coeffs": {j + 1: a for j, a in c.coeffs},
                     "relation": c.relation,
                     "rhs": c.rhs}
                    for c in self.cuts_added
                ],
            }
        )
