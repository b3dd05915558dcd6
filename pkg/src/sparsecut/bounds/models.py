from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from sparsecut.core.constants import BoundKind
from sparsecut.core.utils import dump_yaml, format_rational
from sparsecut.graphs.models import (InteractionGraph, MixedStableSet,
                                     SupportList)
from sparsecut.graphs.stable_sets import is_mixed_stable


class BoundReport(BaseModel):
    """A bound factor together with whatever certifies it."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    bound_kind: BoundKind = Field(..., description="Which bound this is")
    value: Fraction = Field(..., description="The bound factor")
    graph: Optional[InteractionGraph] = Field(None, description="Graph the bound is about")
    support_list: Optional[SupportList] = Field(None, description="Support list used")
    weights: Tuple[Tuple[MixedStableSet, Fraction], ...] = Field(
        (), description="Fractional cover y_M over mixed stable sets"
    )
    family: Tuple[MixedStableSet, ...] = Field(
        (), description="Integer cover by mixed stable sets"
    )
    sub_list: Optional[SupportList] = Field(
        None, description="Covering sub-list achieving the corrected average density"
    )
    density: Optional[Fraction] = Field(None, description="Corrected average density D_V")

    def _stable(self, sets) -> bool:
        if self.graph is None or self.support_list is None:
            return False
        return all(is_mixed_stable(self.graph, self.support_list, m.parts) for m in sets)

    def verify(self) -> bool:
        """Re-check the certificate against the value; True when none is attached."""
        if self.weights:
            sets = [m for m, _ in self.weights]
            if not self._stable(sets) or any(y < 0 for _, y in self.weights):
                return False
            for v in self.graph.nodes:
                covered = sum((y for m, y in self.weights if v in m.nodes), Fraction(0))
                if covered < 1:
                    return False
            return sum((y for _, y in self.weights), Fraction(0)) == self.value
        if self.family:
            if not self._stable(self.family):
                return False
            covered = frozenset().union(*(m.nodes for m in self.family))
            return covered == frozenset(self.graph.nodes) and len(self.family) == self.value
        if self.sub_list is not None:
            if not self.sub_list.covers() or self.density is None:
                return False
            if self.support_list is not None and any(
                member not in self.support_list.members for member in self.sub_list
            ):
                return False
            total = sum(len(m) for m in self.sub_list)
            return Fraction(total, len(self.sub_list)) == self.density
        return True

    def certificate_summary(self) -> str:
        if self.weights:
            return "; ".join(f"{m.describe()}:{format_rational(y)}" for m, y in self.weights)
        if self.family:
            return "; ".join(m.describe() for m in self.family)
        if self.sub_list is not None:
            return self.sub_list.describe()
        return ""

    def to_csv_row(self) -> List[str]:
        return [self.bound_kind.value, format_rational(self.value), self.certificate_summary()]

    def to_yaml(self) -> str:
        data = {
            "bound_kind": self.bound_kind,
            "value": self.value,
            "density": self.density,
            "certificate": self.certificate_summary(),
        }
        return dump_yaml(data)
