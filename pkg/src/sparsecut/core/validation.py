"""
Kind-tag invariants of an Instance, reported as diagnostics.
"""

from typing import List

from sparsecut.core.constants import KindTag, Relation, VarKind
from sparsecut.core.errors import InvariantViolationError
from sparsecut.core.models import Instance

_REQUIRED_RELATION = {
    KindTag.PACKING: Relation.LE,
    KindTag.COVERING: Relation.GE,
}


def validate(instance: Instance) -> List[str]:
    """
    Check every invariant implied by the instance's kind tag.

    Locations are 1-based, matching the SMILP format.
    Args:
        instance: The instance to check
    Returns:
        An empty list when all invariants hold, else one message per violation
    """
    diagnostics: List[str] = []
    n = instance.num_vars
    signed = instance.kind_tag in _REQUIRED_RELATION

    for j, c in enumerate(instance.objective):
        if c < 0:
            diagnostics.append(f"objective sign, column {j + 1}")
    for j, (lo, hi) in enumerate(instance.var_bounds):
        if lo != 0:
            diagnostics.append(f"lower bound not 0, column {j + 1}")
        if hi is not None and hi < lo:
            diagnostics.append(f"upper bound below lower bound, column {j + 1}")

    for r, row in enumerate(instance.rows):
        previous = -1
        for j, a in row.coeffs:
            if not 0 <= j < n:
                diagnostics.append(f"column index out of range, row {r + 1} column {j + 1}")
            if j <= previous:
                diagnostics.append(f"column indices not increasing, row {r + 1}")
            if a == 0:
                diagnostics.append(f"zero coefficient, row {r + 1} column {j + 1}")
            if signed and a < 0:
                diagnostics.append(f"coefficient sign, row {r + 1} column {j + 1}")
            previous = j
        if signed:
            if row.rhs < 0:
                diagnostics.append(f"rhs sign, row {r + 1}")
            expected = _REQUIRED_RELATION[instance.kind_tag]
            if row.relation != expected:
                diagnostics.append(
                    f"relation {row.relation.value} not allowed for "
                    f"{instance.kind_tag.value}, row {r + 1}"
                )

    for h, hull in enumerate(instance.hulls):
        for j in hull.columns:
            lo, hi = instance.var_bounds[j]
            if instance.var_kind[j] != VarKind.INTEGER or lo != 0 or hi != 1:
                diagnostics.append(f"hull column not binary, hull {h + 1} column {j + 1}")
    return diagnostics


def ensure_valid(instance: Instance) -> Instance:
    """Raise InvariantViolationError unless ``validate`` is clean."""
    diagnostics = validate(instance)
    if diagnostics:
        raise InvariantViolationError(diagnostics)
    return instance
