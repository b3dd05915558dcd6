"""
Named tight families with their closed-form value pairs, and the routine that
checks a constructed instance against them.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sparsecut.core.constants import ComparisonMode, SupportMode, TightFamily
from sparsecut.core.models import BlockPartition, Instance
from sparsecut.core.utils import (as_fraction, closure_ratio, dump_yaml,
                                  format_rational)
from sparsecut.graphs import build_graph, list_columns, support_list_for
from sparsecut.kernel import (closure_contains, decomposed_milp_value,
                              exact_closure_value, milp_value,
                              projection_tables, solve_lp)
from sparsecut.kernel.closure import is_down_closed
from sparsecut.constructions.covering import make_dsc, make_ssc, make_tight_cover
from sparsecut.constructions.tight import (make_tight_3cycle,
                                           make_tight_cycle_ns,
                                           make_tight_general_ns,
                                           make_tight_general_ss,
                                           make_tight_star_ss,
                                           make_tight_tree_ns)

logger = logging.getLogger(__name__)


class TightnessCheck(BaseModel):
    """One comparison ``value <relation> target``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str = Field(..., description="What is compared")
    value: Fraction = Field(..., description="Computed value")
    relation: str = Field(..., description="One of =, <=, >=")
    target: Fraction = Field(..., description="Closed-form value")

    @field_validator("value", "target", mode="before")
    @classmethod
    def _coerce(cls, v):
        return as_fraction(v)

    @property
    def ok(self) -> bool:
        if self.relation == "=":
            return self.value == self.target
        if self.relation == "<=":
            return self.value <= self.target
        return self.value >= self.target

    def describe(self) -> str:
        return (
            f"{self.label}: {format_rational(self.value)} {self.relation} "
            f"{format_rational(self.target)}"
        )


class TightnessReport(BaseModel):
    """Outcome of checking one tight family at given parameters."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: TightFamily = Field(..., description="Family checked")
    mode: ComparisonMode = Field(..., description="Exact pair or certificates")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Family parameters")
    z_int: Optional[Fraction] = Field(None, description="Integer optimum z^I")
    z_closure: Optional[Fraction] = Field(
        None, description="Closure value, or the value of a certified closure point"
    )
    z_lp: Optional[Fraction] = Field(None, description="LP relaxation value")
    ratio: Optional[Fraction] = Field(None, description="Closure over z^I (z^I over closure for min)")
    checks: Tuple[TightnessCheck, ...] = Field((), description="Comparisons performed")

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    def to_yaml(self) -> str:
        return dump_yaml(
            {
                "family": self.family,
                "mode": self.mode,
                "parameters": self.parameters,
                "z_int": self.z_int,
                "z_closure": self.z_closure,
                "z_lp": self.z_lp,
                "ratio": self.ratio,
                "checks": [{"check": c.describe(), "ok": c.ok} for c in self.checks],
                "ok": self.ok,
            }
        )


class FamilySpec(BaseModel):
    """Registry entry of a tight family."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: TightFamily
    description: str
    defaults: Dict[str, Any]
    mode: ComparisonMode
    verify: Callable[..., TightnessReport]


def _columns(
    instance: Instance, partition: BlockPartition, mode: SupportMode
) -> List[Tuple[int, ...]]:
    graph = build_graph(instance, partition)
    support_list = support_list_for(instance, graph, mode)
    return [tuple(sorted(c)) for c in list_columns(graph, support_list)]


def _exact_report(
    family: TightFamily,
    parameters: Dict[str, Any],
    built: Tuple[Instance, BlockPartition],
    mode: SupportMode,
    expected: Tuple[Fraction, Fraction],
    cap: Optional[int] = None,
) -> TightnessReport:
    instance, partition = built
    supports = _columns(instance, partition, mode)
    tables = None
    if is_down_closed(instance):
        tables = projection_tables(instance, supports, cap=cap)
    if tables is not None and mode == SupportMode.NATURAL_SPARSE:
        z_int = decomposed_milp_value(instance, supports, cap=cap, projections=tables).value
    else:
        z_int = milp_value(instance, cap=cap).value
    z_closure = exact_closure_value(instance, supports, cap=cap, projections=tables)
    closure_target, int_target = expected
    return TightnessReport(
        family=family,
        mode=ComparisonMode.EXACT,
        parameters=parameters,
        z_int=z_int,
        z_closure=z_closure,
        ratio=closure_ratio(instance.maximize, z_int, z_closure),
        checks=(
            TightnessCheck(label="closure value", value=z_closure, relation="=", target=closure_target),
            TightnessCheck(label="integer optimum", value=z_int, relation="=", target=int_target),
        ),
    )


def verify_3cycle(eps="1/2", cap: Optional[int] = None) -> TightnessReport:
    eps = as_fraction(eps)
    return _exact_report(
        TightFamily.THREE_CYCLE,
        {"eps": eps},
        make_tight_3cycle(eps),
        SupportMode.SUPER_SPARSE,
        (3 - eps, Fraction(1)),
        cap,
    )


def verify_star_ss(delta: int = 2, eps="1/2", cap: Optional[int] = None) -> TightnessReport:
    eps = as_fraction(eps)
    return _exact_report(
        TightFamily.STAR_SS,
        {"delta": delta, "eps": eps},
        make_tight_star_ss(delta, eps),
        SupportMode.SUPER_SPARSE,
        (2 * delta - delta * eps, Fraction(delta)),
        cap,
    )


def verify_tree_ns(delta: int = 2, n: int = 5, cap: Optional[int] = None) -> TightnessReport:
    """Closure ``n + (n-1)/(delta-1) * delta`` against z^I = ``(n*delta-1)/(delta-1)``."""
    cap = cap if cap is not None else 2 ** (n * n + delta)
    return _exact_report(
        TightFamily.TREE_NS,
        {"delta": delta, "n": n},
        make_tight_tree_ns(delta, n),
        SupportMode.NATURAL_SPARSE,
        (
            n + Fraction(n - 1, delta - 1) * delta,
            Fraction(n * delta - 1, delta - 1),
        ),
        cap,
    )


def cycle_integer_bound(K: int, n: int) -> int:
    """Upper bound on z^I of the cycle family: ``(n-1) * high + K``."""
    k, rest = divmod(K, 3)
    high = 2 * k + 1 if rest == 2 else 2 * k
    return (n - 1) * high + K


def verify_cycle_ns(K: int = 3, n: int = 3, cap: Optional[int] = None) -> TightnessReport:
    """z^I against its upper bound, and ``(1/n) * 1`` certified inside the closure."""
    instance, partition = make_tight_cycle_ns(K, n)
    cap = cap if cap is not None else 2 ** (2 * n * n)
    supports = _columns(instance, partition, SupportMode.NATURAL_SPARSE)
    tables = projection_tables(instance, supports, cap=cap)
    z_int = decomposed_milp_value(instance, supports, cap=cap, projections=tables).value
    point = [Fraction(1, n)] * instance.num_vars
    inside = closure_contains(instance, supports, point, cap=cap, projections=tables)
    lower = instance.objective_value(point) if inside else Fraction(0)
    return TightnessReport(
        family=TightFamily.CYCLE_NS,
        mode=ComparisonMode.CERTIFICATE,
        parameters={"K": K, "n": n},
        z_int=z_int,
        z_closure=lower,
        ratio=closure_ratio(instance.maximize, z_int, lower),
        checks=(
            TightnessCheck(
                label="integer optimum", value=z_int, relation="<=", target=cycle_integer_bound(K, n)
            ),
            TightnessCheck(
                label="certified closure point value", value=lower, relation=">=", target=K * n
            ),
        ),
    )


def verify_cover(K: int = 2, n: int = 3, cap: Optional[int] = None) -> TightnessReport:
    """z^I >= Kn - K^2 and the scenario-specific closure value <= n."""
    instance, partition = make_tight_cover(K, n)
    supports = _columns(instance, partition, SupportMode.SUPER_SPARSE)
    z_int = milp_value(instance, cap=cap).value
    z_closure = exact_closure_value(instance, supports, cap=cap)
    return TightnessReport(
        family=TightFamily.COVER,
        mode=ComparisonMode.CERTIFICATE,
        parameters={"K": K, "n": n},
        z_int=z_int,
        z_closure=z_closure,
        ratio=closure_ratio(instance.maximize, z_int, z_closure),
        checks=(
            TightnessCheck(label="integer optimum", value=z_int, relation=">=", target=K * n - K * K),
            TightnessCheck(label="closure value", value=z_closure, relation="<=", target=n),
        ),
    )


def verify_general_ss(K: int = 3, eps="1/2", cap: Optional[int] = None) -> TightnessReport:
    eps = as_fraction(eps)
    return _exact_report(
        TightFamily.GENERAL_SS,
        {"K": K, "eps": eps},
        make_tight_general_ss(K, eps),
        SupportMode.SUPER_SPARSE,
        (K - eps, Fraction(1)),
        cap,
    )


def verify_general_ns(K: int = 3, cap: Optional[int] = None) -> TightnessReport:
    """Closure K against z^I = 1; at K = 2 the unit vector e_1 is the complement
    of e_2, so both y can be 1 and z^I = 2."""
    return _exact_report(
        TightFamily.GENERAL_NS,
        {"K": K},
        make_tight_general_ns(K),
        SupportMode.NATURAL_SPARSE,
        (Fraction(K), Fraction(2 if K == 2 else 1)),
        cap,
    )


def verify_ssc(q: int = 3, cap: Optional[int] = None) -> TightnessReport:
    """z^I >= q while z^LP <= 2."""
    instance = make_ssc(q)
    z_int = milp_value(instance, cap=cap).value
    z_lp = solve_lp(instance).value
    return TightnessReport(
        family=TightFamily.SSC,
        mode=ComparisonMode.CERTIFICATE,
        parameters={"q": q},
        z_int=z_int,
        z_lp=z_lp,
        ratio=closure_ratio(instance.maximize, z_int, z_lp),
        checks=(
            TightnessCheck(label="integer optimum", value=z_int, relation=">=", target=q),
            TightnessCheck(label="LP value", value=z_lp, relation="<=", target=2),
        ),
    )


def verify_dsc(q: int = 3, cap: Optional[int] = None) -> TightnessReport:
    """The super sparse closure of the doubled cover equals its LP relaxation."""
    instance, partition = make_dsc(q)
    supports = _columns(instance, partition, SupportMode.SUPER_SPARSE)
    z_int = milp_value(instance, cap=cap).value
    z_lp = solve_lp(instance).value
    z_closure = exact_closure_value(instance, supports, cap=cap)
    return TightnessReport(
        family=TightFamily.DSC,
        mode=ComparisonMode.CERTIFICATE,
        parameters={"q": q},
        z_int=z_int,
        z_closure=z_closure,
        z_lp=z_lp,
        ratio=closure_ratio(instance.maximize, z_int, z_closure),
        checks=(
            TightnessCheck(label="closure value", value=z_closure, relation="=", target=z_lp),
            TightnessCheck(label="integer optimum", value=z_int, relation=">=", target=q),
        ),
    )


TIGHT_FAMILIES: Dict[TightFamily, FamilySpec] = {
    spec.family: spec
    for spec in (
        FamilySpec(
            family=TightFamily.THREE_CYCLE,
            description="3-cycle, super sparse closure 3 - eps against z^I = 1",
            defaults={"eps": Fraction(1, 2)},
            mode=ComparisonMode.EXACT,
            verify=verify_3cycle,
        ),
        FamilySpec(
            family=TightFamily.STAR_SS,
            description="star, super sparse closure 2*delta - delta*eps against z^I = delta",
            defaults={"delta": 2, "eps": Fraction(1, 2)},
            mode=ComparisonMode.EXACT,
            verify=verify_star_ss,
        ),
        FamilySpec(
            family=TightFamily.TREE_NS,
            description="affine-design star, natural closure against z^I",
            defaults={"delta": 2, "n": 5},
            mode=ComparisonMode.EXACT,
            verify=verify_tree_ns,
        ),
        FamilySpec(
            family=TightFamily.CYCLE_NS,
            description="affine-design cycle, natural closure >= Kn",
            defaults={"K": 3, "n": 3},
            mode=ComparisonMode.CERTIFICATE,
            verify=verify_cycle_ns,
        ),
        FamilySpec(
            family=TightFamily.COVER,
            description="two-stage covering clique, z^I / closure close to K",
            defaults={"K": 2, "n": 3},
            mode=ComparisonMode.CERTIFICATE,
            verify=verify_cover,
        ),
        FamilySpec(
            family=TightFamily.GENERAL_SS,
            description="general-matrix star, super sparse closure K - eps against z^I = 1",
            defaults={"K": 3, "eps": Fraction(1, 2)},
            mode=ComparisonMode.EXACT,
            verify=verify_general_ss,
        ),
        FamilySpec(
            family=TightFamily.GENERAL_NS,
            description="point-set star, natural closure K against z^I = 1",
            defaults={"K": 3},
            mode=ComparisonMode.EXACT,
            verify=verify_general_ns,
        ),
        FamilySpec(
            family=TightFamily.SSC,
            description="special set cover, z^I >= q against z^LP <= 2",
            defaults={"q": 3},
            mode=ComparisonMode.CERTIFICATE,
            verify=verify_ssc,
        ),
        FamilySpec(
            family=TightFamily.DSC,
            description="doubled set cover, super sparse closure equals z^LP",
            defaults={"q": 3},
            mode=ComparisonMode.CERTIFICATE,
            verify=verify_dsc,
        ),
    )
}


def verify_tightness(
    family: TightFamily, params: Optional[Dict[str, Any]] = None, cap: Optional[int] = None
) -> TightnessReport:
    """
    Build a tight family, compute its values exactly and compare them with
    the closed forms.

    Args:
        family: Which family
        params: Overrides of the family defaults
        cap: Lattice cap passed to the kernel
    Returns:
        The report; ``report.ok`` tells whether every comparison held
    """
    spec = TIGHT_FAMILIES[TightFamily(family)]
    arguments = {**spec.defaults, **(params or {})}
    unknown = set(arguments) - set(spec.defaults)
    if unknown:
        raise ValueError(f"unknown parameter(s) for {spec.family.value}: {sorted(unknown)}")
    report = spec.verify(**arguments, cap=cap)
    logger.info(
        "%s %s: %s",
        spec.family.value,
        {k: format_rational(v) if isinstance(v, Fraction) else v for k, v in arguments.items()},
        "ok" if report.ok else "mismatch",
    )
    return report
