"""
Rendering of bound reports, closure runs, tightness checks and experiment
results: rich tables for the terminal, CSV and Markdown for files.
"""

import csv
import io
from decimal import Decimal
from fractions import Fraction
from typing import Optional

from rich.console import Console
from rich.table import Table

from sparsecut.bounds.models import BoundReport
from sparsecut.constructions.registry import TightnessReport
from sparsecut.core.config import JINJA_ENVIRONMENT
from sparsecut.core.constants import CSV_HEADER
from sparsecut.core.utils import format_rational
from sparsecut.estimator.models import ClosureRun
from sparsecut.experiment.models import ExperimentResult

SUMMARY_TEMPLATE = "summary.md.jinja"

console = Console()


def _fmt(value: Optional[Fraction]) -> str:
    return "-" if value is None else format_rational(value)


def decimal_text(value: Optional[Fraction], places: int = 5) -> str:
    """``value`` rounded to ``places`` decimals, next to its exact form when they differ."""
    if value is None:
        return "-"
    exact = format_rational(value)
    if value.denominator == 1:
        return exact
    approx = Decimal(value.numerator) / Decimal(value.denominator)
    return f"{approx:.{places}f} ({exact})"


def ratio_csv(result: ExperimentResult) -> str:
    """The per-instance CSV of an experiment; skipped instances are left out."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.measured:
        writer.writerow(row.to_csv_row())
    return out.getvalue()


def render_summary(result: ExperimentResult, title: Optional[str] = None) -> str:
    """Markdown summary with one line per interaction graph."""
    config = result.config
    template = JINJA_ENVIRONMENT.get_template(SUMMARY_TEMPLATE)
    maximize = next((r.maximize for r in result.measured), True)
    graphs = [
        {
            "graph": g.graph,
            "instances": g.instances,
            "average": decimal_text(g.average_ratio),
            "max": decimal_text(g.max_ratio),
            "bound": decimal_text(g.bound),
            "holds": g.max_ratio <= g.bound,
        }
        for g in result.by_graph()
    ]
    return template.render(
        title=title or f"Closure experiment: {config.kind.value}",
        kind=config.kind.value,
        mode=config.mode.value,
        count=config.count,
        nv=config.generator.nv,
        sqr=config.generator.sqr,
        two_stage="yes" if config.generator.two_stage else "no",
        source="exact oracle" if config.oracle else "estimator",
        ratio_label="z^cut / z^I" if maximize else "z^I / z^cut",
        graphs=graphs,
        average=decimal_text(result.average_ratio()),
        measured=len(result.measured),
        skipped=result.skipped,
        violations=[
            {"id": r.id, "ratio": _fmt(r.ratio), "bound": _fmt(r.bound)}
            for r in result.violations
        ],
    )


def bound_table(report: BoundReport) -> Table:
    table = Table(title=f"Bound ({report.bound_kind.value})")
    table.add_column("Quantity")
    table.add_column("Value")
    table.add_row("bound factor", decimal_text(report.value))
    if report.density is not None:
        table.add_row("corrected average density", _fmt(report.density))
    if report.graph is not None:
        table.add_row("nodes", str(report.graph.node_count))
        table.add_row("edges", str(report.graph.edge_count))
    if report.support_list is not None:
        table.add_row("support list", report.support_list.describe())
    table.add_row("certificate", report.certificate_summary() or "-")
    table.add_row("verified", "yes" if report.verify() else "no")
    return table


def closure_table(
    run: ClosureRun, z_int: Optional[Fraction] = None, exact: Optional[Fraction] = None
) -> Table:
    table = Table(title="Cut closure")
    table.add_column("Quantity")
    table.add_column("Value")
    table.add_row("z^LP", _fmt(run.z_lp))
    table.add_row("estimate", _fmt(run.z_estimate))
    if exact is not None:
        table.add_row("exact closure", _fmt(exact))
        table.add_row("gap", _fmt(run.z_estimate - exact))
    if z_int is not None:
        table.add_row("z^I", _fmt(z_int))
    table.add_row("cuts", str(len(run.cuts_added)))
    table.add_row("rounds", str(run.rounds))
    table.add_row("termination", run.termination.value)
    return table


def tightness_table(report: TightnessReport) -> Table:
    params = ", ".join(
        f"{k}={format_rational(v) if isinstance(v, Fraction) else v}"
        for k, v in report.parameters.items()
    )
    table = Table(title=f"{report.family.value} ({params}) [{report.mode.value}]")
    table.add_column("Check")
    table.add_column("Value")
    table.add_column("Target")
    table.add_column("OK")
    for check in report.checks:
        table.add_row(
            check.label,
            format_rational(check.value),
            f"{check.relation} {format_rational(check.target)}",
            "yes" if check.ok else "NO",
        )
    if report.ratio is not None:
        table.add_row("ratio", decimal_text(report.ratio), "", "")
    return table


def ratio_table(result: ExperimentResult) -> Table:
    table = Table(title=f"Experiment ({result.config.kind.value}, {result.config.mode.value})")
    for name in CSV_HEADER:
        table.add_column(name)
    for row in result.rows:
        if row.skipped is not None:
            table.add_row(str(row.id), "-", "-", "-", "-", f"skipped: {row.skipped}")
            continue
        cells = row.to_csv_row()
        cells[-1] = "yes" if row.consistent else "NO"
        table.add_row(*cells)
    return table
