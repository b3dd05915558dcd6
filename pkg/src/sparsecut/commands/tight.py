"""
Tight command for sparsecut - checks a tight family against its closed forms.
"""

from pathlib import Path
from typing import Any, Dict, Optional

import typer

from sparsecut.constructions import TIGHT_FAMILIES, TightnessReport, verify_tightness
from sparsecut.core.constants import TightFamily
from sparsecut.core.errors import CapExceededError, SparseCutError
from sparsecut.core.reporter import console, tightness_table
from sparsecut.core.utils import abort, parse_rational, write_to_file


def cmd_verify_tightness(
    family: TightFamily, params: Optional[Dict[str, Any]] = None, cap: Optional[int] = None
) -> TightnessReport:
    """Build ``family`` and compare its exact values with the closed forms."""
    return verify_tightness(family, params, cap=cap)


def tight(
    family: TightFamily = typer.Argument(..., help="Family to check"),
    delta: Optional[int] = typer.Option(None, "--delta", "-d", help="Maximum degree"),
    n: Optional[int] = typer.Option(None, "--n", "-n", help="Design order"),
    K: Optional[int] = typer.Option(None, "-K", "--leaves", help="Cycle length or scenarios"),
    eps: Optional[str] = typer.Option(None, "--eps", help="Epsilon as p/q"),
    q: Optional[int] = typer.Option(None, "-q", help="Set cover order"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Lattice cap for enumeration"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the YAML report"),
):
    """
    Verify a tight family: build it, compute z^I and the closure value
    exactly, and compare them with the closed-form pair.

    Exits with 1 when a comparison fails.

    Examples:
        spc tight 3cycle --eps 1/2
        spc tight tree_ns --delta 2 --n 5
        spc tight general_ns -K 3 -o general_ns.yaml
    """
    given = {"delta": delta, "n": n, "K": K, "eps": eps, "q": q}
    params = {k: v for k, v in given.items() if v is not None}
    allowed = set(TIGHT_FAMILIES[family].defaults)
    unknown = sorted(set(params) - allowed)
    if unknown:
        abort(
            f"{family.value} takes {', '.join(sorted(allowed))}; got {', '.join(unknown)}"
        )
    try:
        if "eps" in params:
            params["eps"] = parse_rational(params["eps"])
        report = cmd_verify_tightness(family, params, cap=cap)
    except CapExceededError as e:
        abort(f"{e}; pass a larger --cap")
    except (SparseCutError, ValueError) as e:
        abort(str(e))

    console.print(tightness_table(report))
    if out is not None:
        write_to_file(report.to_yaml(), out)
    if not report.ok:
        typer.echo(f"Error: {family.value} does not match its closed forms", err=True)
        raise typer.Exit(1)


def entry():
    typer.run(tight)
