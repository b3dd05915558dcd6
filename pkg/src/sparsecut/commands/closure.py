"""
Closure command for sparsecut - estimates the optimum over a sparse closure.
"""

from fractions import Fraction
from pathlib import Path
from typing import List, NamedTuple, Optional

import typer

from sparsecut.core.constants import DEFAULT_EPSILON, SupportMode
from sparsecut.core.errors import CapExceededError, SparseCutError
from sparsecut.core.reporter import closure_table, console
from sparsecut.core.smilp import load_instance
from sparsecut.core.utils import (abort, parse_index_sets, parse_rational,
                                  write_to_file)
from sparsecut.estimator import ClosureRun, EstimatorConfig, estimate_zcut
from sparsecut.graphs import build_graph, list_columns, support_list_for
from sparsecut.kernel import exact_closure_value, milp_value


class ClosureOutcome(NamedTuple):
    run: ClosureRun
    z_int: Optional[Fraction] = None
    exact: Optional[Fraction] = None


def cmd_closure(
    instance_path: Path,
    mode: SupportMode,
    config: EstimatorConfig,
    oracle: bool = False,
    custom: Optional[List[List[int]]] = None,
) -> ClosureOutcome:
    """
    Run the estimator over the supports of ``mode``.

    With ``oracle`` the exact closure value and z^I are computed too, as long
    as the lattice fits the cap; otherwise they are left out.
    """
    document = load_instance(instance_path)
    instance = document.instance
    graph = build_graph(instance, document.graph_partition())
    support_list = support_list_for(instance, graph, mode, custom)
    supports = list_columns(graph, support_list)
    run = estimate_zcut(instance, supports, config)
    if not oracle:
        return ClosureOutcome(run)
    try:
        exact = exact_closure_value(instance, supports, cap=config.point_cap)
        z_int = milp_value(instance, cap=config.point_cap).value
    except CapExceededError as e:
        typer.echo(f"Warning: oracle skipped, {e}", err=True)
        return ClosureOutcome(run)
    return ClosureOutcome(run, z_int, exact)


def closure(
    instance_path: Path = typer.Argument(..., help="SMILP instance with its partition"),
    mode: SupportMode = typer.Option(
        SupportMode.NATURAL_SPARSE, "--mode", "-m", help="Support list: ss, ns or custom"
    ),
    support: List[str] = typer.Option(
        [],
        "--support",
        help="Custom member as 1-based nodes, e.g. '1,2' (can be used multiple times)",
    ),
    oracle: bool = typer.Option(
        False, "--oracle/--no-oracle", help="Also compute the exact closure value and z^I"
    ),
    eps: str = typer.Option(
        str(DEFAULT_EPSILON), "--eps", help="Improvement and violation tolerance p/q"
    ),
    cap: Optional[int] = typer.Option(None, "--cap", help="Lattice cap for enumeration"),
    max_cuts: int = typer.Option(500, "--max-cuts", help="Cap on cuts added"),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Write the run (.yaml) or the round trace (any other suffix)"
    ),
):
    """
    Estimate z^cut by adding sparse cuts until no support yields progress.

    Examples:
        spc closure three_cycle.smilp --mode ss --oracle
        spc closure inst.smilp --eps 1/1000 -o trace.csv
        spc closure inst.smilp --mode custom --support 1,2 --support 3
    """
    if not instance_path.exists():
        abort(f"Path {instance_path} does not exist")
    try:
        config = EstimatorConfig(
            epsilon=parse_rational(eps), max_cuts=max_cuts, point_cap=cap
        )
        custom = parse_index_sets(support) if mode == SupportMode.CUSTOM else None
        outcome = cmd_closure(instance_path, mode, config, oracle, custom)
    except CapExceededError as e:
        abort(f"{e}; pass a larger --cap")
    except (SparseCutError, ValueError) as e:
        abort(str(e))

    console.print(closure_table(outcome.run, outcome.z_int, outcome.exact))
    if out is None:
        return
    if out.suffix in (".yaml", ".yml"):
        write_to_file(outcome.run.to_yaml(), out)
    else:
        write_to_file(outcome.run.to_trace_csv(), out)


def entry():
    typer.run(closure)
