"""
Bounds command for sparsecut - the theoretical factor of a support list.
"""

import csv
import io
from pathlib import Path
from typing import List, Optional

import typer

from sparsecut.bounds import BoundReport, theoretical_bound
from sparsecut.core.constants import KindTag, SupportMode
from sparsecut.core.errors import CapExceededError, SparseCutError
from sparsecut.core.reporter import bound_table, console
from sparsecut.core.smilp import load_instance
from sparsecut.core.utils import abort, parse_index_sets, write_to_file
from sparsecut.graphs import build_graph, support_list_for


def cmd_bounds(
    instance_path: Path,
    mode: SupportMode,
    kind: Optional[KindTag] = None,
    custom: Optional[List[List[int]]] = None,
) -> BoundReport:
    """Load an instance, build its graph and support list, and bound the closure."""
    document = load_instance(instance_path)
    kind = KindTag(kind or document.instance.kind_tag)
    graph = build_graph(document.instance, document.graph_partition(kind))
    support_list = support_list_for(document.instance, graph, mode, custom)
    return theoretical_bound(kind, graph, support_list)


def bounds(
    instance_path: Path = typer.Argument(..., help="SMILP instance with its partition"),
    mode: SupportMode = typer.Option(
        SupportMode.NATURAL_SPARSE, "--mode", "-m", help="Support list: ss, ns or custom"
    ),
    support: List[str] = typer.Option(
        [],
        "--support",
        help="Custom member as 1-based nodes, e.g. '1,2' (can be used multiple times)",
    ),
    kind: Optional[KindTag] = typer.Option(
        None, "--kind", "-k", help="Bound to apply; defaults to the instance kind"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Write the report (.yaml) or a CSV row (any other suffix)"
    ),
):
    """
    Compute the theoretical bound of a sparse closure.

    Packing instances get eta (fractional mixed chromatic number), covering
    instances eta-bar (mixed chromatic number) and general instances
    |V| + 1 - D_V (corrected average density).

    Examples:
        spc bounds star.smilp --mode ns
        spc bounds clique.smilp --kind covering
        spc bounds inst.smilp --mode custom --support 1,2 --support 2,3 -o bound.yaml
    """
    if not instance_path.exists():
        abort(f"Path {instance_path} does not exist")
    try:
        custom = parse_index_sets(support) if mode == SupportMode.CUSTOM else None
        report = cmd_bounds(instance_path, mode, kind, custom)
    except CapExceededError as e:
        abort(f"{e}; raise the cap in the environment")
    except (SparseCutError, ValueError) as e:
        abort(str(e))

    console.print(bound_table(report))
    if out is None:
        return
    if out.suffix in (".yaml", ".yml"):
        write_to_file(report.to_yaml(), out)
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["bound_kind", "value", "certificate"])
        writer.writerow(report.to_csv_row())
        write_to_file(buffer.getvalue(), out)


def entry():
    typer.run(bounds)
