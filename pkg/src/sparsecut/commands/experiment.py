"""
Experiment command for sparsecut - measures closure strength on random instances.
"""

import sys
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from pydantic import ValidationError

from sparsecut.core.constants import KindTag, SupportMode
from sparsecut.core.database import open_database, save_experiment
from sparsecut.core.reporter import console, ratio_csv, ratio_table, render_summary
from sparsecut.core.utils import abort, load_yaml_file, write_to_file
from sparsecut.experiment import ExperimentConfig, ExperimentResult, run_experiment


def build_config(file_data: Dict[str, Any], overrides: Dict[str, Any]) -> ExperimentConfig:
    """Merge a YAML mapping with command-line values; ``None`` values are ignored.

    Generator keys (``nv``, ``p``, ``sqr``, ``kind``, ...) may sit at the top
    level or under ``generator``; estimator keys under ``estimator``.
    """
    data = dict(file_data)
    generator = dict(data.pop("generator", None) or {})
    estimator = dict(data.pop("estimator", None) or {})
    generator_keys = {"kind", "nv", "p", "sqr", "M", "M_eps", "ObjM", "coef_max",
                      "noise_max", "obj_max", "seed", "two_stage"}
    for key in list(data):
        if key in generator_keys:
            generator[key] = data.pop(key)
    for key, value in overrides.items():
        if value is None:
            continue
        if key in generator_keys:
            generator[key] = value
        elif key in ("epsilon", "max_cuts"):
            estimator[key] = value
        else:
            data[key] = value
    return ExperimentConfig(generator=generator, estimator=estimator, **data)


def cmd_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run ``config`` and write its CSV, Markdown summary and database rows."""
    with typer.progressbar(length=config.count, label="Instances", file=sys.stderr) as bar:
        result = run_experiment(config, progress=lambda row: bar.update(1))
    if config.out is not None:
        write_to_file(ratio_csv(result), config.out)
        write_to_file(render_summary(result), config.out.with_suffix(".md"))
    if config.db is not None:
        run_id = save_experiment(open_database(config.db), result)
        typer.echo(f"Stored run {run_id} in {config.db}", err=True)
    return result


def experiment(
    config_file: Optional[Path] = typer.Option(
        None, "--config", "-c", help="YAML experiment file; flags override it"
    ),
    kind: Optional[KindTag] = typer.Option(None, "--kind", "-k", help="Instance kind"),
    nv: Optional[int] = typer.Option(None, "--nv", help="Number of graph nodes"),
    p: Optional[float] = typer.Option(None, "--p", help="Edge probability"),
    sqr: Optional[int] = typer.Option(None, "--sqr", help="Block size"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Seed of the first instance"),
    two_stage: Optional[bool] = typer.Option(
        None, "--two-stage/--random-graph", help="Star topology instead of G(nv, p)"
    ),
    count: Optional[int] = typer.Option(None, "--count", "-n", help="Number of instances"),
    mode: Optional[SupportMode] = typer.Option(None, "--mode", "-m", help="ss or ns"),
    oracle: Optional[bool] = typer.Option(
        None, "--oracle/--estimate", help="Exact closure values or the estimator's"
    ),
    eps: Optional[str] = typer.Option(None, "--eps", help="Estimator tolerance p/q"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Lattice cap for enumeration"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="CSV output; the summary goes next to it as .md"
    ),
    db: Optional[Path] = typer.Option(None, "--db", help="SQLite results store"),
):
    """
    Generate seeded random instances and compare each closure ratio with the
    theoretical bound of its graph.

    Exits with 1 when an instance breaks its bound, the z^I <= z^cut <= z^LP
    sandwich, or an estimate falls outside the exact closure value and z^LP.

    Examples:
        spc experiment --kind packing --two-stage --nv 3 --count 10 -o packing.csv
        spc experiment --config covering.yaml --workers 4 --db results.db
    """
    try:
        file_data = load_yaml_file(config_file) if config_file is not None else {}
        config = build_config(
            file_data,
            {
                "kind": kind,
                "nv": nv,
                "p": p,
                "sqr": sqr,
                "seed": seed,
                "two_stage": two_stage,
                "count": count,
                "mode": mode,
                "oracle": oracle,
                "epsilon": eps,
                "cap": cap,
                "workers": workers,
                "out": out,
                "db": db,
            },
        )
    except (OSError, ValidationError, ValueError, TypeError) as e:
        abort(str(e))

    result = cmd_experiment(config)
    if config.out is None:
        typer.echo(ratio_csv(result), nl=False)
        typer.echo(render_summary(result), nl=False)
    else:
        console.print(ratio_table(result))
    if not result.ok:
        ids = ", ".join(str(r.id) for r in result.violations)
        typer.echo(
            f"Error: bound, sandwich or estimate check violated on instance(s) {ids}",
            err=True,
        )
        raise typer.Exit(1)


def entry():
    typer.run(experiment)
