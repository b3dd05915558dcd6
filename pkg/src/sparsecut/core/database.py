from pathlib import Path
from typing import List, Optional

from sqlite_utils import Database

from sparsecut.core.config import get_settings
from sparsecut.core.utils import dump_yaml, format_rational
from sparsecut.experiment.models import ExperimentResult, RatioRow

DB_NAME = "sparsecut_results.db"
RUNS_TABLE = "runs"
ROWS_TABLE = "ratio_rows"


def default_db_path() -> Path:
    return get_settings().data_dir / DB_NAME


def open_database(path: Optional[Path] = None) -> Database:
    """Open (creating if needed) the results store.
    Args:
        path: Database file; defaults to ``SPARSECUT_DATA_DIR/sparsecut_results.db``
    Returns:
        The sqlite-utils Database
    """
    path = Path(path) if path is not None else default_db_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    return Database(path)


def run_id_for(result: ExperimentResult) -> str:
    """Deterministic run key built from the experiment settings."""
    config = result.config
    gen = config.generator
    return (
        f"{gen.kind.value}-{config.mode.value}-nv{gen.nv}-sqr{gen.sqr}"
        f"{'-2s' if gen.two_stage else ''}-seed{gen.seed}-n{config.count}"
    )


def _cell(value) -> Optional[str]:
    return None if value is None else format_rational(value)


def save_experiment(db: Database, result: ExperimentResult, run_id: Optional[str] = None) -> str:
    """Store a run and its rows, replacing an earlier run with the same id.
    Args:
        db: Open results store
        result: Experiment to store
        run_id: Key of the run; derived from the settings when omitted
    Returns:
        The run id used
    """
    run_id = run_id or run_id_for(result)
    config = result.config
    db[RUNS_TABLE].insert(
        {
            "run_id": run_id,
            "kind": config.kind.value,
            "mode": config.mode.value,
            "count": config.count,
            "oracle": config.oracle,
            "config": dump_yaml(config.model_dump()),
            "average_ratio": _cell(result.average_ratio()),
            "max_ratio": _cell(result.max_ratio()),
            "violations": len(result.violations),
        },
        pk="run_id",
        replace=True,
    )
    rows_table = db[ROWS_TABLE]
    if ROWS_TABLE in db.table_names():
        rows_table.delete_where("run_id = ?", [run_id])
    rows_table.insert_all(
        (
            {
                "run_id": run_id,
                "id": row.id,
                "seed": row.seed,
                "graph": row.graph,
                "maximize": row.maximize,
                "z_int": _cell(row.z_int),
                "z_closure": _cell(row.z_closure),
                "z_lp": _cell(row.z_lp),
                "exact": row.exact,
                "gap": _cell(row.gap),
                "ratio": _cell(row.ratio),
                "bound": _cell(row.bound),
                "ok": row.ok,
                "skipped": row.skipped,
            }
            for row in result.rows
        ),
        pk=("run_id", "id"),
    )
    return run_id


def get_runs(db: Database) -> List[dict]:
    """All stored runs.
    Returns:
        One dict per run, ordered by run id
    """
    if RUNS_TABLE not in db.table_names():
        return []
    return list(db[RUNS_TABLE].rows_where(order_by="run_id"))


def get_rows(db: Database, run_id: str) -> List[RatioRow]:
    """Rows of one run, ordered by instance id.
    Args:
        db: Open results store
        run_id: Key of the run
    Returns:
        List of RatioRow objects
    """
    if ROWS_TABLE not in db.table_names():
        return []
    rows = []
    for record in db[ROWS_TABLE].rows_where("run_id = ?", [run_id], order_by="id"):
        rows.append(
            RatioRow(
                id=record["id"],
                seed=record["seed"],
                graph=record["graph"] or "",
                maximize=bool(record["maximize"]),
                z_int=record["z_int"],
                z_closure=record["z_closure"],
                z_lp=record["z_lp"],
                exact=bool(record["exact"]),
                gap=record["gap"],
                ratio=record["ratio"],
                bound=record["bound"],
                skipped=record["skipped"],
            )
        )
    return rows
