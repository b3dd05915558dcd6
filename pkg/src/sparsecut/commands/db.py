from pathlib import Path
from typing import Optional

import typer
from rich.table import Table
from typer import echo

from sparsecut.core.database import get_rows, get_runs, open_database
from sparsecut.core.reporter import console

db_cli = typer.Typer(name="db", help="Stored experiment results")


@db_cli.command(name="runs", help="List the stored experiment runs")
def list_runs(
    db: Optional[Path] = typer.Option(None, "--db", help="SQLite results store"),
):
    """
    List every run in the results store.
    """
    runs = get_runs(open_database(db))
    if not runs:
        echo("No runs found.")
        return

    for idx, run in enumerate(runs, start=1):
        echo(
            f"{idx}. {run['run_id']} - {run['count']} instances, "
            f"avg ratio {run['average_ratio']}, {run['violations']} violation(s)"
        )


@db_cli.command(name="show", help="Show the rows of one run")
def show_run(
    run_id: str = typer.Argument(..., help="Run id as listed by 'db runs'"),
    db: Optional[Path] = typer.Option(None, "--db", help="SQLite results store"),
):
    rows = get_rows(open_database(db), run_id)
    if not rows:
        echo(f"No rows stored for {run_id}.", err=True)
        raise typer.Exit(2)

    table = Table(title=run_id)
    for name in ("id", "seed", "zI", "zClosure", "ratio", "bound", "ok"):
        table.add_column(name)
    for row in rows:
        if row.skipped is not None:
            table.add_row(str(row.id), str(row.seed), "-", "-", "-", "-", row.skipped)
            continue
        cells = row.to_csv_row()
        table.add_row(cells[0], str(row.seed), *cells[1:-1], "yes" if row.ok else "NO")
    console.print(table)
