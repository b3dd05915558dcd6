import typer

from sparsecut import __version__
from sparsecut.commands import bounds, closure, db_cli, experiment, gen, tight
from sparsecut.core.logging import configure_logging, verbosity_to_level

app = typer.Typer(
    name="spc",
    help="Sparse cutting-plane closures: bounds, estimates and tight families",
    no_args_is_help=True,
)


@app.callback()
def main_callback(
    verbose: int = typer.Option(
        0, "--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG"
    ),
):
    configure_logging(verbosity_to_level(verbose))


# Register commands
app.command(name="gen")(gen)
app.command(name="bounds")(bounds)
app.command(name="closure")(closure)
app.command(name="tight")(tight)
app.command(name="experiment")(experiment)
app.add_typer(
    db_cli,
    name="db",
    help="Stored experiment results",
    no_args_is_help=True,
)
app.command(name="version", help="Show the sparsecut version and exit")(
    lambda: typer.echo(__version__)
)


def main():
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
