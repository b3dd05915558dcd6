"""
Gen command for sparsecut - writes seeded random instances in SMILP form.
"""

from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from sparsecut.constructions import GenParams, gen_random_instance
from sparsecut.core.constants import KindTag
from sparsecut.core.smilp import dump_smilp, save_instance
from sparsecut.core.utils import abort, write_to_file
from sparsecut.graphs import build_graph


def gen(
    kind: KindTag = typer.Option(KindTag.PACKING, "--kind", "-k", help="Instance kind"),
    nv: int = typer.Option(3, "--nv", help="Number of graph nodes"),
    p: float = typer.Option(0.5, "--p", help="Edge probability of the random graph"),
    sqr: int = typer.Option(3, "--sqr", help="Block size"),
    coef_max: int = typer.Option(10, "-M", "--coef-max", help="Coefficients are unif{1, M}"),
    noise_max: int = typer.Option(10, "--noise-max", help="Right-hand side noise is unif{1, M}"),
    obj_max: int = typer.Option(10, "--obj-max", help="Objective is unif{1, M}"),
    seed: int = typer.Option(0, "--seed", "-s", help="64-bit seed"),
    two_stage: bool = typer.Option(
        False, "--two-stage/--random-graph", help="Star topology instead of G(nv, p)"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="SMILP output path"),
    graph_out: Optional[Path] = typer.Option(
        None, "--graph-out", help="Also write the interaction graph as an edge list"
    ),
):
    """
    Generate a random block-structured instance.

    Each graph edge owns sqr rows, each node sqr columns. Packing and general
    instances carry their column blocks, covering instances one row block per
    edge.

    Examples:
        spc gen --kind packing --nv 4 --seed 7 -o packing.smilp
        spc gen --kind covering --two-stage --nv 5 --graph-out star.txt
    """
    try:
        params = GenParams(
            nv=nv,
            p=p,
            sqr=sqr,
            coef_max=coef_max,
            noise_max=noise_max,
            obj_max=obj_max,
            seed=seed,
            kind=kind,
            two_stage=two_stage,
        )
        instance, partition = gen_random_instance(params)
    except (ValidationError, ValueError) as e:
        abort(str(e))

    if out is None:
        typer.echo(dump_smilp(instance, [partition]), nl=False)
    else:
        save_instance(instance, [partition], out)
        typer.echo(f"Output written to: {out}", err=True)
    if graph_out is not None:
        write_to_file(build_graph(instance, partition).to_edge_list_text(), graph_out)


def entry():
    typer.run(gen)
