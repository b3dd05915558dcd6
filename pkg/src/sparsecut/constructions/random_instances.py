"""
Seeded random instances on a random (or star) interaction graph.

Streams: the root ``SeedSequence(seed)`` spawns four children used for the
graph, the constraint matrix, the right-hand side and the objective, in that
order. The matrix child spawns one grandchild per nonzero block, in edge order
and, within an edge, by increasing node. Every stream drives a ``PCG64``
generator.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np
from numpy.random import PCG64, Generator, SeedSequence
from pydantic import BaseModel, ConfigDict, Field

from sparsecut.core.constants import PX_CHOICES, Axis, KindTag, Relation, Sense
from sparsecut.core.models import BlockPartition, Instance, Row

logger = logging.getLogger(__name__)

MAX_GRAPH_ATTEMPTS = 1000


class GenParams(BaseModel):
    """Parameters of the random generator."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    nv: int = Field(3, ge=2, description="Number of graph nodes (column blocks)")
    p: float = Field(0.5, gt=0, le=1, description="Edge probability")
    sqr: int = Field(3, ge=1, description="Block size")
    coef_max: int = Field(10, ge=1, alias="M", description="Coefficients are unif{1, M}")
    noise_max: int = Field(10, ge=1, alias="M_eps", description="Noise is unif{1, M_eps}")
    obj_max: int = Field(10, ge=1, alias="ObjM", description="Objective is unif{1, ObjM}")
    seed: int = Field(0, ge=0, lt=2**64, description="64-bit seed")
    kind: KindTag = Field(KindTag.PACKING, description="Instance kind")
    two_stage: bool = Field(False, description="Use the star on nv nodes")


def _generator(seq: SeedSequence) -> Generator:
    return Generator(PCG64(seq))


def _random_graph(params: GenParams, rng: Generator) -> nx.Graph:
    if params.two_stage:
        return nx.star_graph(params.nv - 1)
    for attempt in range(1, MAX_GRAPH_ATTEMPTS + 1):
        graph = nx.gnp_random_graph(params.nv, params.p, seed=rng)
        if nx.is_connected(graph):
            logger.debug("connected graph after %d attempt(s)", attempt)
            return graph
    raise ValueError(
        f"no connected G({params.nv}, {params.p}) graph in {MAX_GRAPH_ATTEMPTS} attempts"
    )


def _block(rng: Generator, shape: Tuple[int, int], coef_max: int, signed: bool) -> np.ndarray:
    values = rng.integers(1, coef_max, size=shape, endpoint=True)
    if signed:
        flips = rng.random(size=shape) < 0.5
        values = np.where(flips, -values, values)
    return values


def _right_hand_side(
    matrix: List[Dict[int, int]], n: int, kind: KindTag, noise_max: int, rng: Generator
) -> List[Fraction]:
    px = PX_CHOICES[int(rng.integers(len(PX_CHOICES)))]
    x = (rng.random(size=n) < float(px)).astype(int)
    noise = rng.integers(1, noise_max, size=len(matrix), endpoint=True)
    rhs = []
    clamped = 0
    for row, eps in zip(matrix, noise):
        activity = sum(a * int(x[j]) for j, a in row.items())
        if kind == KindTag.COVERING:
            b = activity - int(eps)
            if b < 0:
                clamped += 1
                b = 0
        else:
            b = activity + int(eps)
        rhs.append(Fraction(b))
    if clamped:
        logger.info("clamped %d negative covering right-hand side(s) to 0", clamped)
    logger.debug("right-hand side drawn with p_x = %s", px)
    return rhs


def gen_random_instance(params: GenParams) -> Tuple[Instance, BlockPartition]:
    """
    Build a random instance with binary variables.

    Each graph edge owns ``sqr`` rows and each node ``sqr`` columns; the
    block of an edge and an incident node is dense with entries
    ``unif{1, M}`` (sign flipped with probability 1/2 for the general kind),
    every other block is zero.
    Args:
        params: Generator parameters
    Returns:
        The instance and its partition: the column blocks for packing and
        general instances, one row block per edge for covering instances
    """
    root = SeedSequence(params.seed)
    graph_seq, matrix_seq, rhs_seq, obj_seq = root.spawn(4)
    graph = _random_graph(params, _generator(graph_seq))
    edges = sorted(tuple(sorted(e)) for e in graph.edges())
    sqr = params.sqr
    n = params.nv * sqr
    signed = params.kind == KindTag.GENERAL

    block_seqs = iter(matrix_seq.spawn(2 * len(edges)))
    matrix: List[Dict[int, int]] = [dict() for _ in range(len(edges) * sqr)]
    for e, edge in enumerate(edges):
        for node in edge:
            values = _block(_generator(next(block_seqs)), (sqr, sqr), params.coef_max, signed)
            for i in range(sqr):
                for k in range(sqr):
                    matrix[e * sqr + i][node * sqr + k] = int(values[i, k])

    rhs = _right_hand_side(matrix, n, params.kind, params.noise_max, _generator(rhs_seq))
    objective = _generator(obj_seq).integers(1, params.obj_max, size=n, endpoint=True)

    covering = params.kind == KindTag.COVERING
    relation = Relation.GE if covering else Relation.LE
    rows = [
        Row(coeffs=sorted(row.items()), relation=relation, rhs=b)
        for row, b in zip(matrix, rhs)
    ]
    instance = Instance.build(
        [int(c) for c in objective],
        rows,
        sense=Sense.MINIMIZE if covering else Sense.MAXIMIZE,
        kind_tag=params.kind,
        upper=1,
        name=f"random-{params.kind.value}-nv{params.nv}-sqr{sqr}-seed{params.seed}",
    )
    if covering:
        partition = BlockPartition(
            axis=Axis.ROWS,
            size=len(rows),
            blocks=[range(e * sqr, (e + 1) * sqr) for e in range(len(edges))],
        )
    else:
        partition = BlockPartition(
            axis=Axis.COLUMNS,
            size=n,
            blocks=[range(v * sqr, (v + 1) * sqr) for v in range(params.nv)],
        )
    logger.debug(
        "generated %s: %d rows, %d columns, %d edges",
        instance.name,
        instance.num_rows,
        n,
        len(edges),
    )
    return instance, partition


def two_stage_instance(
    k: int,
    first_size: int,
    scenario_size: int,
    kind: KindTag = KindTag.PACKING,
    seed: int = 0,
    coef_max: int = 10,
    noise_max: int = 10,
    obj_max: int = 10,
) -> Tuple[Instance, BlockPartition, BlockPartition]:
    """
    A two-stage stochastic instance: first-stage columns plus ``k`` scenario
    blocks, each scenario owning ``scenario_size`` rows over the first stage
    and its own columns.

    Returns:
        The instance, its column partition (first stage, then scenarios) and
        its row partition (one block per scenario)
    """
    if k < 1 or first_size < 1 or scenario_size < 1:
        raise ValueError("two-stage instances need k, first_size, scenario_size >= 1")
    root = SeedSequence(seed)
    matrix_seq, rhs_seq, obj_seq = root.spawn(3)
    signed = kind == KindTag.GENERAL
    n = first_size + k * scenario_size
    matrix: List[Dict[int, int]] = []
    for s, seq in enumerate(matrix_seq.spawn(k)):
        rng = _generator(seq)
        first = _block(rng, (scenario_size, first_size), coef_max, signed)
        second = _block(rng, (scenario_size, scenario_size), coef_max, signed)
        offset = first_size + s * scenario_size
        for i in range(scenario_size):
            row = {j: int(first[i, j]) for j in range(first_size)}
            row.update({offset + j: int(second[i, j]) for j in range(scenario_size)})
            matrix.append(row)
    rhs = _right_hand_side(matrix, n, kind, noise_max, _generator(rhs_seq))
    objective = _generator(obj_seq).integers(1, obj_max, size=n, endpoint=True)
    covering = kind == KindTag.COVERING
    relation = Relation.GE if covering else Relation.LE
    instance = Instance.build(
        [int(c) for c in objective],
        [Row(coeffs=sorted(r.items()), relation=relation, rhs=b) for r, b in zip(matrix, rhs)],
        sense=Sense.MINIMIZE if covering else Sense.MAXIMIZE,
        kind_tag=kind,
        upper=1,
        name=f"two-stage-{kind.value}-k{k}-seed{seed}",
    )
    columns = BlockPartition(
        axis=Axis.COLUMNS,
        size=n,
        blocks=[range(first_size)]
        + [
            range(first_size + s * scenario_size, first_size + (s + 1) * scenario_size)
            for s in range(k)
        ],
    )
    rows = BlockPartition(
        axis=Axis.ROWS,
        size=k * scenario_size,
        blocks=[range(s * scenario_size, (s + 1) * scenario_size) for s in range(k)],
    )
    return instance, columns, rows


def random_partition(
    size: int, blocks: int, seed: int = 0, axis: Axis = Axis.COLUMNS
) -> BlockPartition:
    """A uniformly shuffled partition of ``range(size)`` into ``blocks`` nonempty blocks."""
    if not 1 <= blocks <= size:
        raise ValueError(f"cannot split {size} indices into {blocks} nonempty blocks")
    rng = _generator(SeedSequence(seed))
    order = rng.permutation(size)
    cuts = sorted(int(c) for c in rng.choice(np.arange(1, size), size=blocks - 1, replace=False))
    bounds = [0, *cuts, size]
    parts = [order[a:b].tolist() for a, b in zip(bounds, bounds[1:])]
    return BlockPartition(axis=axis, size=size, blocks=parts)

