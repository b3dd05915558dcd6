"""
Runs an experiment: every instance is generated, bounded and measured by a
single worker, and the rows are merged in instance order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional

from sparsecut.bounds import theoretical_bound
from sparsecut.constructions.random_instances import gen_random_instance
from sparsecut.core.config import get_settings
from sparsecut.core.constants import LpStatus
from sparsecut.core.errors import SparseCutError
from sparsecut.core.utils import closure_ratio
from sparsecut.estimator import estimate_zcut
from sparsecut.experiment.models import (ExperimentConfig, ExperimentResult,
                                         RatioRow)
from sparsecut.graphs import (InteractionGraph, build_graph, list_columns,
                              support_list_for)
from sparsecut.kernel import exact_closure_value, milp_value

logger = logging.getLogger(__name__)


def graph_label(graph: InteractionGraph) -> str:
    """Compact 1-based edge list, e.g. ``1-2 1-3``."""
    return " ".join(f"{u + 1}-{v + 1}" for u, v in graph.edges) or "-"


def run_instance(config: ExperimentConfig, index: int) -> RatioRow:
    """
    Generate and measure the ``index``-th instance of an experiment.

    Kernel caps and degenerate instances do not raise; the row comes back
    with ``skipped`` set instead.
    """
    params = config.params_for(index)
    row_id = index + 1
    cap = config.cap or get_settings().point_cap
    try:
        instance, partition = gen_random_instance(params)
        graph = build_graph(instance, partition)
        support_list = support_list_for(instance, graph, config.mode)
        bound = theoretical_bound(instance.kind_tag, graph, support_list).value
        supports = list_columns(graph, support_list)
        milp = milp_value(instance, cap=cap)
        if milp.status != LpStatus.OPTIMAL:
            raise SparseCutError(f"integer program is {milp.status.value}")
        estimator = config.estimator.model_copy(update={"point_cap": cap})
        run = estimate_zcut(instance, supports, estimator)
        exact = None
        if config.oracle:
            exact = exact_closure_value(instance, supports, cap=cap)
    except (SparseCutError, ValueError) as e:
        logger.warning("instance %d (seed %d) skipped: %s", row_id, params.seed, e)
        return RatioRow(id=row_id, seed=params.seed, skipped=str(e))

    z_closure = run.z_estimate if exact is None else exact
    row = RatioRow(
        id=row_id,
        seed=params.seed,
        graph=graph_label(graph),
        maximize=instance.maximize,
        z_int=milp.value,
        z_closure=z_closure,
        z_lp=run.z_lp,
        exact=exact is not None,
        gap=None if exact is None else run.z_estimate - exact,
        ratio=closure_ratio(instance.maximize, milp.value, z_closure),
        bound=bound,
    )
    logger.info(
        "instance %d: zI=%s closure=%s ratio=%s bound=%s",
        row_id,
        row.z_int,
        row.z_closure,
        row.ratio,
        row.bound,
    )
    return row


def run_experiment(
    config: ExperimentConfig, progress: Optional[Callable[[RatioRow], None]] = None
) -> ExperimentResult:
    """
    Measure every instance of ``config``.

    Args:
        config: The experiment
        progress: Called with each row as it is merged
    Returns:
        ExperimentResult with the rows ordered by instance id
    """
    indices = range(config.count)
    rows: List[RatioRow] = []
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            # map yields in submission order, which is instance order
            for row in pool.map(run_instance, [config] * config.count, indices):
                rows.append(row)
                if progress:
                    progress(row)
    else:
        for index in indices:
            row = run_instance(config, index)
            rows.append(row)
            if progress:
                progress(row)
    result = ExperimentResult(config=config, rows=tuple(rows))
    logger.info(
        "experiment: %d measured, %d skipped, %d violations",
        len(result.measured),
        len(result.skipped),
        len(result.violations),
    )
    return result
