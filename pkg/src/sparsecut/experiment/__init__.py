"""
Batches of random instances measured against their theoretical bounds.
"""

from .models import ExperimentConfig, ExperimentResult, GraphSummary, RatioRow
from .runner import graph_label, run_experiment, run_instance

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "GraphSummary",
    "RatioRow",
    "graph_label",
    "run_experiment",
    "run_instance",
]
