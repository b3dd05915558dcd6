"""
Cut-closure estimation by iterated separation.
"""

from .estimate import estimate_zcut
from .models import ClosureRun, EstimatorConfig, TraceEntry
from .separation import generate_cut

__all__ = [
    "ClosureRun",
    "EstimatorConfig",
    "TraceEntry",
    "estimate_zcut",
    "generate_cut",
]
