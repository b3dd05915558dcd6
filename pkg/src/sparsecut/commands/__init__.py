"""
Commands for the sparsecut CLI.
"""

from .bounds import bounds
from .closure import closure
from .db import db_cli
from .experiment import experiment
from .gen import gen
from .tight import tight

__all__ = [
    "bounds",
    "closure",
    "db_cli",
    "experiment",
    "gen",
    "tight",
]
