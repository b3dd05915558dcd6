"""
Core types and utilities for sparsecut.
"""

from .constants import KindTag, Relation, Sense, SupportMode, VarKind
from .errors import SparseCutError
from .models import BlockPartition, Cut, HullConstraint, Instance, Row
from .smilp import SmilpDocument, dump_smilp, load_instance, save_instance
from .utils import format_rational, parse_rational, write_to_file
from .validation import validate

__all__ = [
    "BlockPartition",
    "Cut",
    "HullConstraint",
    "Instance",
    "KindTag",
    "Relation",
    "Row",
    "Sense",
    "SmilpDocument",
    "SparseCutError",
    "SupportMode",
    "VarKind",
    "dump_smilp",
    "format_rational",
    "load_instance",
    "parse_rational",
    "save_instance",
    "validate",
    "write_to_file",
]
