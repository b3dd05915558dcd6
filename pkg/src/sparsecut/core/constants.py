"""
Constants used throughout the sparsecut package.
"""

import enum
from fractions import Fraction
from typing import List


class Sense(str, enum.Enum):
    """Optimization direction of an instance."""

    MAXIMIZE = "max"
    MINIMIZE = "min"


class Relation(str, enum.Enum):
    """Relation of a constraint row."""

    LE = "<="
    GE = ">="
    EQ = "="


class VarKind(str, enum.Enum):
    """Variable domain."""

    INTEGER = "integer"
    CONTINUOUS = "continuous"


class KindTag(str, enum.Enum):
    """Structural class of an instance."""

    PACKING = "packing"  # Ax <= b, A, b, c >= 0
    COVERING = "covering"  # Ax >= b, A, b, c >= 0
    GENERAL = "general"  # arbitrary A, b; c >= 0


class Axis(str, enum.Enum):
    """Index axis a block partition refers to."""

    COLUMNS = "columns"
    ROWS = "rows"


class GraphKind(str, enum.Enum):
    """Interaction graph flavour."""

    PACKING = "packing"
    COVERING = "covering"


class LpStatus(str, enum.Enum):
    """Outcome of an LP or MILP solve."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class BoundKind(str, enum.Enum):
    """Which bound a report carries."""

    PACKING_ETA = "packing_eta"
    COVERING_ETA_BAR = "covering_eta_bar"
    GENERAL_DENSITY = "general_density"
    BROOKS = "brooks"
    TREE_CLOSED_FORM = "tree_closed_form"
    CYCLE_CLOSED_FORM = "cycle_closed_form"


class Termination(str, enum.Enum):
    """Why the cut-closure estimator stopped."""

    INTEGRAL_SOLUTION = "integral_solution"
    STALLED_ALL_SUPPORTS = "stalled_all_supports"
    CAP_HIT = "cap_hit"


class SignRule(str, enum.Enum):
    """Sign restriction on cut coefficients in <= form."""

    NONNEGATIVE = "nonnegative"  # packing
    NONPOSITIVE = "nonpositive"  # covering, i.e. alpha >= 0 in >= form
    FREE = "free"  # general


class SupportMode(str, enum.Enum):
    """How cut supports are derived from the interaction graph."""

    SUPER_SPARSE = "ss"
    NATURAL_SPARSE = "ns"
    CUSTOM = "custom"


class TightFamily(str, enum.Enum):
    """Named tight-instance families."""

    THREE_CYCLE = "3cycle"
    STAR_SS = "star_ss"
    TREE_NS = "tree_ns"
    CYCLE_NS = "cycle_ns"
    COVER = "cover"
    GENERAL_SS = "general_ss"
    GENERAL_NS = "general_ns"
    SSC = "ssc"
    DSC = "dsc"


class ComparisonMode(str, enum.Enum):
    """How a tight family is checked against its closed forms."""

    EXACT = "exact"
    CERTIFICATE = "certificate"


# SMILP v1 vartype letters
VARTYPE_BINARY = "B"
VARTYPE_INTEGER = "I"
VARTYPE_CONTINUOUS = "C"

SMILP_HEADER = "SMILP 1"
DEFAULT_EPSILON = Fraction(1, 10**6)
DEFAULT_POINT_CAP = 2**24
DEFAULT_NODE_CAP = 14
DEFAULT_STABLE_SET_CAP = 200_000
DEFAULT_DENSITY_LIST_CAP = 20
DEFAULT_PLANES_CAP = 81
PX_CHOICES: List[Fraction] = [Fraction(k, 5) for k in (1, 2, 3, 4)]
CSV_HEADER: List[str] = ["id", "zI", "zClosure", "ratio", "bound", "ok"]
TRACE_HEADER: List[str] = ["round", "support_id", "z_value", "violation", "cut_id"]

SENSE_LIST: List[str] = [s.value for s in Sense]
KIND_LIST: List[str] = [k.value for k in KindTag]
FAMILY_LIST: List[str] = [f.value for f in TightFamily]
