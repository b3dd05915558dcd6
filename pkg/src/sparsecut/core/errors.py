"""
Exceptions raised by sparsecut.
"""

from typing import Optional, Sequence


class SparseCutError(Exception):
    """Base class for every error raised by the package."""


class InstanceFormatError(SparseCutError, ValueError):
    """An SMILP file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InvariantViolationError(SparseCutError, ValueError):
    """An instance does not satisfy the invariants of its kind tag."""

    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class PartitionMismatchError(SparseCutError, ValueError):
    """A block partition does not fit the instance or axis it is used with."""


class CapExceededError(SparseCutError):
    """An exhaustive procedure would exceed its configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} size {size} exceeds cap {cap}")


class NotATreeError(SparseCutError, ValueError):
    """A tree-only procedure received a graph that is not a tree."""


class DisconnectedGraphError(SparseCutError, ValueError):
    """A connected graph was required."""


class NoCoveringSubListError(SparseCutError, ValueError):
    """The support list does not cover the node set."""


class UnboundedSeparationError(SparseCutError):
    """The inner MILP of cut generation is unbounded (missing variable bounds)."""


class InfeasibleInstanceError(SparseCutError):
    """The integer hull of the instance is empty."""
