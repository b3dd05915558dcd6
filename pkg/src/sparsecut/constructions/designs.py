"""
Affine designs and planes partitions used by the tight constructions.
"""

import itertools
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from sparsecut.core.config import get_settings
from sparsecut.core.errors import CapExceededError

Family = Tuple[FrozenSet[int], ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _coerce_families(value) -> Tuple[Family, ...]:
    return tuple(tuple(frozenset(int(i) for i in s) for s in fam) for fam in value)


def _partitions(family: Family, ground: int) -> bool:
    seen: set = set()
    for s in family:
        if seen & s:
            return False
        seen |= s
    return seen == set(range(ground))


class AffineDesign(BaseModel):
    """n partitions of ``range(n*n)`` into n-sets; sets from different
    partitions share at most one element."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Order of the design")
    families: Tuple[Family, ...] = Field(..., description="F_1..F_n")

    @field_validator("families", mode="before")
    @classmethod
    def _coerce(cls, value):
        return _coerce_families(value)

    @model_validator(mode="after")
    def _check_design(self):
        n = self.n
        if len(self.families) != n:
            raise ValueError(f"expected {n} families, got {len(self.families)}")
        for k, fam in enumerate(self.families):
            if len(fam) != n or any(len(s) != n for s in fam):
                raise ValueError(f"family {k + 1} must hold {n} sets of size {n}")
            if not _partitions(fam, n * n):
                raise ValueError(f"family {k + 1} does not partition the ground set")
        for (i, fi), (j, fj) in itertools.combinations(enumerate(self.families), 2):
            for a in fi:
                for b in fj:
                    if len(a & b) > 1:
                        raise ValueError(f"families {i + 1} and {j + 1} meet in more than one point")
        return self

    def set_of(self, family: int, element: int) -> int:
        """Index of the set of ``families[family]`` holding ``element``."""
        for k, s in enumerate(self.families[family]):
            if element in s:
                return k
        raise KeyError(element)

    def cross_pairs(self, family: int) -> List[Tuple[int, int]]:
        """Pairs ``a < b`` lying in different sets of one family."""
        owner = {e: k for k, s in enumerate(self.families[family]) for e in s}
        return [
            (a, b)
            for a, b in itertools.combinations(range(self.n * self.n), 2)
            if owner[a] != owner[b]
        ]


def make_affine_design(n: int) -> AffineDesign:
    """
    Parallel classes of lines of the affine plane over Z_n.

    Point ``(x, y)`` is element ``x*n + y``. The first family is the class of
    vertical lines ``x = b``; family ``s + 2`` is the class ``y = s*x + b``
    for slopes ``s = 0..n-2``.
    Args:
        n: A prime
    Returns:
        The verified design
    """
    if not is_prime(n):
        raise ValueError(f"affine designs are built for prime orders, got {n}")
    vertical = [[x * n + y for y in range(n)] for x in range(n)]
    families = [vertical]
    for s in range(n - 1):
        lines = [[x * n + (s * x + b) % n for x in range(n)] for b in range(n)]
        families.append(lines)
    return AffineDesign(n=n, families=families)


class PlanesPartition(BaseModel):
    """n partitions of ``range(n**n)`` by the coordinates of ``[n]^n``."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Dimension and alphabet size")
    families: Tuple[Family, ...] = Field(..., description="G^1..G^n")

    @field_validator("families", mode="before")
    @classmethod
    def _coerce(cls, value):
        return _coerce_families(value)

    @model_validator(mode="after")
    def _check_planes(self):
        n, ground = self.n, self.n**self.n
        if len(self.families) != n:
            raise ValueError(f"expected {n} families, got {len(self.families)}")
        for k, fam in enumerate(self.families):
            if len(fam) != n or any(len(s) != ground // n for s in fam):
                raise ValueError(f"family {k + 1} must hold {n} sets of size {ground // n}")
            if not _partitions(fam, ground):
                raise ValueError(f"family {k + 1} does not partition the ground set")
        for selection in itertools.product(*self.families):
            if not frozenset.intersection(*selection):
                raise ValueError("a selection of one set per family has empty intersection")
        return self

    @property
    def ground_size(self) -> int:
        return self.n**self.n

    def index(self, u: Sequence[int]) -> int:
        """Mixed-radix bijection ``[n]^n -> range(n**n)`` (0-based coordinates)."""
        return sum(v * self.n ** (self.n - 1 - i) for i, v in enumerate(u))

    def coordinates(self, g: int) -> Tuple[int, ...]:
        digits = []
        for _ in range(self.n):
            g, r = divmod(g, self.n)
            digits.append(r)
        return tuple(reversed(digits))

    def covers(self, chosen: Sequence[Tuple[int, int]]) -> bool:
        """Whether the sets ``(family, index)`` in ``chosen`` cover the ground set."""
        union: set = set()
        for i, j in chosen:
            union |= self.families[i][j]
        return len(union) == self.ground_size

    def full_family(self, chosen: Sequence[Tuple[int, int]]) -> Optional[int]:
        """A family all of whose sets are in ``chosen``, if any."""
        picked: Dict[int, set] = {}
        for i, j in chosen:
            picked.setdefault(i, set()).add(j)
        for i in sorted(picked):
            if len(picked[i]) == self.n:
                return i
        return None


def make_planes_partition(n: int, cap: Optional[int] = None) -> PlanesPartition:
    """
    ``G^i_j = {g(u) : u_i = j}`` for the mixed-radix bijection g.

    Args:
        n: At least 2
        cap: Maximum ``n**n``, defaults to ``SPARSECUT_PLANES_CAP``
    Returns:
        The verified planes partition
    """
    if n < 2:
        raise ValueError(f"planes partitions need n >= 2, got {n}")
    cap = get_settings().planes_cap if cap is None else cap
    ground = n**n
    if ground > cap:
        raise CapExceededError("planes ground set", ground, cap)
    radix = [n ** (n - 1 - i) for i in range(n)]
    families = []
    for i in range(n):
        families.append(
            [[g for g in range(ground) if (g // radix[i]) % n == j] for j in range(n)]
        )
    return PlanesPartition(n=n, families=families)
