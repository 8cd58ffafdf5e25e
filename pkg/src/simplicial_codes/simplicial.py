"""Simplicial complexes in F_2^m stored as bitmasks.

Coordinate i of [m] (1-based) is bit i-1 of a mask.  Subsets of [m] and
vectors of F_2^m are the same thing under this convention, so most functions
accept either a mask, a :class:`SupportVector`, or an iterable of 1-based
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import UsageError


def subset_mask(subset: Iterable[int], m: int | None = None) -> int:
    """Mask of a subset of [m] given by 1-based coordinates."""
    mask = 0
    for i in subset:
        i = int(i)
        if i < 1 or (m is not None and i > m):
            raise UsageError(f"coordinate {i} is outside [1..{m}]")
        mask |= 1 << (i - 1)
    return mask


def mask_to_subset(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def as_mask(x, m: int | None = None) -> int:
    """Coerce a mask, SupportVector or coordinate iterable to a mask."""
    if isinstance(x, SupportVector):
        return x.bits
    if isinstance(x, int):
        if x < 0 or (m is not None and x >> m):
            raise UsageError(f"mask {x:#b} does not fit in {m} bits")
        return x
    return subset_mask(x, m)


def popcount(x: int) -> int:
    return bin(x).count("1")


def submasks(mask: int) -> list[int]:
    """All submasks of ``mask`` (the down-set of one facet), in increasing order."""
    out = []
    s = mask
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    out.reverse()
    return out


@dataclass(frozen=True, order=True)
class SupportVector:
    """A vector of F_2^m, equivalently a subset of [m]."""

    bits: int
    m: int

    def __post_init__(self):
        if self.m < 0 or not 0 <= self.bits < (1 << self.m):
            raise UsageError(f"{self.bits:#b} is not a vector of F_2^{self.m}")

    @classmethod
    def from_subset(cls, subset: Iterable[int], m: int) -> SupportVector:
        return cls(subset_mask(subset, m), m)

    @classmethod
    def from_string(cls, s: str) -> SupportVector:
        """Parse a bit string whose first character is coordinate 1."""
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise UsageError(f"not a bit string: {s!r}")
        return cls(int(s[::-1], 2), len(s))

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> tuple[int, ...]:
        return mask_to_subset(self.bits)

    def covers(self, other: SupportVector) -> bool:
        """True when Supp(other) is a subset of Supp(self)."""
        return other.bits & ~self.bits == 0

    def __str__(self):
        return "".join(str((self.bits >> i) & 1) for i in range(self.m))


def vector_string(bits: int, m: int) -> str:
    return "".join(str((bits >> i) & 1) for i in range(m))


def _maximal_elements(masks: Iterable[int]) -> frozenset[int]:
    masks = set(masks)
    return frozenset(f for f in masks if not any(g != f and f & ~g == 0 for g in masks))


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    maximal: frozenset[int]
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return as_mask(x) in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def vectors(self) -> list[SupportVector]:
        return [SupportVector(b, self.m) for b in self.members]

    def facets(self) -> list[SupportVector]:
        return [SupportVector(b, self.m) for b in sorted(self.maximal)]

    def complement(self) -> tuple[int, ...]:
        """Members of F_2^m outside the complex, in increasing order."""
        inside = self._member_set
        return tuple(x for x in range(1 << self.m) if x not in inside)


def complex_from_maximal(facets: Iterable, m: int | None = None) -> SimplicialComplex:
    """Downward closure of ``facets``; redundant (covered) facets are absorbed."""
    facets = list(facets)
    if not facets:
        raise UsageError("a simplicial complex needs at least one facet")
    if m is None:
        dims = {f.m for f in facets if isinstance(f, SupportVector)}
        if len(dims) != 1:
            raise UsageError("ambient dimension m is required (or inconsistent)")
        m = dims.pop()
    masks = [as_mask(f, m) for f in facets]
    maximal = _maximal_elements(masks)
    members = set()
    for f in maximal:
        members.update(submasks(f))
    return SimplicialComplex(m, maximal, tuple(sorted(members)))


def simplex_of(L: Iterable[int] | int, m: int) -> SimplicialComplex:
    """Delta_L = {w in F_2^m : Supp(w) is a subset of L}."""
    mask = as_mask(L, m)
    return SimplicialComplex(m, frozenset([mask]), tuple(submasks(mask)))


def generating_function(delta: SimplicialComplex, y) -> int:
    """H_Delta(y) by inclusion-exclusion over nonempty sets of facets.

    ``y`` holds one integer per coordinate.  The cost is exponential in the
    number of facets, which is fine for the handful of facets used here.
    """
    y = list(y)
    if len(y) != delta.m:
        raise UsageError(f"expected {delta.m} values, got {len(y)}")
    facets = sorted(delta.maximal)
    total = 0
    for r in range(1, len(facets) + 1):
        sign = 1 if r % 2 else -1
        for group in combinations(facets, r):
            common = (1 << delta.m) - 1
            for f in group:
                common &= f
            term = 1
            for i in range(delta.m):
                if (common >> i) & 1:
                    term *= 1 + y[i]
            total += sign * term
    return total


def phi(x, Y) -> int:
    """1 if Supp(x) misses Y, else 0."""
    return int(as_mask(x) & as_mask(Y) == 0)


def chi(x, P: Iterable) -> int:
    """Character sum over P: sum of (-1)^(x . y) for y in P."""
    xm = as_mask(x)
    total = 0
    for y in P:
        total += -1 if popcount(xm & as_mask(y)) & 1 else 1
    return total
