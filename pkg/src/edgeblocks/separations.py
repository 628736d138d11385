"""Cut-separations of a graph: nestedness, corners, orientations, crossing numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .exceptions import PreconditionError
from .graph import Multigraph, from_mask, induces_connected, set_key, to_mask

__all__ = [
    "CutSeparation",
    "OrientedSeparation",
    "Corner",
    "nested",
    "crosses",
    "corners",
    "k_crossing_number",
    "sup_inf",
    "is_bond",
]

CORNER_TAGS = ("A&C", "A&D", "B&D", "B&C")


@dataclass(frozen=True)
class CutSeparation:
    """Bipartition ``{A, B}`` of ``0..n-1`` stored by its side containing vertex 0.

    Equality and hashing use only ``(n, mask)``; ``order`` is cached at
    construction and never recounted.
    """

    mask: int
    n: int
    order: int = field(compare=False)

    def __post_init__(self):
        full = (1 << self.n) - 1
        if not self.mask & 1 or self.mask & ~full or self.mask == full:
            raise PreconditionError("reference side must contain vertex 0 and be a proper subset")

    @classmethod
    def from_side(cls, g: Multigraph, side: int | Iterable[int]) -> "CutSeparation":
        """Separation of ``g`` with ``side`` as one of its two sides (mask or iterable)."""
        mask = side if isinstance(side, int) else to_mask(side)
        full = g.full_mask
        if mask == 0 or mask & full == full or mask & ~full:
            raise PreconditionError("both sides of a cut-separation must be non-empty")
        if not mask & 1:
            mask = full & ~mask
        return cls(mask, g.n, g.cut_order(mask))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def other_mask(self) -> int:
        return self.full & ~self.mask

    @cached_property
    def side(self) -> frozenset[int]:
        return from_mask(self.mask)

    @cached_property
    def other(self) -> frozenset[int]:
        return from_mask(self.other_mask)

    @cached_property
    def sort_key(self):
        return set_key(self.side)

    def __lt__(self, other: "CutSeparation") -> bool:
        return self.sort_key < other.sort_key

    def separates(self, first: int, second: int) -> bool:
        """True if the vertex masks ``first`` and ``second`` lie on opposite sides."""
        a, b = self.mask, self.other_mask
        return (first & ~a == 0 and second & ~b == 0) or (first & ~b == 0 and second & ~a == 0)

    def oriented(self, small: int) -> "OrientedSeparation":
        """Orientation ``(X, Y)`` whose first side contains the vertex mask ``small``."""
        if small & ~self.mask == 0:
            return OrientedSeparation(self.mask, self.other_mask, self.n)
        if small & ~self.other_mask == 0:
            return OrientedSeparation(self.other_mask, self.mask, self.n)
        raise PreconditionError("vertex set is split by the separation")

    def to_dict(self) -> dict:
        return {"side": sorted(self.side), "order": self.order}

    def __repr__(self) -> str:
        return f"CutSeparation({sorted(self.side)}|{sorted(self.other)}, order={self.order})"


def nested(s1: CutSeparation, s2: CutSeparation) -> bool:
    if s1.n != s2.n:
        raise PreconditionError("separations of different vertex sets")
    a, b, c, d = s1.mask, s1.other_mask, s2.mask, s2.other_mask
    return not (a & ~c) or not (a & ~d) or not (b & ~c) or not (b & ~d)


def crosses(s1: CutSeparation, s2: CutSeparation) -> bool:
    return not nested(s1, s2)


def is_bond(g: Multigraph, s: CutSeparation) -> bool:
    return induces_connected(g, s.mask) and induces_connected(g, s.other_mask)


@dataclass(frozen=True)
class Corner:
    """A corner of two crossing separations; ``tag`` names the intersection forming its small side."""

    tag: str
    separation: CutSeparation


def corners(g: Multigraph, s1: CutSeparation, s2: CutSeparation) -> list[Corner]:
    """Valid corners of two crossing separations, ``A, B`` from ``s1`` and ``C, D`` from ``s2``.

    ``A`` and ``C`` are the reference sides (those containing vertex 0).
    Corners whose intersection side is empty are omitted.
    """
    if nested(s1, s2):
        raise PreconditionError("corners are only defined for crossing separations")
    a, b, c, d = s1.mask, s1.other_mask, s2.mask, s2.other_mask
    out = []
    for tag, small in zip(CORNER_TAGS, (a & c, a & d, b & d, b & c)):
        if small:
            out.append(Corner(tag, CutSeparation.from_side(g, small)))
    return out


def k_crossing_number(s: CutSeparation, pool: Iterable[CutSeparation], k: int) -> int:
    """Number of order-``k`` members of ``pool`` that cross ``s``."""
    return sum(1 for p in pool if p.order == k and not nested(s, p))


@dataclass(frozen=True)
class OrientedSeparation:
    """Ordered pair ``(A, B)`` of vertex masks over ``0..n-1``.

    Results of suprema and infima may have an empty side; ``valid`` reports
    whether the pair is an orientation of a cut-separation.
    """

    small: int
    big: int
    n: int

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int], n: int) -> "OrientedSeparation":
        return cls(to_mask(a), to_mask(b), n)

    @property
    def valid(self) -> bool:
        full = (1 << self.n) - 1
        return bool(self.small) and bool(self.big) and self.small & self.big == 0 and self.small | self.big == full

    @property
    def inverse(self) -> "OrientedSeparation":
        return OrientedSeparation(self.big, self.small, self.n)

    def __le__(self, other: "OrientedSeparation") -> bool:
        return self.small & ~other.small == 0 and other.big & ~self.big == 0

    def __ge__(self, other: "OrientedSeparation") -> bool:
        return other <= self

    def sup(self, other: "OrientedSeparation") -> "OrientedSeparation":
        return OrientedSeparation(self.small | other.small, self.big & other.big, self.n)

    def inf(self, other: "OrientedSeparation") -> "OrientedSeparation":
        return OrientedSeparation(self.small & other.small, self.big | other.big, self.n)

    def unoriented(self, g: Multigraph) -> CutSeparation:
        if not self.valid:
            raise PreconditionError("not an orientation of a cut-separation")
        return CutSeparation.from_side(g, self.small)

    def __repr__(self) -> str:
        return f"({sorted(from_mask(self.small))}, {sorted(from_mask(self.big))})"


def sup_inf(o1: OrientedSeparation, o2: OrientedSeparation) -> tuple[OrientedSeparation, OrientedSeparation]:
    """Supremum ``(A|A', B&B')`` and infimum ``(A&A', B|B')``; check ``.valid`` on each."""
    if o1.n != o2.n:
        raise PreconditionError("separations of different vertex sets")
    return o1.sup(o2), o1.inf(o2)
