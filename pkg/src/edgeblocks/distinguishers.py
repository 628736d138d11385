"""Efficient distinguishers of edge-block pairs and nested sets of them.

For every pair ``i`` of disjoint edge-blocks the family ``A_i`` holds all
bond-separations of minimum order ``|i|`` that put the two blocks on opposite
sides. :func:`build_nested_set` picks a pairwise nested set meeting every
``A_i``:

1. the *core*: members of the union ``A`` nested with every member of ``A``;
2. pairs in ascending order, each not yet met by the set receives a member
   of ``A_i`` nested with the current set, of minimum crossing number.

Uncrossing (:func:`uncross_cross_level`, :func:`uncross_same_level`) replaces a
crossing member by one of its corners and backs :func:`repair_candidate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal

from .blocks import BlockPair, EdgeBlockHierarchy, block_hierarchy, block_pairs
from .exceptions import InvariantError, PreconditionError
from .graph import Multigraph, require_connected
from .mincut import DEFAULT_CAP, _prune, enumerate_min_separations
from .separations import CutSeparation, is_bond, nested

__all__ = [
    "DistinguisherFamily",
    "Member",
    "NestedBondSet",
    "UncrossResult",
    "RepairStep",
    "NestedSetReport",
    "efficient_distinguishers",
    "uncross_cross_level",
    "uncross_same_level",
    "repair_candidate",
    "nested_core",
    "build_nested_set",
    "verify_nested_set",
]


def efficient_distinguishers(g: Multigraph, pair: BlockPair, cap: int = DEFAULT_CAP) -> list[CutSeparation]:
    """All bond-separations of order ``pair.order`` separating the pair's blocks."""
    found = enumerate_min_separations(g, pair.first.vertices, pair.second.vertices, cap=cap)
    for sep in found:
        if sep.order != pair.order:
            raise InvariantError("efficient distinguisher with unexpected order", pair=pair.to_dict(), separation=sep)
    if not found:
        raise InvariantError("no bond efficiently distinguishes a block pair", pair=pair.to_dict())
    return found


class DistinguisherFamily:
    """The families ``A_i`` of a connected graph, materialized per level on demand."""

    def __init__(self, g: Multigraph, hierarchy: EdgeBlockHierarchy | None = None, cap: int = DEFAULT_CAP):
        require_connected(g)
        self.graph = g
        self.hierarchy = hierarchy if hierarchy is not None else block_hierarchy(g)
        self.cap = cap
        self.pairs = block_pairs(self.hierarchy)
        self._members: dict[BlockPair, tuple[CutSeparation, ...]] = {}
        self._pools: dict[int, tuple[CutSeparation, ...]] = {}
        self._crossing: dict[tuple[CutSeparation, int], int] = {}

    @cached_property
    def levels(self) -> list[int]:
        return sorted({p.order for p in self.pairs})

    def pairs_at(self, k: int) -> list[BlockPair]:
        return [p for p in self.pairs if p.order == k]

    def members(self, pair: BlockPair) -> tuple[CutSeparation, ...]:
        if pair not in self._members:
            self._members[pair] = tuple(efficient_distinguishers(self.graph, pair, self.cap))
        return self._members[pair]

    def pool(self, k: int) -> tuple[CutSeparation, ...]:
        """Distinct members of ``A`` of order ``k``, canonically sorted."""
        if k not in self._pools:
            self._pools[k] = tuple(sorted({s for p in self.pairs_at(k) for s in self.members(p)}))
        return self._pools[k]

    def all_members(self) -> list[CutSeparation]:
        return [s for k in self.levels for s in self.pool(k)]

    def contains(self, pair: BlockPair, sep: CutSeparation) -> bool:
        """Whether ``sep`` lies in ``A_pair`` (decided without enumerating it)."""
        return (
            sep.order == pair.order
            and sep.separates(pair.first.mask, pair.second.mask)
            and is_bond(self.graph, sep)
        )

    def pairs_of(self, sep: CutSeparation) -> list[BlockPair]:
        return [p for p in self.pairs if self.contains(p, sep)]

    def crossing_number(self, sep: CutSeparation, k: int | None = None) -> int:
        """Number of order-``k`` members of ``A`` crossing ``sep`` (``k`` defaults to its order)."""
        k = sep.order if k is None else k
        key = (sep, k)
        if key not in self._crossing:
            self._crossing[key] = sum(1 for p in self.pool(k) if not nested(sep, p))
        return self._crossing[key]


@dataclass(frozen=True)
class UncrossResult:
    separation: CutSeparation
    tag: str
    pair: BlockPair
    replaces: Literal["low", "high", "i", "j"]
    crossing_number: int | None = None
    replaced_crossing_number: int | None = None


def _side_containing(sep: CutSeparation, vertices: int) -> tuple[int, int]:
    if vertices & ~sep.mask == 0:
        return sep.mask, sep.other_mask
    if vertices & ~sep.other_mask == 0:
        return sep.other_mask, sep.mask
    raise InvariantError("separation splits a vertex set it should not", separation=sep)


def uncross_cross_level(
    g: Multigraph, low: CutSeparation, low_pair: BlockPair, high: CutSeparation, high_pair: BlockPair
) -> UncrossResult:
    """Corner of ``low`` and ``high`` lying in ``A_high_pair`` and nested with ``low``.

    ``A`` is the side of ``low`` containing both blocks of ``high_pair`` and
    ``C`` the side of ``high`` containing its first block; the candidates are
    ``{A&C, B|D}`` and ``{A&D, B|C}``. When both qualify the canonically
    smaller one is returned.
    """
    if nested(low, high):
        raise PreconditionError("uncrossing needs crossing separations")
    if not low_pair.order < high_pair.order:
        raise PreconditionError("cross-level uncrossing needs |low| < |high|")
    beta, beta2 = high_pair.first.mask, high_pair.second.mask
    a, _ = _side_containing(low, beta | beta2)
    c, d = _side_containing(high, beta)
    found = []
    for tag, small, keep, other in (("A&C", a & c, beta, beta2), ("A&D", a & d, beta2, beta)):
        if not small:
            continue
        sep = CutSeparation.from_side(g, _prune(g, small, keep, other))
        if sep.order <= high_pair.order and sep.separates(keep, other) and is_bond(g, sep) and nested(sep, low):
            found.append((sep.sort_key, tag, sep))
    if not found:
        raise InvariantError(
            "no cross-level corner qualifies", low=low, high=high, low_order=low_pair.order, high_order=high_pair.order
        )
    _, tag, sep = min(found, key=lambda t: t[0])
    return UncrossResult(sep, tag, high_pair, "high")


def uncross_same_level(
    g: Multigraph,
    a_i: CutSeparation,
    pair_i: BlockPair,
    a_j: CutSeparation,
    pair_j: BlockPair,
    family: DistinguisherFamily,
    only: Literal["i", "j"] | None = None,
) -> UncrossResult:
    """Corner of two crossing same-order distinguishers with lower crossing number.

    The separation with the larger crossing number is called ``{C, D}`` and
    its pair supplies ``beta`` (in ``C``) and ``beta'`` (in ``D``). If the other
    separation ``{A, B}`` splits ``beta`` from ``beta'`` the candidates
    ``{A&C, B|D}`` and ``{B&D, A|C}`` both lie in the family of ``{C, D}``;
    otherwise ``A`` holds both, the remaining block of ``{A, B}``'s pair is
    placed in ``B&D`` and the two candidates lie in one family each.

    A candidate qualifies if it has order ``k``, lies in its family and has a
    strictly lower crossing number than the separation it would replace. The
    lowest crossing number wins, then canonical order. ``only`` restricts the
    result to replacements of ``a_i`` (``"i"``) or of ``a_j`` (``"j"``).
    """
    k = pair_i.order
    if pair_j.order != k or a_i.order != k or a_j.order != k:
        raise PreconditionError("same-level uncrossing needs equal orders")
    if nested(a_i, a_j):
        raise PreconditionError("uncrossing needs crossing separations")
    cr_i, cr_j = family.crossing_number(a_i, k), family.crossing_number(a_j, k)
    if cr_i <= cr_j:
        (sa, pa, na), (sb, pb, nb) = (a_i, pair_i, "i"), (a_j, pair_j, "j")
    else:
        (sa, pa, na), (sb, pb, nb) = (a_j, pair_j, "j"), (a_i, pair_i, "i")
    beta, beta2 = pb.first.mask, pb.second.mask
    c, d = _side_containing(sb, beta)
    if sa.separates(beta, beta2):
        a, b = _side_containing(sa, beta)
        candidates = (("A&C", a & c, pb, sb, nb), ("B&D", b & d, pb, sb, nb))
    else:
        a, b = _side_containing(sa, beta | beta2)
        third = pa.second.mask if pa.first.mask & a == pa.first.mask else pa.first.mask
        if third & ~b:
            raise InvariantError("block pair not split by its own distinguisher", separation=sa)
        if third & ~(b & c) == 0:
            c, d = d, c
        candidates = (("A&C", a & c, pb, sb, nb), ("B&D", b & d, pa, sa, na))
    found = []
    for tag, small, pair, parent, name in candidates:
        if only is not None and name != only:
            continue
        if not small or small == (1 << g.n) - 1:
            continue
        sep = CutSeparation.from_side(g, small)
        if not family.contains(pair, sep):
            continue
        cr, parent_cr = family.crossing_number(sep, k), family.crossing_number(parent, k)
        if cr < parent_cr:
            found.append(((cr, sep.sort_key), UncrossResult(sep, tag, pair, name, cr, parent_cr)))
    if not found:
        raise InvariantError("no same-level corner lowers the crossing number", a_i=a_i, a_j=a_j, k=k, only=only)
    return min(found, key=lambda t: t[0])[1]


@dataclass(frozen=True)
class RepairStep:
    kind: Literal["cross-level", "same-level"]
    witness: CutSeparation
    before: CutSeparation
    after: CutSeparation
    tag: str
    crossings_before: int
    crossings_after: int
    crossing_number_before: int
    crossing_number_after: int


def repair_candidate(
    g: Multigraph,
    family: DistinguisherFamily,
    pair: BlockPair,
    start: CutSeparation,
    current: Iterable[CutSeparation],
) -> tuple[CutSeparation, list[RepairStep]]:
    """Uncross ``start`` against ``current`` until it is nested with all of it.

    Lower-order witnesses are handled first, then same-order ones; within a
    kind the canonically smallest witness goes first. Every step strictly
    lowers the number of members of ``current`` crossing the candidate, and a
    same-order step also strictly lowers its crossing number; both are
    checked. Same-order witnesses must be minimum-crossing choices for their
    pairs (as in :func:`build_nested_set`), else the repair may fail.
    """
    current = sorted(set(current))
    candidate = start
    steps: list[RepairStep] = []
    while True:
        crossing = [s for s in current if not nested(candidate, s)]
        if not crossing:
            return candidate, steps
        lower = [s for s in crossing if s.order < pair.order]
        same = [s for s in crossing if s.order == pair.order]
        before_cr = family.crossing_number(candidate, pair.order)
        if lower:
            witness = lower[0]
            witness_pair = _some_pair(family, witness)
            result = uncross_cross_level(g, witness, witness_pair, candidate, pair)
            kind = "cross-level"
        elif same:
            witness = same[0]
            result = uncross_same_level(g, candidate, pair, witness, _some_pair(family, witness), family, only="i")
            kind = "same-level"
        else:
            raise InvariantError("candidate crosses a higher-order member", candidate=candidate, witness=crossing[0])
        after = result.separation
        after_count = sum(1 for s in current if not nested(after, s))
        after_cr = family.crossing_number(after, pair.order)
        if after_count >= len(crossing) or (kind == "same-level" and after_cr >= before_cr):
            raise InvariantError("repair step did not decrease its potential", before=candidate, after=after)
        steps.append(RepairStep(kind, witness, candidate, after, result.tag, len(crossing), after_count, before_cr, after_cr))
        candidate = after


def _some_pair(family: DistinguisherFamily, sep: CutSeparation) -> BlockPair:
    pairs = family.pairs_of(sep)
    if not pairs:
        raise InvariantError("separation is not an efficient distinguisher", separation=sep)
    return pairs[0]


@dataclass(frozen=True)
class Member:
    """One separation of a nested bond set and how it was chosen."""

    separation: CutSeparation
    phase: Literal["core", "completion", "repair", "minimal"]
    pairs: tuple[BlockPair, ...] = ()
    lineage: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            **self.separation.to_dict(),
            "phase": self.phase,
            "lineage": list(self.lineage),
            "distinguishes": [p.to_dict() for p in self.pairs],
        }


@dataclass(frozen=True)
class NestedBondSet:
    n: int
    members: tuple[Member, ...]
    repairs: tuple[RepairStep, ...] = field(default=(), compare=False, repr=False)

    @cached_property
    def separations(self) -> frozenset[CutSeparation]:
        return frozenset(m.separation for m in self.members)

    @cached_property
    def core(self) -> frozenset[CutSeparation]:
        return frozenset(m.separation for m in self.members if m.phase == "core")

    def below(self, k: int) -> frozenset[CutSeparation]:
        """Members of order less than ``k``."""
        return frozenset(s for s in self.separations if s.order < k)

    def to_dict(self) -> dict:
        return {"vertices": self.n, "members": [m.to_dict() for m in self.members]}


def nested_core(family: DistinguisherFamily) -> list[CutSeparation]:
    """Members of ``A`` nested with every member of ``A``, canonically sorted."""
    everything = family.all_members()
    return [a for a in everything if all(nested(a, b) for b in everything)]


def build_nested_set(
    g: Multigraph,
    family: DistinguisherFamily | None = None,
    cap: int = DEFAULT_CAP,
    strategy: Literal["greedy", "minimal"] = "greedy",
) -> NestedBondSet:
    """Nested set of bonds meeting every ``A_i``.

    ``strategy="greedy"`` adds one member per pair that is not yet met (after
    the core). ``strategy="minimal"`` instead adds, level by level, every
    member of minimum crossing number among those nested with the lower
    levels; that set depends on nothing but the graph's structure, so it
    commutes with vertex relabelling.
    """
    family = family if family is not None else DistinguisherFamily(g, cap=cap)
    core = nested_core(family)
    chosen: dict[CutSeparation, tuple[str, tuple[str, ...]]] = {s: ("core", ()) for s in core}
    repairs: list[RepairStep] = []

    if strategy == "greedy":
        for pair in family.pairs:
            if any(family.contains(pair, s) for s in chosen):
                continue
            eligible = [a for a in family.members(pair) if all(nested(a, s) for s in chosen)]
            if eligible:
                best = min(eligible, key=lambda a: (family.crossing_number(a), a.sort_key))
                chosen[best] = ("completion", ())
            else:
                best, steps = repair_candidate(g, family, pair, min(family.members(pair)), chosen)
                repairs.extend(steps)
                chosen[best] = ("repair", tuple(f"{s.kind}:{s.tag}" for s in steps))
    elif strategy == "minimal":
        for k in family.levels:
            lower = [s for s in chosen if s.order < k]
            level = {}
            for pair in family.pairs_at(k):
                eligible = [a for a in family.members(pair) if all(nested(a, s) for s in lower)]
                if not eligible:
                    raise InvariantError("no distinguisher nested with lower levels", pair=pair.to_dict())
                low = min(family.crossing_number(a) for a in eligible)
                level.update((a, ("minimal", ())) for a in eligible if family.crossing_number(a) == low)
            for s, how in level.items():
                chosen.setdefault(s, how)
    else:
        raise PreconditionError(f"unknown strategy {strategy!r}")

    members = tuple(
        Member(s, phase, tuple(family.pairs_of(s)), lineage) for s, (phase, lineage) in sorted(chosen.items())
    )
    result = NestedBondSet(g.n, members, tuple(repairs))
    report = verify_nested_set(g, result.separations, family.hierarchy)
    if not report.ok:
        raise InvariantError("constructed set fails verification", report=report.to_dict())
    return result


@dataclass(frozen=True)
class NestedSetReport:
    nested: bool
    bonds: bool
    distinguishing: bool
    efficient: bool
    crossing_witnesses: tuple[tuple[CutSeparation, CutSeparation], ...] = ()
    non_bonds: tuple[CutSeparation, ...] = ()
    undistinguished: tuple[BlockPair, ...] = ()
    inefficient: tuple[tuple[BlockPair, CutSeparation], ...] = ()
    citations: tuple[tuple[BlockPair, CutSeparation], ...] = field(default=(), repr=False)

    @property
    def ok(self) -> bool:
        return self.nested and self.bonds and self.distinguishing and self.efficient

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "nested": self.nested,
            "bonds": self.bonds,
            "distinguishing": self.distinguishing,
            "efficient": self.efficient,
            "crossing_witnesses": [[a.to_dict(), b.to_dict()] for a, b in self.crossing_witnesses],
            "non_bonds": [s.to_dict() for s in self.non_bonds],
            "undistinguished": [p.to_dict() for p in self.undistinguished],
            "inefficient": [{"pair": p.to_dict(), "best": s.to_dict()} for p, s in self.inefficient],
        }


def verify_nested_set(
    g: Multigraph, separations: Iterable[CutSeparation], hierarchy: EdgeBlockHierarchy | None = None
) -> NestedSetReport:
    """Check that a set of bonds is nested and efficiently distinguishes all edge-blocks."""
    hierarchy = hierarchy if hierarchy is not None else block_hierarchy(g)
    seps = sorted(set(separations))
    crossing = tuple((a, b) for i, a in enumerate(seps) for b in seps[i + 1:] if not nested(a, b))
    non_bonds = tuple(s for s in seps if not is_bond(g, s))
    undistinguished, inefficient, citations = [], [], []
    for pair in block_pairs(hierarchy):
        hits = [s for s in seps if s.separates(pair.first.mask, pair.second.mask)]
        if not hits:
            undistinguished.append(pair)
            continue
        best = min(hits, key=lambda s: (s.order, s.sort_key))
        if best.order != pair.order:
            inefficient.append((pair, best))
        else:
            citations.append((pair, best))
    return NestedSetReport(
        nested=not crossing,
        bonds=not non_bonds,
        distinguishing=not undistinguished,
        efficient=not inefficient,
        crossing_witnesses=crossing,
        non_bonds=non_bonds,
        undistinguished=tuple(undistinguished),
        inefficient=tuple(inefficient),
        citations=tuple(citations),
    )
