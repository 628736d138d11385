"""Generation of cuts by nested bond sets, and the distinguishing/generation equivalence check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

from .blocks import EdgeBlockHierarchy, block_hierarchy, block_pairs
from .distinguishers import NestedSetReport, verify_nested_set
from .exceptions import OracleGuardExceeded, PreconditionError
from .graph import Multigraph, from_mask
from .separations import CutSeparation, OrientedSeparation, sup_inf

__all__ = [
    "MAX_ENUMERATION_VERTICES",
    "GenerationWitness",
    "GenerationFailure",
    "EquivalenceReport",
    "is_generated",
    "enumerate_cuts",
    "check_generation_equivalence",
]

MAX_ENUMERATION_VERTICES = 16


@dataclass(frozen=True)
class GenerationWitness:
    """Lattice expression for one orientation ``(X, Y)`` of ``target``.

    ``terms`` is a list of infima; the supremum of those infima is ``(X, Y)``.
    Each infimum is a tuple of oriented members. With ``mode="union"`` every
    term has exactly one member.
    """

    target: CutSeparation
    target_side: int
    terms: tuple[tuple[OrientedSeparation, ...], ...]

    def __bool__(self) -> bool:
        return True

    @property
    def members(self) -> tuple[OrientedSeparation, ...]:
        return tuple(dict.fromkeys(o for term in self.terms for o in term))

    def replay(self) -> OrientedSeparation:
        """Evaluate the expression with :func:`sup_inf`."""
        acc = None
        for term in self.terms:
            meet = term[0]
            for o in term[1:]:
                meet = sup_inf(meet, o)[1]
            acc = meet if acc is None else sup_inf(acc, meet)[0]
        return acc

    def to_dict(self) -> dict:
        return {
            "target": self.target.to_dict(),
            "orientation": sorted(from_mask(self.target_side)),
            "terms": [[sorted(from_mask(o.small)) for o in term] for term in self.terms],
        }


@dataclass(frozen=True)
class GenerationFailure:
    """Vertices of each orientation that no admissible expression can reach.

    ``uncovered`` refers to the reference side of ``target`` (the one holding
    vertex 0), ``uncovered_other`` to the opposite side.
    """

    target: CutSeparation
    uncovered: frozenset[int]
    uncovered_other: frozenset[int]

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"target": self.target.to_dict(), "uncovered": sorted(self.uncovered)}


def _oriented_sides(pool: list[CutSeparation], n: int) -> list[OrientedSeparation]:
    out = []
    for s in pool:
        out.append(OrientedSeparation(s.mask, s.other_mask, n))
        out.append(OrientedSeparation(s.other_mask, s.mask, n))
    return out


def is_generated(
    target: CutSeparation,
    separations: Iterable[CutSeparation],
    max_order: int,
    mode: Literal["lattice", "union"] = "lattice",
) -> GenerationWitness | GenerationFailure:
    """Decide whether the members of order at most ``max_order`` generate ``target``.

    ``mode="lattice"`` asks whether an orientation of ``target`` is a finite
    combination of suprema and infima of oriented members. Such expressions
    are exactly unions of intersections of member sides, so ``X`` is reachable
    iff for each ``x`` in ``X`` the intersection of all member sides holding
    ``x`` stays inside ``X``. The complement of a reachable side is reachable
    too, so one orientation decides both.

    ``mode="union"`` asks for ``X`` as a plain union of member sides: collect
    every side inside ``X``; adding more such sides never overshoots ``X``, so
    the maximal collection succeeds whenever any subfamily does.
    """
    pool = sorted(s for s in separations if s.order <= max_order)
    sides = _oriented_sides(pool, target.n)
    uncovered = []
    for x in (target.mask, target.other_mask):
        if mode == "union":
            terms = [(o,) for o in sides if o.small & ~x == 0]
            reached = 0
            for (o,) in terms:
                reached |= o.small
        elif mode == "lattice":
            terms, reached = [], 0
            rest = x
            while rest:
                v = (rest & -rest).bit_length() - 1
                term = tuple(o for o in sides if o.small >> v & 1)
                meet = (1 << target.n) - 1
                for o in term:
                    meet &= o.small
                if term and meet & ~x == 0:
                    if term not in terms:
                        terms.append(term)
                    reached |= meet
                    rest &= ~meet
                else:
                    rest &= ~(1 << v)
        else:
            raise PreconditionError(f"unknown mode {mode!r}")
        if reached == x:
            return GenerationWitness(target, x, tuple(terms))
        uncovered.append(from_mask(x & ~reached))
    return GenerationFailure(target, uncovered[0], uncovered[1])


def enumerate_cuts(g: Multigraph, max_size: int) -> list[CutSeparation]:
    """Every cut-separation of order at most ``max_size`` (sides need not be connected)."""
    if g.n > MAX_ENUMERATION_VERTICES:
        raise OracleGuardExceeded(f"cut enumeration limited to {MAX_ENUMERATION_VERTICES} vertices")
    out = []
    full = g.full_mask
    for rest in range(1 << (g.n - 1)):
        mask = (rest << 1) | 1
        if mask == full:
            continue
        order = g.cut_order(mask)
        if order <= max_size:
            out.append(CutSeparation(mask, g.n, order))
    return sorted(out)


@dataclass(frozen=True)
class EquivalenceReport:
    nested_report: NestedSetReport
    distinguishes: bool
    generates: bool
    k_max: int
    per_k: dict[int, tuple[int, int]]
    failures: tuple[GenerationFailure, ...] = ()
    witnesses: tuple[GenerationWitness, ...] = field(default=(), repr=False)

    @property
    def equivalent(self) -> bool:
        return self.distinguishes == self.generates

    @property
    def ok(self) -> bool:
        return self.distinguishes and self.generates

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "equivalent": self.equivalent,
            "efficiently_distinguishes": self.distinguishes,
            "generates_all_cuts": self.generates,
            "k_max": self.k_max,
            "per_k": {str(k): {"cuts": total, "generated": done} for k, (total, done) in sorted(self.per_k.items())},
            "failures": [f.to_dict() for f in self.failures],
            "nested_set": self.nested_report.to_dict(),
        }


def check_generation_equivalence(
    g: Multigraph,
    separations: Iterable[CutSeparation],
    k_max: int | None = None,
    hierarchy: EdgeBlockHierarchy | None = None,
    mode: Literal["lattice", "union"] = "lattice",
) -> EquivalenceReport:
    """Evaluate both sides of the distinguishing/generation equivalence for a nested bond set.

    ``k_max`` defaults to one more than the largest pair order; ``mode`` is
    passed to :func:`is_generated`.
    """
    seps = sorted(set(separations))
    hierarchy = hierarchy if hierarchy is not None else block_hierarchy(g)
    nested_report = verify_nested_set(g, seps, hierarchy)
    if not (nested_report.nested and nested_report.bonds):
        raise PreconditionError("the input must be a nested set of bonds")
    if k_max is None:
        k_max = 1 + max((p.order for p in block_pairs(hierarchy)), default=0)
    per_k: dict[int, list[int]] = {k: [0, 0] for k in range(1, k_max + 1)}
    failures, witnesses = [], []
    for cut in enumerate_cuts(g, k_max):
        verdict = is_generated(cut, seps, cut.order, mode)
        per_k[cut.order][0] += 1
        if verdict:
            per_k[cut.order][1] += 1
            witnesses.append(verdict)
        else:
            failures.append(verdict)
    return EquivalenceReport(
        nested_report=nested_report,
        distinguishes=nested_report.distinguishing and nested_report.efficient,
        generates=not failures,
        k_max=k_max,
        per_k={k: (a, b) for k, (a, b) in per_k.items()},
        failures=tuple(failures),
        witnesses=tuple(witnesses),
    )
