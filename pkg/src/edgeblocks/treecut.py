"""Tree-cut decompositions whose fundamental cuts are a given nested set of bonds."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .blocks import EdgeBlockHierarchy, block_hierarchy, k_blocks
from .exceptions import InvariantError, PreconditionError
from .graph import Multigraph, from_mask, set_key, to_mask
from .separations import CutSeparation, is_bond, nested

__all__ = [
    "TreeCutDecomposition",
    "KBlockCheck",
    "build_tree_cut",
    "fundamental_cuts",
    "decomposition_problems",
    "verify_k_block_decomposition",
]


@dataclass(frozen=True)
class TreeCutDecomposition:
    """A rooted tree with one (possibly empty) part per node.

    Node 0 is the root. ``parent[t]`` is the parent of node ``t`` (``None`` for
    the root); the tree edge ``(t, parent[t])`` maps to ``edge_map[t]``.
    """

    graph: Multigraph = field(repr=False)
    parent: tuple[int | None, ...]
    parts: tuple[frozenset[int], ...]
    edge_map: dict[int, CutSeparation] = field(default_factory=dict)

    @property
    def nodes(self) -> range:
        return range(len(self.parts))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(t, p) for t, p in enumerate(self.parent) if p is not None]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.nodes]
        for t, p in self.edges:
            kids[p].append(t)
        return tuple(tuple(k) for k in kids)

    def subtree(self, t: int) -> list[int]:
        out, stack = [], [t]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out

    def below_mask(self, t: int) -> int:
        """Union of the parts in the subtree rooted at ``t``."""
        return to_mask(v for x in self.subtree(t) for v in self.parts[x])

    def nonempty_parts(self) -> list[frozenset[int]]:
        return sorted((p for p in self.parts if p), key=set_key)

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": t, "part": sorted(p)} for t, p in enumerate(self.parts)],
            "edges": [{"nodes": [t, p], "separation": self.edge_map[t].to_dict()} for t, p in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self) -> str:
        g = self.graph
        lines = ["graph treecut {", "  node [shape=ellipse];"]
        for t, part in enumerate(self.parts):
            text = "{" + ", ".join(g.label(v) for v in sorted(part)) + "}" if part else "∅"
            lines.append(f'  t{t} [label="{text}"];')
        for t, p in self.edges:
            lines.append(f'  t{p} -- t{t} [label="order={self.edge_map[t].order}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_tree_cut(g: Multigraph, separations: Iterable[CutSeparation], root: int = 0) -> TreeCutDecomposition:
    """Tree-cut decomposition whose fundamental cuts are exactly ``separations``.

    Each separation is oriented away from ``root``; the resulting far sides form
    a laminar family whose inclusion forest, under an extra root node for the
    whole vertex set, is the decomposition tree. A node's part is its set minus
    its children's sets.
    """
    seps = list(separations)
    if len(set(seps)) != len(seps):
        raise PreconditionError("duplicate separations")
    if not 0 <= root < g.n:
        raise PreconditionError(f"root {root} is not a vertex")
    for s in seps:
        if s.n != g.n:
            raise PreconditionError("separation over a different vertex set")
        if not is_bond(g, s):
            raise PreconditionError(f"{s!r} is not a bond")
    for i, a in enumerate(seps):
        for b in seps[i + 1:]:
            if not nested(a, b):
                raise PreconditionError(f"{a!r} and {b!r} cross")

    far = {s: (s.other_mask if s.mask >> root & 1 else s.mask) for s in seps}
    by_size = sorted(seps, key=lambda s: (bin(far[s]).count("1"), set_key(from_mask(far[s]))))
    up: dict[CutSeparation, CutSeparation | None] = {}
    for i, s in enumerate(by_size):
        up[s] = next((t for t in by_size[i + 1:] if far[s] & ~far[t] == 0), None)

    # breadth-first numbering from the root node
    kids: dict[CutSeparation | None, list[CutSeparation]] = {None: []}
    for s in by_size:
        kids.setdefault(s, [])
        kids.setdefault(up[s], []).append(s)
    order: list[CutSeparation | None] = [None]
    for item in order:
        order.extend(sorted(kids[item], key=lambda s: set_key(from_mask(far[s]))))
    node_of = {item: i for i, item in enumerate(order)}

    full = g.full_mask
    parent: list[int | None] = []
    parts: list[frozenset[int]] = []
    edge_map: dict[int, CutSeparation] = {}
    for item in order:
        own = full if item is None else far[item]
        for c in kids[item]:
            own &= ~far[c]
        parts.append(from_mask(own))
        if item is None:
            parent.append(None)
        else:
            parent.append(node_of[up[item]])
            edge_map[node_of[item]] = item
    d = TreeCutDecomposition(g, tuple(parent), tuple(parts), edge_map)

    problems = decomposition_problems(d)
    if problems:
        raise InvariantError("constructed decomposition is invalid", problems=problems)
    if set(fundamental_cuts(d)) != set(seps):
        raise InvariantError("fundamental cuts differ from the input set")
    for t in d.nodes:
        # part = intersection of the sides facing t over all incident edges
        meet = full if d.parent[t] is None else far[edge_map[t]]
        for c in d.children[t]:
            meet &= full & ~far[edge_map[c]]
        if from_mask(meet) != d.parts[t]:
            raise InvariantError("part differs from the intersection of facing sides", node=t)
    return d


def fundamental_cuts(d: TreeCutDecomposition) -> list[CutSeparation]:
    """Cut-separation induced by each tree edge, recomputed from the parts."""
    cuts = []
    for t, _ in d.edges:
        cut = CutSeparation.from_side(d.graph, d.below_mask(t))
        if d.edge_map and d.edge_map.get(t) != cut:
            raise InvariantError("edge map disagrees with the fundamental cut", node=t)
        cuts.append(cut)
    return sorted(cuts)


def decomposition_problems(d: TreeCutDecomposition) -> list[str]:
    """Violations of the near-partition and density requirements (empty if valid)."""
    problems = []
    seen = 0
    for t, part in enumerate(d.parts):
        m = to_mask(part)
        if m & seen:
            problems.append(f"part of node {t} overlaps an earlier part")
        seen |= m
    if seen != d.graph.full_mask:
        problems.append(f"parts miss vertices {sorted(from_mask(d.graph.full_mask & ~seen))}")
    if any(p is not None and not 0 <= p < len(d.parts) for p in d.parent) or sum(p is None for p in d.parent) != 1:
        problems.append("parent array is not a rooted tree")
        return problems
    for t, p in d.edges:
        inside = d.below_mask(t)
        if not inside or inside == seen:
            problems.append(f"edge ({t}, {p}) is not on a path between non-empty parts")
    return problems


@dataclass(frozen=True)
class KBlockCheck:
    ok: bool
    missing: tuple[frozenset[int], ...] = ()
    unexpected: tuple[frozenset[int], ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "missing": [sorted(s) for s in self.missing],
            "unexpected": [sorted(s) for s in self.unexpected],
        }


def verify_k_block_decomposition(
    g: Multigraph, d: TreeCutDecomposition, k: int, hierarchy: EdgeBlockHierarchy | None = None
) -> KBlockCheck:
    """Whether the non-empty parts of ``d`` are exactly the k-edge-blocks of ``g``."""
    hierarchy = hierarchy if hierarchy is not None else block_hierarchy(g)
    want = set(k_blocks(hierarchy, k))
    have = set(d.nonempty_parts())
    return KBlockCheck(
        want == have,
        tuple(sorted(want - have, key=set_key)),
        tuple(sorted(have - want, key=set_key)),
    )
