"""The laminar hierarchy of k-edge-blocks for all k, and pairs of disjoint blocks.

The k-edge-blocks are read off a Gomory-Hu tree: they are the vertex classes
joined by tree edges of weight at least k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator

from .exceptions import InvariantError, PreconditionError
from .graph import Multigraph, set_key, to_mask
from .mincut import GomoryHuTree, gomory_hu

__all__ = ["Block", "BlockPair", "EdgeBlockHierarchy", "block_hierarchy", "k_blocks", "block_pairs", "iter_block_pairs"]


@dataclass(frozen=True)
class Block:
    """A vertex set that is a k-edge-block exactly for ``k_lo <= k <= k_hi``.

    ``k_hi`` is ``None`` for singletons, which stay blocks for every larger k.
    """

    vertices: frozenset[int]
    k_lo: int
    k_hi: int | None = None
    children: tuple["Block", ...] = field(default=(), compare=False, repr=False)

    @cached_property
    def mask(self) -> int:
        return to_mask(self.vertices)

    @cached_property
    def sort_key(self):
        return set_key(self.vertices)

    def valid_at(self, k: int) -> bool:
        return self.k_lo <= k and (self.k_hi is None or k <= self.k_hi)

    def to_dict(self) -> dict:
        return {
            "set": sorted(self.vertices),
            "k_lo": self.k_lo,
            "k_hi": "inf" if self.k_hi is None else self.k_hi,
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class BlockPair:
    """Two disjoint edge-blocks and the order of their efficient distinguishers."""

    first: Block
    second: Block
    order: int

    @property
    def sort_key(self):
        return (self.order, self.first.sort_key, self.second.sort_key)

    def to_dict(self) -> dict:
        return {"blocks": [sorted(self.first.vertices), sorted(self.second.vertices)], "order": self.order}


@dataclass(frozen=True)
class EdgeBlockHierarchy:
    n: int
    root: Block
    tree: GomoryHuTree = field(compare=False, repr=False)

    @cached_property
    def blocks(self) -> tuple[Block, ...]:
        """All blocks, parents before children, siblings in canonical order."""
        out = []
        stack = [self.root]
        while stack:
            b = stack.pop()
            out.append(b)
            stack.extend(reversed(b.children))
        return tuple(out)

    @property
    def max_level(self) -> int:
        """Smallest k at which every k-edge-block is a singleton."""
        return 1 + max((w for _, _, w in self.tree.edges), default=0)

    def to_dict(self) -> dict:
        return self.root.to_dict()


def _split(vertices: frozenset[int], k_lo: int, tree_edges) -> Block:
    if len(vertices) == 1:
        return Block(vertices, k_lo, None)
    inner = [(u, v, w) for u, v, w in tree_edges if u in vertices and v in vertices]
    k_hi = min(w for _, _, w in inner)
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, w in inner:
        if w > k_hi:
            parent[find(u)] = find(v)
    classes: dict[int, set[int]] = {}
    for v in vertices:
        classes.setdefault(find(v), set()).add(v)
    parts = sorted((frozenset(c) for c in classes.values()), key=set_key)
    children = tuple(_split(p, k_hi + 1, inner) for p in parts)
    return Block(vertices, k_lo, k_hi, children)


def block_hierarchy(g: Multigraph, tree: GomoryHuTree | None = None) -> EdgeBlockHierarchy:
    """Edge-block hierarchy of a connected graph for every k >= 1."""
    tree = tree if tree is not None else gomory_hu(g)
    root = _split(frozenset(g.vertices), 1, tree.edges)
    return EdgeBlockHierarchy(g.n, root, tree)


def k_blocks(h: EdgeBlockHierarchy, k: int) -> list[frozenset[int]]:
    """Partition of the vertex set into its k-edge-blocks, canonically ordered."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    return sorted((b.vertices for b in h.blocks if b.valid_at(k)), key=set_key)


def iter_block_pairs(h: EdgeBlockHierarchy, order: int | None = None) -> Iterator[BlockPair]:
    """Pairs of disjoint blocks, optionally only those of the given pair order.

    The pair order is the edge-connectivity between any two representatives;
    its constancy over all of ``first x second`` is checked on every pair.
    """
    lam = h.tree.connectivity_matrix
    blocks = sorted(h.blocks, key=lambda b: b.sort_key)
    for b1, b2 in combinations(blocks, 2):
        if b1.mask & b2.mask:
            continue
        value = lam[min(b1.vertices)][min(b2.vertices)]
        if order is not None and value != order:
            continue
        for u in b1.vertices:
            for v in b2.vertices:
                if lam[u][v] != value:
                    raise InvariantError("pair order not constant", pair=(sorted(b1.vertices), sorted(b2.vertices)))
        if value >= b1.k_lo or value >= b2.k_lo:
            raise InvariantError("pair order not below both blocks' levels", order=value)
        yield BlockPair(b1, b2, value)


def block_pairs(h: EdgeBlockHierarchy, order: int | None = None) -> list[BlockPair]:
    return sorted(iter_block_pairs(h, order), key=lambda p: p.sort_key)
