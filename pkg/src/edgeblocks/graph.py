"""Finite undirected multigraphs and their JSON graph document.

Vertices are the integers ``0..n-1``. Vertex sets are handed around either as
``frozenset`` (public API) or as int bitmasks (inner loops); :func:`to_mask`
and :func:`from_mask` convert between the two.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

from .exceptions import DisconnectedGraphError, GraphFormatError, PreconditionError

__all__ = [
    "Multigraph",
    "load_graph",
    "read_graph",
    "dump_graph",
    "components",
    "contract",
    "cut_edges",
    "is_connected",
    "induces_connected",
    "to_mask",
    "from_mask",
    "set_key",
]


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def set_key(vertices: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Total order on vertex sets: by size, then by sorted membership."""
    members = tuple(sorted(vertices))
    return (len(members), members)


@dataclass(frozen=True)
class Multigraph:
    """Loopless undirected multigraph on vertices ``0..n-1``.

    ``edges`` holds one ``(u, v, multiplicity)`` triple per adjacent pair with
    ``u < v``, sorted. Use :meth:`from_edges` to build one from loose input.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    labels: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        for u, v, m in self.edges:
            if not (0 <= u < v < self.n) or m < 1:
                raise GraphFormatError(f"bad edge entry {(u, v, m)!r}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]], labels: Mapping[int, str] | None = None):
        """Aggregate ``(u, v)`` / ``(u, v, m)`` entries, summing duplicates."""
        if isinstance(n, bool) or not isinstance(n, int):
            raise GraphFormatError(f"vertex count must be an integer, got {n!r}")
        if n < 1:
            raise GraphFormatError("empty vertex set")
        counts: Counter = Counter()
        for entry in edges:
            entry = tuple(entry)
            if len(entry) == 2:
                u, v = entry
                m = 1
            elif len(entry) == 3:
                u, v, m = entry
            else:
                raise GraphFormatError(f"edge entry must have 2 or 3 fields: {entry!r}")
            for x in (u, v, m):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise GraphFormatError(f"non-integer in edge entry {entry!r}")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex index out of range in {entry!r}")
            if m < 1:
                raise GraphFormatError(f"multiplicity must be >= 1 in {entry!r}")
            counts[(min(u, v), max(u, v))] += m
        triples = tuple(sorted((u, v, m) for (u, v), m in counts.items()))
        lab = tuple(sorted((int(k), str(s)) for k, s in (labels or {}).items()))
        for k, _ in lab:
            if not 0 <= k < n:
                raise GraphFormatError(f"label for unknown vertex {k}")
        return cls(n, triples, lab)

    @cached_property
    def adjacency(self) -> tuple[dict[int, int], ...]:
        adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        for u, v, m in self.edges:
            adj[u][v] = m
            adj[v][u] = m
        return tuple(adj)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(a) for a in self.adjacency)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, _, m in self.edges)

    def label(self, v: int) -> str:
        return dict(self.labels).get(v, str(v))

    def multiplicity(self, u: int, v: int) -> int:
        return self.adjacency[u].get(v, 0)

    def degree(self, v: int) -> int:
        return sum(self.adjacency[v].values())

    def cut_order(self, mask: int) -> int:
        """Total multiplicity of edges with exactly one end in ``mask``."""
        total = 0
        for u, v, m in self.edges:
            if ((mask >> u) ^ (mask >> v)) & 1:
                total += m
        return total

    def relabel(self, perm: Iterable[int]) -> "Multigraph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise PreconditionError("not a permutation of the vertex set")
        labels = {perm[v]: s for v, s in self.labels}
        return Multigraph.from_edges(self.n, [(perm[u], perm[v], m) for u, v, m in self.edges], labels)

    def to_document(self) -> dict:
        doc: dict = {"vertices": self.n, "edges": [[u, v] if m == 1 else [u, v, m] for u, v, m in self.edges]}
        if self.labels:
            doc["labels"] = {str(k): s for k, s in self.labels}
        return doc


def load_graph(document: Mapping) -> Multigraph:
    """Build a :class:`Multigraph` from a parsed graph document."""
    if not isinstance(document, Mapping):
        raise GraphFormatError("graph document must be a JSON object")
    unknown = set(document) - {"vertices", "edges", "labels"}
    if unknown:
        raise GraphFormatError(f"unknown keys {sorted(unknown)}")
    if "vertices" not in document:
        raise GraphFormatError("missing 'vertices'")
    edges = document.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise GraphFormatError("'edges' must be a list of lists")
    labels = document.get("labels") or {}
    if not isinstance(labels, Mapping):
        raise GraphFormatError("'labels' must be an object")
    try:
        labels = {int(k): v for k, v in labels.items()}
    except ValueError as exc:
        raise GraphFormatError(f"label keys must be vertex indices: {exc}") from None
    return Multigraph.from_edges(document["vertices"], edges, labels)


def read_graph(path: str | Path) -> Multigraph:
    try:
        document = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: not valid JSON ({exc})") from None
    return load_graph(document)


def dump_graph(g: Multigraph) -> str:
    return json.dumps(g.to_document())


def _component_masks(g: Multigraph, within: int) -> list[int]:
    comps = []
    remaining = within
    nbrs = g.neighbor_masks
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = nbrs[low.bit_length() - 1] & within & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(g: Multigraph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Vertex sets of the components of ``g`` (or of ``g[within]``), canonically ordered."""
    mask = g.full_mask if within is None else to_mask(within)
    return sorted((from_mask(c) for c in _component_masks(g, mask)), key=set_key)


def induces_connected(g: Multigraph, mask: int) -> bool:
    return mask != 0 and len(_component_masks(g, mask)) == 1


def is_connected(g: Multigraph) -> bool:
    return induces_connected(g, g.full_mask)


def require_connected(g: Multigraph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def contract(g: Multigraph, parts: Iterable[Iterable[int]]) -> tuple[Multigraph, list[int]]:
    """Merge each part into a single vertex.

    Vertices not covered by ``parts`` stay as themselves. New vertex ids follow
    the smallest original member of each class. Returns the contracted graph and
    ``mapping[old] = new``.
    """
    owner = list(range(g.n))
    seen = 0
    for part in parts:
        pm = to_mask(part)
        if pm == 0:
            raise PreconditionError("contracted parts must be non-empty")
        if pm & seen:
            raise PreconditionError("contracted parts overlap")
        seen |= pm
        members = sorted(part)
        for v in members:
            owner[v] = members[0]
    reps = sorted(set(owner))
    index = {r: i for i, r in enumerate(reps)}
    mapping = [index[owner[v]] for v in range(g.n)]
    merged = [(mapping[u], mapping[v], m) for u, v, m in g.edges if mapping[u] != mapping[v]]
    labels = {}
    for v, s in g.labels:
        labels.setdefault(mapping[v], s)
    return Multigraph.from_edges(len(reps), merged, labels), mapping


def cut_edges(g: Multigraph, side: Iterable[int]) -> tuple[dict[tuple[int, int], int], int]:
    """Edges between ``side`` and its complement with multiplicities, plus their total."""
    mask = to_mask(side)
    if mask == 0 or mask == g.full_mask or mask & ~g.full_mask:
        raise PreconditionError("side must be a non-empty proper subset of the vertices")
    crossing = {}
    for u, v, m in g.edges:
        if ((mask >> u) ^ (mask >> v)) & 1:
            crossing[(u, v)] = m
    return crossing, sum(crossing.values())
