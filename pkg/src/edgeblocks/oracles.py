"""Brute-force reference implementations over all vertex bipartitions.

Nothing here calls into the max-flow code; these functions
only share the :class:`Multigraph` container and re-derive every quantity from
its edge list. They refuse to run above ``MAX_VERTICES``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .exceptions import InvariantError, OracleGuardExceeded, PreconditionError
from .graph import Multigraph

__all__ = [
    "MAX_VERTICES",
    "bipartitions",
    "brute_lambda",
    "brute_lambda_matrix",
    "brute_blocks",
    "brute_efficient_distinguishers",
]

MAX_VERTICES = 16


def _guard(g: Multigraph) -> None:
    if g.n > MAX_VERTICES:
        raise OracleGuardExceeded(f"brute force limited to {MAX_VERTICES} vertices, got {g.n}")


def _order(g: Multigraph, side: frozenset[int]) -> int:
    return sum(m for u, v, m in g.edges if (u in side) != (v in side))


def _connected(g: Multigraph, part: frozenset[int]) -> bool:
    if not part:
        return False
    adj: dict[int, set[int]] = {v: set() for v in part}
    for u, v, _ in g.edges:
        if u in part and v in part:
            adj[u].add(v)
            adj[v].add(u)
    start = min(part)
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj[x] - seen:
            seen.add(y)
            todo.append(y)
    return seen == set(part)


def bipartitions(g: Multigraph):
    """Yield every unordered bipartition once, as the side containing vertex 0."""
    _guard(g)
    rest = list(range(1, g.n))
    for r in range(len(rest)):
        for extra in combinations(rest, r):
            yield frozenset((0, *extra))


def brute_lambda(g: Multigraph, u: int, v: int) -> int:
    """Minimum cut order over all bipartitions separating ``u`` and ``v``."""
    _guard(g)
    if u == v:
        raise PreconditionError("u and v must differ")
    best = None
    for side in bipartitions(g):
        if (u in side) != (v in side):
            order = _order(g, side)
            if best is None or order < best:
                best = order
    return best


def brute_lambda_matrix(g: Multigraph) -> list[list[int | None]]:
    """All pairwise edge-connectivities from a single pass over the bipartitions."""
    _guard(g)
    best: list[list[int | None]] = [[None] * g.n for _ in range(g.n)]
    for side in bipartitions(g):
        order = _order(g, side)
        other = [w for w in range(g.n) if w not in side]
        for a in side:
            for b in other:
                if best[a][b] is None or order < best[a][b]:
                    best[a][b] = best[b][a] = order
    return best


def brute_blocks(g: Multigraph, k: int, matrix: list[list[int | None]] | None = None) -> list[frozenset[int]]:
    """Classes of the relation ``lambda(u, v) >= k``, sorted by (size, members)."""
    _guard(g)
    lam = matrix if matrix is not None else brute_lambda_matrix(g)
    classes: list[set[int]] = []
    for v in range(g.n):
        for cls in classes:
            if lam[v][min(cls)] >= k:
                cls.add(v)
                break
        else:
            classes.append({v})
    for cls in classes:
        for a, b in combinations(sorted(cls), 2):
            if lam[a][b] < k:
                raise InvariantError("inseparability is not transitive", k=k, pair=(a, b))
    for c1, c2 in combinations(classes, 2):
        for a in c1:
            for b in c2:
                if lam[a][b] >= k:
                    raise InvariantError("inseparable vertices in different classes", k=k, pair=(a, b))
    return sorted((frozenset(c) for c in classes), key=lambda s: (len(s), sorted(s)))


def brute_efficient_distinguishers(
    g: Multigraph, first: Iterable[int], second: Iterable[int]
) -> list[frozenset[int]]:
    """Sides (containing vertex 0) of all minimum-order bond bipartitions splitting the two sets."""
    _guard(g)
    first, second = frozenset(first), frozenset(second)
    if not first or not second or first & second:
        raise PreconditionError("vertex sets must be non-empty and disjoint")
    everything = frozenset(range(g.n))
    separating = []
    for side in bipartitions(g):
        other = everything - side
        if (first <= side and second <= other) or (first <= other and second <= side):
            separating.append((side, _order(g, side)))
    low = min(order for _, order in separating)
    found = [s for s, order in separating if order == low and _connected(g, s) and _connected(g, everything - s)]
    return sorted(found, key=lambda s: (len(s), sorted(s)))
