"""Named small graphs and a seeded generator of random connected multigraphs."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Multigraph

__all__ = ["k2", "c4", "k4", "bowtie", "three_k4_triangle", "random_connected_multigraph", "random_corpus"]


def k2(multiplicity: int = 1) -> Multigraph:
    return Multigraph.from_edges(2, [(0, 1, multiplicity)])


def c4() -> Multigraph:
    return Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], {i: f"v{i}" for i in range(4)})


def k4() -> Multigraph:
    return Multigraph.from_edges(4, combinations(range(4), 2))


def bowtie() -> Multigraph:
    """Triangles x1x2x3 (0, 1, 2) and y1y2y3 (3, 4, 5) joined by the bridge x1y1."""
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3)]
    labels = {0: "x1", 1: "x2", 2: "x3", 3: "y1", 4: "y2", 5: "y3"}
    return Multigraph.from_edges(6, edges, labels)


def three_k4_triangle() -> Multigraph:
    """Three disjoint K4 on {0..3}, {4..7}, {8..11} whose hubs 0, 4, 8 form a triangle."""
    edges = []
    labels = {}
    for copy in range(3):
        base = 4 * copy
        edges.extend(combinations(range(base, base + 4), 2))
        labels[base] = f"v{copy + 1}"
        for j, name in enumerate("abc", start=1):
            labels[base + j] = f"{name}{copy + 1}"
    edges.extend([(0, 4), (4, 8), (0, 8)])
    return Multigraph.from_edges(12, edges, labels)


def random_connected_multigraph(
    rng: random.Random, n: int, max_total: int = 30, density: float = 0.3
) -> Multigraph:
    """Random spanning tree plus extra pairs with probability ``density``, then
    random multiplicity bumps, keeping the total multiplicity at most ``max_total``."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    tree = {frozenset(p) for p in pairs}
    extras = [p for p in combinations(range(n), 2) if frozenset(p) not in tree and rng.random() < density]
    rng.shuffle(extras)
    pairs.extend(extras[: max(0, max_total - len(pairs))])
    mult = [1] * len(pairs)
    budget = max_total - len(pairs)
    while budget > 0 and pairs and rng.random() < 0.6:
        mult[rng.randrange(len(pairs))] += 1
        budget -= 1
    return Multigraph.from_edges(n, [(u, v, m) for (u, v), m in zip(pairs, mult)])


def random_corpus(seed: int, count: int, min_n: int = 2, max_n: int = 10, max_total: int = 30) -> list[Multigraph]:
    """Seeded list of random connected multigraphs of mixed size and density."""
    rng = random.Random(seed)
    densities = (0.0, 0.15, 0.3, 0.5, 0.8)
    return [
        random_connected_multigraph(rng, rng.randint(min_n, max_n), max_total, densities[i % len(densities)])
        for i in range(count)
    ]
