"""Minimum cuts: max-flow, Gomory-Hu trees and exhaustive minimum-cut enumeration.

Capacities are edge multiplicities. Max-flow is delegated to networkx's
Edmonds-Karp, whose residual network also drives the enumeration of all
minimum cuts as closed vertex sets of the condensed residual graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .exceptions import EnumerationCapExceeded, InvariantError, PreconditionError
from .graph import Multigraph, _component_masks, contract, require_connected, to_mask
from .separations import CutSeparation, is_bond, nested

__all__ = [
    "DEFAULT_CAP",
    "GomoryHuTree",
    "min_cut",
    "edge_connectivity",
    "gomory_hu",
    "enumerate_min_separations",
]

DEFAULT_CAP = 100_000


def _terminal_masks(g: Multigraph, S: Iterable[int], T: Iterable[int]) -> tuple[int, int]:
    s_mask, t_mask = to_mask(S), to_mask(T)
    if not s_mask or not t_mask:
        raise PreconditionError("terminal sets must be non-empty")
    if s_mask & t_mask:
        raise PreconditionError("terminal sets must be disjoint")
    if (s_mask | t_mask) & ~g.full_mask:
        raise PreconditionError("terminal vertex out of range")
    return s_mask, t_mask


def _residual(h: Multigraph, s: int, t: int) -> tuple[int, nx.DiGraph]:
    """Max-flow value and the graph of arcs with positive residual capacity."""
    net = nx.DiGraph()
    net.add_nodes_from(range(h.n))
    for u, v, m in h.edges:
        net.add_edge(u, v, capacity=m)
        net.add_edge(v, u, capacity=m)
    flow = edmonds_karp(net, s, t, capacity="capacity")
    residual = nx.DiGraph()
    residual.add_nodes_from(range(h.n))
    residual.add_edges_from((u, v) for u, v, d in flow.edges(data=True) if d["capacity"] - d["flow"] > 0)
    return flow.graph["flow_value"], residual


def _contract_terminals(g: Multigraph, s_mask: int, t_mask: int):
    S = [v for v in g.vertices if s_mask >> v & 1]
    T = [v for v in g.vertices if t_mask >> v & 1]
    h, mapping = contract(g, [S, T])
    return h, mapping, mapping[S[0]], mapping[T[0]]


def _lift(mapping: list[int], h_mask: int) -> int:
    return to_mask(v for v, image in enumerate(mapping) if h_mask >> image & 1)


def _prune(g: Multigraph, side: int, s_mask: int, t_mask: int) -> int:
    """Move terminal-free components across until no side has one left."""
    full = g.full_mask
    while True:
        moved = False
        for current, terminals in ((side, s_mask), (full & ~side, t_mask)):
            comps = _component_masks(g, current)
            if len(comps) < 2:
                continue
            stray = sorted((c for c in comps if not c & terminals), key=lambda c: (bin(c).count("1"), c))
            if stray:
                side ^= stray[0]
                moved = True
                break
        if not moved:
            return side


def min_cut(g: Multigraph, S: Iterable[int], T: Iterable[int]) -> tuple[int, CutSeparation]:
    """Minimum number of edges separating ``S`` from ``T`` and a separation achieving it.

    The returned side containing ``S`` is pruned so that every component of
    either side meets its terminal set; both sides are then connected whenever
    ``S`` and ``T`` each lie inside one component of their side, which holds
    for edge-blocks and single vertices.
    """
    require_connected(g)
    s_mask, t_mask = _terminal_masks(g, S, T)
    h, mapping, s, t = _contract_terminals(g, s_mask, t_mask)
    value, residual = _residual(h, s, t)
    reach = to_mask(nx.descendants(residual, s) | {s})
    side = _prune(g, _lift(mapping, reach), s_mask, t_mask)
    sep = CutSeparation.from_side(g, side)
    if sep.order != value:
        raise InvariantError("pruned cut changed order", value=value, order=sep.order)
    return value, sep


@dataclass(frozen=True)
class GomoryHuTree:
    """Weighted spanning tree whose path minima are the pairwise edge-connectivities.

    ``edges`` are ``(u, v, weight)`` with ``u < v``; ``cuts`` maps each edge to
    the fundamental cut of the tree at that edge, a minimum cut of the graph.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    cuts: dict = field(compare=False, repr=False)

    @cached_property
    def _adjacency(self) -> list[dict[int, int]]:
        adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def path_min(self, u: int, v: int) -> tuple[int, tuple[int, int]]:
        """Minimum weight on the tree path ``u..v`` and the first edge attaining it."""
        if u == v:
            raise PreconditionError("path_min needs two distinct vertices")
        parent = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self._adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        best = None
        x = v
        while parent[x] is not None:
            p = parent[x]
            w = self._adjacency[x][p]
            if best is None or w <= best[0]:
                best = (w, (min(x, p), max(x, p)))
            x = p
        return best

    def connectivity(self, u: int, v: int) -> int:
        return self.path_min(u, v)[0]

    @cached_property
    def connectivity_matrix(self) -> list[list[int | None]]:
        """``matrix[u][v]`` = edge-connectivity, ``None`` on the diagonal."""
        out: list[list[int | None]] = [[None] * self.n for _ in range(self.n)]
        for u in range(self.n):
            stack = [(u, None)]
            best = {u: None}
            while stack:
                x, bottleneck = stack.pop()
                for y, w in self._adjacency[x].items():
                    if y not in best:
                        best[y] = w if bottleneck is None else min(w, bottleneck)
                        stack.append((y, best[y]))
            for v, b in best.items():
                out[u][v] = b
        return out

    def fundamental_cut(self, u: int, v: int) -> CutSeparation:
        return self.cuts[(min(u, v), max(u, v))]


def gomory_hu(g: Multigraph) -> GomoryHuTree:
    """Gomory-Hu tree via the original contraction scheme.

    Every tree edge's fundamental cut is a minimum cut between its endpoints
    and the fundamental cuts are pairwise nested; both facts are checked.
    """
    require_connected(g)
    supernodes: list[list[int]] = [list(g.vertices)]
    tree: list[dict[int, int]] = [dict()]
    while True:
        x = next((i for i, members in enumerate(supernodes) if len(members) > 1), None)
        if x is None:
            break
        members = supernodes[x]
        s, t = members[0], members[1]
        parts, part_of = [], {}
        for y in sorted(tree[x]):
            seen, stack = {y}, [y]
            while stack:
                z = stack.pop()
                for nb in tree[z]:
                    if nb != x and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            part_of[y] = len(parts)
            parts.append([v for z in seen for v in supernodes[z]])
        h, mapping = contract(g, parts)
        value, residual = _residual(h, mapping[s], mapping[t])
        source = nx.descendants(residual, mapping[s]) | {mapping[s]}
        x_s = [v for v in members if mapping[v] in source]
        x_t = [v for v in members if mapping[v] not in source]
        xt = len(supernodes)
        supernodes[x] = x_s
        supernodes.append(x_t)
        tree.append(dict())
        for y in list(tree[x]):
            if mapping[parts[part_of[y]][0]] not in source:
                w = tree[x].pop(y)
                del tree[y][x]
                tree[xt][y] = w
                tree[y][xt] = w
        tree[x][xt] = value
        tree[xt][x] = value

    vertex_of = [members[0] for members in supernodes]
    edges = sorted(
        (min(vertex_of[a], vertex_of[b]), max(vertex_of[a], vertex_of[b]), w)
        for a in range(len(tree))
        for b, w in tree[a].items()
        if a < b
    )
    cuts = {}
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    for u, v, w in edges:
        seen, stack = {u}, [u]
        while stack:
            z = stack.pop()
            for nb in adj[z]:
                if nb not in seen and not (z == u and nb == v):
                    seen.add(nb)
                    stack.append(nb)
        sep = CutSeparation.from_side(g, seen)
        if sep.order != w:
            raise InvariantError("fundamental cut does not match tree weight", edge=(u, v), weight=w, order=sep.order)
        cuts[(u, v)] = sep
    values = list(cuts.values())
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            if not nested(a, b):
                raise InvariantError("Gomory-Hu fundamental cuts cross", first=a, second=b)
    return GomoryHuTree(g.n, tuple(edges), cuts)


def edge_connectivity(g: Multigraph, u: int, v: int, tree: GomoryHuTree | None = None) -> int:
    """Minimum number of edges whose removal separates ``u`` from ``v``."""
    if u == v:
        raise PreconditionError("edge connectivity needs two distinct vertices")
    if tree is not None:
        return tree.connectivity(u, v)
    return min_cut(g, [u], [v])[0]


def _closed_sets(dag: nx.DiGraph, free: list[int], cap: int):
    """Yield every subset of ``free`` closed under successors (within ``free``).

    ``free`` must be topologically sorted. Each branch is feasible, so the
    enumeration does work proportional to its output.
    """
    index = {node: i for i, node in enumerate(free)}
    desc = [0] * len(free)
    anc = [0] * len(free)
    for node, i in index.items():
        d = 1 << i
        for other in nx.descendants(dag, node):
            if other in index:
                d |= 1 << index[other]
        desc[i] = d
    for i in range(len(free)):
        for j in range(len(free)):
            if desc[j] >> i & 1:
                anc[i] |= 1 << j
    everything = (1 << len(free)) - 1
    emitted = 0
    stack = [(0, 0)]
    while stack:
        inc, exc = stack.pop()
        undecided = everything & ~inc & ~exc
        if not undecided:
            emitted += 1
            if emitted > cap:
                raise EnumerationCapExceeded(cap)
            yield inc
            continue
        i = (undecided & -undecided).bit_length() - 1
        stack.append((inc, exc | anc[i]))
        stack.append((inc | desc[i], exc))


def enumerate_min_separations(
    g: Multigraph,
    S: Iterable[int],
    T: Iterable[int],
    cap: int = DEFAULT_CAP,
    bonds_only: bool = True,
) -> list[CutSeparation]:
    """All minimum ``S``-``T`` separations, canonically sorted.

    With ``bonds_only`` (the default) only separations whose two sides are
    both connected are kept. Raises :class:`EnumerationCapExceeded` once more
    than ``cap`` minimum cuts have been generated.
    """
    require_connected(g)
    s_mask, t_mask = _terminal_masks(g, S, T)
    h, mapping, s, t = _contract_terminals(g, s_mask, t_mask)
    value, residual = _residual(h, s, t)
    dag = nx.condensation(residual)
    scc_of = dag.graph["mapping"]
    s_node, t_node = scc_of[s], scc_of[t]
    forced_in = nx.descendants(dag, s_node) | {s_node}
    forced_out = nx.ancestors(dag, t_node) | {t_node}
    if forced_in & forced_out:
        raise InvariantError("sink reachable in residual network after max-flow")
    free = [
        node
        for node in nx.lexicographical_topological_sort(dag, key=lambda c: min(dag.nodes[c]["members"]))
        if node not in forced_in and node not in forced_out
    ]

    def h_members(nodes) -> int:
        return to_mask(v for node in nodes for v in dag.nodes[node]["members"])

    base = h_members(forced_in)
    free_masks = [h_members([node]) for node in free]
    out = []
    for chosen in _closed_sets(dag, free, cap):
        h_side = base
        i = 0
        while chosen:
            if chosen & 1:
                h_side |= free_masks[i]
            chosen >>= 1
            i += 1
        sep = CutSeparation.from_side(g, _lift(mapping, h_side))
        if sep.order != value:
            raise InvariantError("closed set is not a minimum cut", value=value, separation=sep)
        if not bonds_only or is_bond(g, sep):
            out.append(sep)
    return sorted(out)
