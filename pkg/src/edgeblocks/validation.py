"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

import numbers
from collections.abc import Mapping

import numpy as np
from sklearn.utils import check_array

from .exceptions import GraphFormatError, PreconditionError
from .graph import Multigraph, load_graph, require_connected

__all__ = ["check_multigraph", "check_level", "check_vertex"]


def check_multigraph(X, connected: bool = True) -> Multigraph:
    """Coerce ``X`` into a :class:`Multigraph`.

    Accepts a :class:`Multigraph`, a graph document (mapping), a networkx
    graph or multigraph, or a square symmetric matrix of non-negative integer
    edge multiplicities with a zero diagonal.
    """
    if isinstance(X, Multigraph):
        g = X
    elif isinstance(X, Mapping):
        g = load_graph(X)
    elif hasattr(X, "nodes") and hasattr(X, "edges"):
        g = _from_networkx(X)
    else:
        g = _from_matrix(X)
    if connected:
        require_connected(g)
    return g


def _from_networkx(G) -> Multigraph:
    if G.is_directed():
        raise GraphFormatError("directed graphs are not supported")
    nodes = sorted(G.nodes(), key=str) if not all(isinstance(v, int) for v in G.nodes()) else sorted(G.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in G.edges()]
    return Multigraph.from_edges(len(nodes), edges, {i: str(v) for v, i in index.items()})


def _from_matrix(X) -> Multigraph:
    A = check_array(X, dtype=None, ensure_2d=True, ensure_min_samples=1, ensure_min_features=1)
    if A.shape[0] != A.shape[1]:
        raise GraphFormatError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.issubdtype(A.dtype, np.number) or np.any(A != np.round(A)):
        raise GraphFormatError("adjacency entries must be integers")
    A = A.astype(np.int64)
    if np.any(A < 0):
        raise GraphFormatError("adjacency entries must be non-negative")
    if np.any(np.diag(A) != 0):
        raise GraphFormatError("loops are not allowed (non-zero diagonal)")
    if not np.array_equal(A, A.T):
        raise GraphFormatError("adjacency matrix must be symmetric")
    rows, cols = np.nonzero(np.triu(A, 1))
    return Multigraph.from_edges(A.shape[0], [(int(u), int(v), int(A[u, v])) for u, v in zip(rows, cols)])


def check_level(k) -> int:
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 1:
        raise PreconditionError(f"k must be an integer >= 1, got {k!r}")
    return int(k)


def check_vertex(g: Multigraph, v) -> int:
    if isinstance(v, bool) or not isinstance(v, numbers.Integral) or not 0 <= v < g.n:
        raise PreconditionError(f"{v!r} is not a vertex of the graph")
    return int(v)
