"""scikit-learn style front end: fit a graph, read off its k-edge-blocks."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .blocks import block_hierarchy, k_blocks
from .distinguishers import DistinguisherFamily, build_nested_set
from .mincut import DEFAULT_CAP, gomory_hu
from .treecut import TreeCutDecomposition, build_tree_cut
from .validation import check_level, check_multigraph, check_vertex


class EdgeBlockDecomposition(ClusterMixin, BaseEstimator):
    """Decompose a connected multigraph into its k-edge-blocks for every k.

    Parameters
    ----------
    k : int, default=2
        Level used for ``labels_`` and as the default for :meth:`tree_cut`.
    root : int, default=0
        Vertex the tree-cut decompositions are rooted at.
    strategy : {"greedy", "minimal"}, default="greedy"
        How the nested bond set is completed beyond its core; see
        :func:`edgeblocks.distinguishers.build_nested_set`.
    max_separations : int, default=100000
        Cap on minimum-cut enumeration per block pair.

    Attributes
    ----------
    graph_ : Multigraph
    gomory_hu_ : GomoryHuTree
    hierarchy_ : EdgeBlockHierarchy
    nested_set_ : NestedBondSet
    labels_ : ndarray of shape (n_vertices,)
        Index of each vertex's k-edge-block in canonical block order.
    n_levels_ : int
        Smallest k at which all k-edge-blocks are singletons.
    """

    def __init__(self, k=2, root=0, strategy="greedy", max_separations=DEFAULT_CAP):
        self.k = k
        self.root = root
        self.strategy = strategy
        self.max_separations = max_separations

    def fit(self, X, y=None):
        """Compute the block hierarchy and a nested set of distinguishing bonds.

        ``X`` is anything :func:`edgeblocks.validation.check_multigraph`
        accepts, e.g. a symmetric integer adjacency matrix.
        """
        k = check_level(self.k)
        g = check_multigraph(X)
        check_vertex(g, self.root)
        self.graph_ = g
        self.gomory_hu_ = gomory_hu(g)
        self.hierarchy_ = block_hierarchy(g, self.gomory_hu_)
        family = DistinguisherFamily(g, self.hierarchy_, cap=self.max_separations)
        self.nested_set_ = build_nested_set(g, family, strategy=self.strategy)
        self.n_levels_ = self.hierarchy_.max_level
        self.labels_ = self.block_labels(k)
        return self

    def block_labels(self, k: int) -> np.ndarray:
        check_is_fitted(self, "hierarchy_")
        labels = np.empty(self.graph_.n, dtype=np.int64)
        for i, block in enumerate(k_blocks(self.hierarchy_, check_level(k))):
            labels[sorted(block)] = i
        return labels

    def tree_cut(self, k: int | None = None, root: int | None = None) -> TreeCutDecomposition:
        """Tree-cut decomposition into the k-edge-blocks, from the members of order below k."""
        check_is_fitted(self, "nested_set_")
        k = check_level(self.k if k is None else k)
        root = check_vertex(self.graph_, self.root if root is None else root)
        return build_tree_cut(self.graph_, sorted(self.nested_set_.below(k)), root)
