"""k-edge-blocks of finite multigraphs and the tree-cut decompositions that display them."""

from .blocks import Block, BlockPair, EdgeBlockHierarchy, block_hierarchy, block_pairs, k_blocks
from .distinguishers import (
    DistinguisherFamily,
    NestedBondSet,
    NestedSetReport,
    build_nested_set,
    efficient_distinguishers,
    repair_candidate,
    uncross_cross_level,
    uncross_same_level,
    verify_nested_set,
)
from .estimator import EdgeBlockDecomposition
from .exceptions import (
    DisconnectedGraphError,
    EdgeBlocksError,
    EnumerationCapExceeded,
    GraphFormatError,
    InvariantError,
    OracleGuardExceeded,
    PreconditionError,
)
from .generation import check_generation_equivalence, enumerate_cuts, is_generated
from .graph import Multigraph, components, contract, cut_edges, load_graph, read_graph
from .mincut import GomoryHuTree, edge_connectivity, enumerate_min_separations, gomory_hu, min_cut
from .separations import CutSeparation, OrientedSeparation, corners, crosses, k_crossing_number, nested, sup_inf
from .treecut import TreeCutDecomposition, build_tree_cut, fundamental_cuts, verify_k_block_decomposition
from .validation import check_multigraph

__version__ = "0.1.0"
