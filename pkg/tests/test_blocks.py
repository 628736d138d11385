from itertools import combinations

import pytest
from hypothesis import given, settings

from edgeblocks.blocks import block_hierarchy, block_pairs, k_blocks
from edgeblocks.exceptions import PreconditionError
from edgeblocks.oracles import brute_blocks, brute_lambda_matrix

from conftest import graphs

G1, G2, G3 = frozenset(range(4)), frozenset(range(4, 8)), frozenset(range(8, 12))


def test_hierarchy_k4x3(K4X3):
    h = block_hierarchy(K4X3)
    assert (h.root.vertices, h.root.k_lo, h.root.k_hi) == (frozenset(range(12)), 1, 2)
    assert [(c.vertices, c.k_lo, c.k_hi) for c in h.root.children] == [(G1, 3, 3), (G2, 3, 3), (G3, 3, 3)]
    leaves = [b for c in h.root.children for b in c.children]
    assert len(leaves) == 12 and all(len(b.vertices) == 1 and b.k_lo == 4 and b.k_hi is None for b in leaves)


def test_hierarchy_c4(C4):
    h = block_hierarchy(C4)
    assert (h.root.k_lo, h.root.k_hi) == (1, 2)
    assert [(sorted(c.vertices), c.k_lo, c.k_hi) for c in h.root.children] == [([v], 3, None) for v in range(4)]


def test_hierarchy_k2(K2):
    assert block_hierarchy(K2).to_dict() == {
        "set": [0, 1],
        "k_lo": 1,
        "k_hi": 1,
        "children": [
            {"set": [0], "k_lo": 2, "k_hi": "inf", "children": []},
            {"set": [1], "k_lo": 2, "k_hi": "inf", "children": []},
        ],
    }


def test_k_blocks_k4x3(K4X3):
    h = block_hierarchy(K4X3)
    assert k_blocks(h, 3) == [G1, G2, G3]
    assert k_blocks(h, 2) == [frozenset(range(12))]
    assert k_blocks(h, 1) == [frozenset(range(12))]
    assert k_blocks(h, 4) == [frozenset([v]) for v in range(12)]


def test_k_blocks_rejects_zero(C4):
    with pytest.raises(PreconditionError):
        k_blocks(block_hierarchy(C4), 0)


def test_block_pairs_bowtie(BOWTIE):
    pairs = {(p.first.vertices, p.second.vertices): p.order for p in block_pairs(block_hierarchy(BOWTIE))}
    x, y = frozenset({0, 1, 2}), frozenset({3, 4, 5})
    assert pairs[(x, y)] == 1
    for u, v in combinations(range(6), 2):
        assert pairs[(frozenset([u]), frozenset([v]))] == (2 if (u < 3) == (v < 3) else 1)


def test_block_pairs_k4x3(K4X3):
    pairs = {(p.first.vertices, p.second.vertices): p.order for p in block_pairs(block_hierarchy(K4X3))}
    assert pairs[(G1, G2)] == 2


def test_block_pairs_k2(K2):
    [pair] = block_pairs(block_hierarchy(K2))
    assert (pair.first.vertices, pair.second.vertices, pair.order) == (frozenset({0}), frozenset({1}), 1)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_hierarchy_matches_oracle(g):
    h = block_hierarchy(g)
    lam = brute_lambda_matrix(g)
    for k in range(1, h.max_level + 2):
        assert k_blocks(h, k) == brute_blocks(g, k, lam)
    assert k_blocks(h, h.max_level) == [frozenset([v]) for v in g.vertices]


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_hierarchy_laminar(g):
    blocks = [b.vertices for b in block_hierarchy(g).blocks]
    for a, b in combinations(blocks, 2):
        assert not (a & b) or a <= b or b <= a


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_pair_order_constant_and_below_levels(g):
    lam = brute_lambda_matrix(g)
    for p in block_pairs(block_hierarchy(g)):
        assert {lam[u][v] for u in p.first.vertices for v in p.second.vertices} == {p.order}
        assert p.order < p.first.k_lo and p.order < p.second.k_lo
