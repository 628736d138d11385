import pytest
from hypothesis import given, settings

from edgeblocks.exceptions import EnumerationCapExceeded, PreconditionError
from edgeblocks.graph import components, cut_edges, induces_connected
from edgeblocks.mincut import edge_connectivity, enumerate_min_separations, gomory_hu, min_cut
from edgeblocks.oracles import brute_efficient_distinguishers, brute_lambda, brute_lambda_matrix
from edgeblocks.separations import nested

from conftest import graphs, sep


def test_min_cut_bowtie(BOWTIE):
    value, s = min_cut(BOWTIE, [1], [4])
    assert value == 1 and s == sep(BOWTIE, [0, 1, 2])


def test_min_cut_k4x3(K4X3):
    value, s = min_cut(K4X3, range(4), range(4, 8))
    assert value == 2 == s.order


def test_min_cut_k2(K2):
    assert min_cut(K2, [0], [1]) == (1, sep(K2, [0]))


def test_min_cut_rejects_overlap(C4):
    with pytest.raises(PreconditionError):
        min_cut(C4, [0, 1], [1])


def test_lambda_examples(C4, K4X3, K4):
    assert edge_connectivity(C4, 0, 2) == 2
    assert edge_connectivity(K4X3, 0, 4) == 2
    assert {edge_connectivity(K4, u, v) for u in range(4) for v in range(u + 1, 4)} == {3}


def test_lambda_rejects_equal_vertices(C4):
    with pytest.raises(PreconditionError):
        edge_connectivity(C4, 1, 1)


def test_gomory_hu_bowtie(BOWTIE):
    t = gomory_hu(BOWTIE)
    weights = {frozenset((u, v)): w for u, v, w in t.edges}
    assert weights[frozenset((0, 3))] == 1
    assert all(w == 2 for e, w in weights.items() if e != frozenset((0, 3)))


def test_gomory_hu_k2(K2):
    assert gomory_hu(K2).edges == ((0, 1, 1),)


def test_gomory_hu_c4(C4):
    t = gomory_hu(C4)
    assert {w for _, _, w in t.edges} == {2}
    assert [t.connectivity(u, v) for u in range(4) for v in range(u + 1, 4)] == [2] * 6


def test_enumerate_c4(C4):
    found = enumerate_min_separations(C4, [0], [2])
    assert found == sorted(sep(C4, s) for s in ([0], [0, 1], [0, 3], [0, 1, 3]))


def test_enumerate_bowtie(BOWTIE):
    assert enumerate_min_separations(BOWTIE, [0, 1, 2], [3, 4, 5]) == [sep(BOWTIE, [0, 1, 2])]


def test_enumerate_k2(K2):
    assert enumerate_min_separations(K2, [0], [1]) == [sep(K2, [0])]


def test_enumerate_cap(C4):
    with pytest.raises(EnumerationCapExceeded):
        enumerate_min_separations(C4, [0], [2], cap=3)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_min_cut_matches_oracle(g):
    for v in range(1, g.n):
        value, s = min_cut(g, [0], [v])
        assert value == brute_lambda(g, 0, v) == s.order
        assert induces_connected(g, s.mask) and induces_connected(g, s.other_mask)
        assert cut_edges(g, s.side)[1] == value
        assert len(components(g, s.side)) == 1


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_gomory_hu_matches_oracle(g):
    t = gomory_hu(g)
    assert t.connectivity_matrix == brute_lambda_matrix(g)
    cuts = [t.fundamental_cut(u, v) for u, v, _ in t.edges]
    assert all(nested(a, b) for a in cuts for b in cuts)
    assert all(c.order == w for c, (_, _, w) in zip(cuts, t.edges))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_enumeration_matches_oracle(g):
    u, v = 0, g.n - 1
    fast = {s.side for s in enumerate_min_separations(g, [u], [v])}
    assert fast == set(brute_efficient_distinguishers(g, frozenset([u]), frozenset([v])))
