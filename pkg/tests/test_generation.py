import random

import pytest
from hypothesis import given, settings

from edgeblocks.distinguishers import build_nested_set
from edgeblocks.exceptions import OracleGuardExceeded, PreconditionError
from edgeblocks.generation import check_generation_equivalence, enumerate_cuts, is_generated
from edgeblocks.graph import Multigraph
from edgeblocks.oracles import bipartitions
from edgeblocks.separations import OrientedSeparation

from conftest import graphs, sep


def stars(g):
    return [sep(g, [v]) for v in range(g.n)]


def oriented(side, n):
    return OrientedSeparation.of(side, set(range(n)) - set(side), n)


def test_union_witness_c4(C4):
    w = is_generated(sep(C4, [0, 1]), stars(C4), 2, mode="union")
    assert w and set(w.members) == {oriented([0], 4), oriented([1], 4)}
    assert w.replay() == oriented([0, 1], 4)


def test_union_witness_order_four_c4(C4):
    w = is_generated(sep(C4, [0, 2]), stars(C4), 4, mode="union")
    assert w and set(w.members) == {oriented([0], 4), oriented([2], 4)}


def test_lattice_witness_replays_c4(C4):
    w = is_generated(sep(C4, [0, 1]), stars(C4), 2)
    assert w and w.replay() == OrientedSeparation(w.target_side, C4.full_mask & ~w.target_side, 4)


@pytest.mark.parametrize("mode", ["lattice", "union"])
def test_single_star_fails(C4, mode):
    failure = is_generated(sep(C4, [0, 1]), [sep(C4, [0])], 2, mode=mode)
    assert not failure and failure.uncovered == frozenset({1})


def test_unknown_mode(C4):
    with pytest.raises(PreconditionError):
        is_generated(sep(C4, [0, 1]), stars(C4), 2, mode="other")


def test_enumerate_cuts_c4(C4):
    cuts = enumerate_cuts(C4, 2)
    expected = {s for s in bipartitions(C4) if C4.cut_order(sum(1 << v for v in s)) <= 2}
    assert {c.side for c in cuts} == expected
    # four stars and the two adjacent-pair cuts
    assert len(cuts) == 6


def test_enumerate_cuts_small(K2, BOWTIE):
    assert enumerate_cuts(K2, 1) == [sep(K2, [0])]
    assert enumerate_cuts(BOWTIE, 1) == [sep(BOWTIE, [0, 1, 2])]


def test_enumerate_cuts_guard():
    with pytest.raises(OracleGuardExceeded):
        enumerate_cuts(Multigraph.from_edges(17, [(i, i + 1) for i in range(16)]), 1)


def test_equivalence_c4(C4):
    report = check_generation_equivalence(C4, stars(C4), k_max=4)
    assert report.distinguishes and report.generates and report.equivalent
    assert report.per_k[2] == (6, 6) and report.per_k[4] == (1, 1)


def test_equivalence_k4x3(K4X3):
    report = check_generation_equivalence(K4X3, build_nested_set(K4X3).separations, k_max=5)
    assert report.ok


def test_equivalence_k2_empty(K2):
    report = check_generation_equivalence(K2, [], k_max=1)
    assert not report.distinguishes and not report.generates and report.equivalent
    assert [f.target for f in report.failures] == [sep(K2, [0])]


def test_equivalence_rejects_crossing(C4):
    with pytest.raises(PreconditionError):
        check_generation_equivalence(C4, [sep(C4, [0, 1]), sep(C4, [1, 2])])


def test_union_only_generation_is_too_weak():
    g = Multigraph.from_edges(5, [(0, 1, 1), (0, 3, 1), (1, 4, 2), (2, 3, 1), (3, 4, 2)])
    members = build_nested_set(g).separations
    union = check_generation_equivalence(g, members, mode="union")
    assert union.distinguishes and not union.generates
    assert [f.target for f in union.failures] == [sep(g, [0, 3])]
    lattice = check_generation_equivalence(g, members)
    assert lattice.ok
    [w] = [w for w in lattice.witnesses if w.target == sep(g, [0, 3])]
    assert any(len(term) > 1 for term in w.terms)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_nested_set_generates_and_witnesses_replay(g):
    report = check_generation_equivalence(g, build_nested_set(g).separations)
    assert report.ok
    for w in report.witnesses:
        got = w.replay()
        assert got.valid and got.small == w.target_side
        assert got.unoriented(g) == w.target


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_equivalence_on_subsets(g):
    rng = random.Random(g.total_multiplicity)
    members = sorted(build_nested_set(g).separations)
    for _ in range(3):
        subset = [s for s in members if rng.random() < 0.7]
        assert check_generation_equivalence(g, subset).equivalent
