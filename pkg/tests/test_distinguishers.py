import random

import pytest
from hypothesis import given, settings

from edgeblocks.blocks import block_hierarchy
from edgeblocks.distinguishers import (
    DistinguisherFamily,
    build_nested_set,
    efficient_distinguishers,
    repair_candidate,
    uncross_cross_level,
    uncross_same_level,
    verify_nested_set,
)
from edgeblocks.exceptions import PreconditionError
from edgeblocks.fixtures import c4, random_corpus
from edgeblocks.graph import Multigraph
from edgeblocks.separations import nested

from conftest import graphs, sep

G1, G2, G3 = frozenset(range(4)), frozenset(range(4, 8)), frozenset(range(8, 12))


def pair_of(family, first, second):
    return next(p for p in family.pairs if (p.first.vertices, p.second.vertices) == (frozenset(first), frozenset(second)))


def test_efficient_distinguishers_c4(C4):
    family = DistinguisherFamily(C4)
    found = efficient_distinguishers(C4, pair_of(family, [0], [2]))
    assert set(found) == {sep(C4, s) for s in ([0], [0, 1], [0, 3], [0, 1, 3])}


def test_efficient_distinguishers_bowtie(BOWTIE):
    family = DistinguisherFamily(BOWTIE)
    assert efficient_distinguishers(BOWTIE, pair_of(family, [0, 1, 2], [3, 4, 5])) == [sep(BOWTIE, [0, 1, 2])]


def test_efficient_distinguishers_k4x3(K4X3):
    family = DistinguisherFamily(K4X3)
    assert set(efficient_distinguishers(K4X3, pair_of(family, G1, G2))) == {sep(K4X3, G1), sep(K4X3, G2)}


def test_cross_level_rejects_nested(C4):
    family = DistinguisherFamily(C4)
    p = pair_of(family, [0], [2])
    with pytest.raises(PreconditionError):
        uncross_cross_level(C4, sep(C4, [0]), p, sep(C4, [0, 1]), p)


def test_cross_level_pendant_noop():
    # C4 plus a pendant vertex 4 attached to vertex 0
    g = Multigraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    family = DistinguisherFamily(g)
    low = pair_of(family, [2], [4])
    assert low.order == 1 and family.members(low) == (sep(g, [4]),)
    assert all(nested(sep(g, [4]), s) for s in family.pool(2))


def test_same_level_c4(C4):
    family = DistinguisherFamily(C4)
    pi, pj = pair_of(family, [0], [2]), pair_of(family, [1], [3])
    a_i, a_j = sep(C4, [0, 1]), sep(C4, [1, 2])
    r = uncross_same_level(C4, a_i, pi, a_j, pj, family)
    assert r.replaces == "j" and family.contains(pj, r.separation)
    assert min(len(r.separation.side), len(r.separation.other)) == 1
    assert r.crossing_number == 0 < r.replaced_crossing_number == family.crossing_number(a_j)
    swapped = uncross_same_level(C4, a_j, pj, a_i, pi, family)
    assert min(len(swapped.separation.side), len(swapped.separation.other)) == 1
    assert swapped.crossing_number == 0


def test_same_level_rejects_nested(C4):
    family = DistinguisherFamily(C4)
    p = pair_of(family, [0], [2])
    with pytest.raises(PreconditionError):
        uncross_same_level(C4, sep(C4, [0]), p, sep(C4, [0, 1]), p, family)


def test_nested_set_k4x3(K4X3):
    result = build_nested_set(K4X3)
    assert result.below(3) == {sep(K4X3, G1), sep(K4X3, G2), sep(K4X3, G3)}


def test_nested_set_c4(C4):
    result = build_nested_set(C4)
    assert result.separations == {sep(C4, [v]) for v in range(4)}
    assert {m.phase for m in result.members} == {"core"}


def test_nested_set_bowtie(BOWTIE):
    result = build_nested_set(BOWTIE)
    assert sep(BOWTIE, [0, 1, 2]) in result.separations
    report = verify_nested_set(BOWTIE, result.separations)
    within = [p for p, _ in report.citations if p.order == 2 and len(p.first.vertices) == 1]
    assert len(within) == 6


def test_unknown_strategy(C4):
    with pytest.raises(PreconditionError):
        build_nested_set(C4, strategy="random")


def test_verify_c4_stars(C4):
    assert verify_nested_set(C4, [sep(C4, [v]) for v in range(4)]).ok


def test_verify_empty_on_k2(K2):
    report = verify_nested_set(K2, [])
    assert not report.distinguishing
    [pair] = report.undistinguished
    assert (pair.first.vertices, pair.second.vertices) == (frozenset({0}), frozenset({1}))


def test_verify_bowtie_stars(BOWTIE):
    report = verify_nested_set(BOWTIE, [sep(BOWTIE, [v]) for v in range(6)])
    # removing x1 or y1 disconnects the rest of the graph
    assert report.nested and report.non_bonds == (sep(BOWTIE, [0]), sep(BOWTIE, [3]))
    assert not report.efficient and not report.distinguishing
    inefficient = {(p.first.vertices, p.second.vertices) for p, _ in report.inefficient}
    assert (frozenset({0}), frozenset({3})) in inefficient
    undistinguished = {(p.first.vertices, p.second.vertices) for p in report.undistinguished}
    assert undistinguished == {(frozenset({0, 1, 2}), frozenset({3, 4, 5}))}


def test_verify_ex1_with_stars(K4X3):
    seps = [sep(K4X3, G1), sep(K4X3, G2), sep(K4X3, G3)] + [sep(K4X3, [v]) for v in range(12)]
    report = verify_nested_set(K4X3, seps)
    # the hub stars are not bonds: removing v_i cuts its copy off from the rest
    assert report.nested and set(report.non_bonds) == {sep(K4X3, [0]), sep(K4X3, [4]), sep(K4X3, [8])}
    assert report.distinguishing and report.efficient


def test_verify_flags_crossing_and_non_bonds(C4):
    report = verify_nested_set(C4, [sep(C4, [0, 1]), sep(C4, [1, 2]), sep(C4, [0, 2])])
    assert not report.nested and not report.bonds
    assert report.non_bonds == (sep(C4, [0, 2]),)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_nested_set_verifies(g):
    for strategy in ("greedy", "minimal"):
        assert verify_nested_set(g, build_nested_set(g, strategy=strategy).separations).ok


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_forced_members(g):
    family = DistinguisherFamily(g)
    result = build_nested_set(g, family)
    for pair in family.pairs:
        if len(family.members(pair)) == 1:
            assert family.members(pair)[0] in result.separations


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_cross_level_uncrossing(g):
    family = DistinguisherFamily(g)
    members = [(p, s) for p in family.pairs for s in family.members(p)]
    for lp, low in members:
        for hp, high in members:
            if lp.order < hp.order and not nested(low, high):
                r = uncross_cross_level(g, low, lp, high, hp)
                assert nested(r.separation, low) and family.contains(hp, r.separation)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_same_level_uncrossing_lowers_crossing_number(g):
    family = DistinguisherFamily(g)
    members = [(p, s) for p in family.pairs for s in family.members(p)]
    for pi, a in members:
        for pj, b in members:
            if pi.order == pj.order and pi.sort_key < pj.sort_key and not nested(a, b):
                r = uncross_same_level(g, a, pi, b, pj, family)
                assert r.crossing_number < r.replaced_crossing_number
                assert family.contains(r.pair, r.separation)


def _random_nested(rng, pool):
    pool = list(pool)
    rng.shuffle(pool)
    out = []
    for s in pool:
        if all(nested(s, t) for t in out):
            out.append(s)
    return out


def test_repair_from_arbitrary_starts():
    rng = random.Random(3)
    kinds = set()
    for g in random_corpus(seed=5, count=60, max_n=9):
        family = DistinguisherFamily(g)
        greedy = build_nested_set(g, family).separations
        for pair in family.pairs:
            lower = [s for s in family.all_members() if s.order < pair.order]
            settled = [s for s in greedy if s.order <= pair.order and not family.contains(pair, s)]
            for current in (settled, _random_nested(rng, lower)):
                for start in family.members(pair):
                    best, steps = repair_candidate(g, family, pair, start, current)
                    assert family.contains(pair, best)
                    assert all(nested(best, s) for s in current)
                    for step in steps:
                        kinds.add(step.kind)
                        assert step.crossings_after < step.crossings_before
                        if step.kind == "same-level":
                            assert step.crossing_number_after < step.crossing_number_before
    assert "cross-level" in kinds


def _core_commutes(g, strategy, rng, rounds=5):
    core = build_nested_set(g, strategy=strategy)
    base = core.core if strategy == "greedy" else core.separations
    for _ in range(rounds):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        other = build_nested_set(h, strategy=strategy)
        mapped = {frozenset(perm[v] for v in s.side) for s in base}
        got = other.core if strategy == "greedy" else other.separations
        assert {frozenset(sep(h, m).side) for m in mapped} == {s.side for s in got}


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=8))
def test_core_commutes_with_relabelling(g):
    _core_commutes(g, "greedy", random.Random(g.total_multiplicity))


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=8))
def test_minimal_strategy_commutes_with_relabelling(g):
    _core_commutes(g, "minimal", random.Random(g.n))


def test_hierarchy_reuse(C4):
    h = block_hierarchy(C4)
    assert DistinguisherFamily(C4, h).hierarchy is h
    assert build_nested_set(c4()).separations == build_nested_set(C4, DistinguisherFamily(C4, h)).separations
