import random

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from edgeblocks.fixtures import bowtie, c4, k2, k4, random_connected_multigraph, random_corpus, three_k4_triangle
from edgeblocks.graph import Multigraph
from edgeblocks.separations import CutSeparation


@pytest.fixture
def K2():
    return k2()


@pytest.fixture
def C4():
    return c4()


@pytest.fixture
def K4():
    return k4()


@pytest.fixture
def BOWTIE():
    return bowtie()


@pytest.fixture
def K4X3():
    return three_k4_triangle()


@pytest.fixture(scope="session")
def small_corpus():
    return random_corpus(seed=11, count=40, max_n=8)


@st.composite
def graphs(draw, min_n=2, max_n=7, max_total=20):
    """Connected multigraphs, seeded through the fixture generator."""
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from((0.0, 0.2, 0.5, 0.9)))
    return random_connected_multigraph(random.Random(seed), n, max_total, density)


@st.composite
def graph_with_separations(draw, count=2, min_n=3, max_n=8):
    g = draw(graphs(min_n=min_n, max_n=max_n))
    seps = []
    for _ in range(count):
        rest = draw(st.integers(0, (1 << (g.n - 1)) - 2))
        seps.append(CutSeparation.from_side(g, (rest << 1) | 1))
    return (g, *seps)


def sep(g: Multigraph, side) -> CutSeparation:
    return CutSeparation.from_side(g, side)


def all_separations(g):
    return [CutSeparation.from_side(g, (rest << 1) | 1) for rest in range((1 << (g.n - 1)) - 1)]


@st.composite
def crossing_pairs(draw, min_n=4, max_n=8, nested_with_both=False):
    """A graph with two crossing separations, optionally a third nested with both."""
    from edgeblocks.separations import crosses, nested

    g = draw(graphs(min_n=min_n, max_n=max_n))
    everything = all_separations(g)
    s1 = draw(st.sampled_from(everything))
    partners = [s for s in everything if crosses(s1, s)]
    assume(partners)
    s2 = draw(st.sampled_from(partners))
    if not nested_with_both:
        return g, s1, s2
    common = [x for x in everything if nested(x, s1) and nested(x, s2)]
    return g, s1, s2, draw(st.sampled_from(common))


_ACCEPTANCE: list[tuple[int, bool, str]] = []


@pytest.fixture(scope="session")
def acceptance_results():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
