import pathlib

import pytest

from lmgraphs import CorpusSpec, MixedGraph, generate_corpus, load_graph

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

FIGURE_NAMES = [
    "fig2a",
    "fig2b",
    "fig3",
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
    "fig6",
    "fig7",
    "fig9a",
    "fig9b",
    "fig9c",
]


def figure(name: str) -> MixedGraph:
    return load_graph(str(FIXTURES / f"{name}.lmg"))


def figure_path(name: str) -> str:
    return str(FIXTURES / f"{name}.lmg")


@pytest.fixture(scope="session")
def figures() -> dict[str, MixedGraph]:
    return {name: figure(name) for name in FIGURE_NAMES}


# Shared seeded corpora. Session-scoped because several property suites and
# the acceptance criteria quantify over the same graphs.


@pytest.fixture(scope="session")
def lmg_corpus() -> list[MixedGraph]:
    """Unconstrained loopless mixed graphs, up to 5 nodes."""
    return generate_corpus(
        CorpusSpec(count=500, nodes=(2, 5), p_line=0.25, p_arrow=0.3, p_arc=0.25, p_multi=0.15, seed=20260808)
    )


@pytest.fixture(scope="session")
def rg_corpus() -> list[MixedGraph]:
    """Ribbonless graphs, up to 6 nodes."""
    return generate_corpus(
        CorpusSpec(count=300, nodes=(2, 6), p_line=0.2, p_arrow=0.25, p_arc=0.2, p_multi=0.1, constraint="ribbonless", seed=977)
    )


@pytest.fixture(scope="session")
def maximal_rg_corpus() -> list[MixedGraph]:
    """Maximal ribbonless graphs, up to 5 nodes."""
    return generate_corpus(
        CorpusSpec(count=100, nodes=(2, 5), p_line=0.25, p_arrow=0.3, p_arc=0.25, p_multi=0.1, constraint="maximal-ribbonless", seed=4242)
    )


@pytest.fixture(scope="session")
def bidirected_corpus() -> list[MixedGraph]:
    """All-arc graphs, up to 5 nodes."""
    return generate_corpus(
        CorpusSpec(count=100, nodes=(2, 5), p_line=0.0, p_arrow=0.0, p_arc=0.5, p_multi=0.1, seed=515)
    )
