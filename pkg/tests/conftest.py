import pytest
from hypothesis import strategies as st

from inet.dsl import load_corpus
from inet.net import NEG, POS, Link, build_diagram


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def tweety(corpus):
    return corpus.net("tweety")


@pytest.fixture(scope="session")
def nixon(corpus):
    return corpus.net("nixon")


@pytest.fixture(scope="session")
def updown(corpus):
    return corpus.net("updown")


@pytest.fixture(scope="session")
def splittotal(corpus):
    return corpus.net("splittotal")


@pytest.fixture(scope="session")
def inheruniv(corpus):
    return corpus.net("inheruniv")


@st.composite
def diagrams(draw, max_nodes=7, min_nodes=2):
    """Random DAGs; links only go from earlier to later names, in a shuffled order."""
    k = draw(st.integers(min_nodes, max_nodes))
    names = draw(st.permutations([f"n{i}" for i in range(k)]))
    links = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            kind = draw(st.sampled_from([None, None, None, POS, NEG]))
            if kind is not None:
                links.append(Link(a, b, kind))
    return build_diagram(names, links)
