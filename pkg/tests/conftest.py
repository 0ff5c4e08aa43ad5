import random

import pytest
from hypothesis import strategies as st

from trusskit import Graph


def graph_from_pairs(pairs):
    g = Graph()
    for u, v in pairs:
        g.add_edge(u, v)
    return g


def random_simple_pairs(rng, n, count):
    out = []
    while len(out) < count:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            out.append((u, v))
    return out


@st.composite
def small_edge_lists(draw, max_nodes=12, max_edges=40):
    n = draw(st.integers(min_value=2, max_value=max_nodes))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    raw = draw(st.lists(pair, max_size=max_edges))
    return [(u, v) for u, v in raw if u != v]


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
