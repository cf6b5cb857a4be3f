import random

import pytest
from hypothesis import strategies as st

from cchard.graphs import Graph, complete_graph, cycle_graph, empty_graph, path_graph
from cchard.matrix import CommMatrix

SUITE_GRAPHS = {
    "K2": complete_graph(2),
    "P3": path_graph(3),
    "K3": complete_graph(3),
    "E2": empty_graph(2),
    "K2+v": Graph(3, ((1, 2),)),
    "star3": Graph(4, ((1, 2), (1, 3), (1, 4))),
    "C4": cycle_graph(4),
}


@st.composite
def graphs(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(chosen))


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return CommMatrix.from_rows(data)


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.5) -> CommMatrix:
    return CommMatrix.from_rows([[int(rng.random() < density) for _ in range(cols)] for _ in range(rows)])


@pytest.fixture
def rng():
    return random.Random(12345)
