import itertools

import numpy as np
import pytest

from subgraphspace.graphs import Graph


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> Graph:
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
