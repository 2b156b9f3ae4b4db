import numpy as np
import pytest

from resgame import Graph


def random_connected_graph(rng, n, tree=False, weighted=False):
    """Random spanning tree plus optional extra edges and random weights."""
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = 1.0
    if not tree:
        for _ in range(int(rng.integers(0, n))):
            i, j = (int(x) for x in rng.integers(0, n, 2))
            if i != j:
                edges[(min(i, j), max(i, j))] = 1.0
    if weighted:
        for key in edges:
            edges[key] = float(rng.uniform(0.2, 3.0))
    return Graph(n, tuple((i, j, w) for (i, j), w in edges.items()))


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
