"""
測試共用的帶號圖
"""

import numpy as np
import pytest

from sgx.sgraph import SignedGraph

C4_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3)]


@pytest.fixture
def unbalanced_triangle():
    return SignedGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)], negative=[(0, 1)])


@pytest.fixture
def positive_triangle():
    return SignedGraph.complete(3)


@pytest.fixture
def unbalanced_c4():
    return SignedGraph.from_edges(4, C4_EDGES, negative=[(0, 1)])


@pytest.fixture
def balanced_c4():
    return SignedGraph.from_edges(4, C4_EDGES, negative=[(0, 1), (2, 3)])


@pytest.fixture
def k4():
    return SignedGraph.complete(4)


@pytest.fixture
def random_signed_graphs():
    """固定種子的隨機帶號圖，n = 4..8"""
    rng = np.random.default_rng(2024)
    graphs = []
    for _ in range(24):
        n = int(rng.integers(4, 9))
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6]
        negative = [e for e in edges if rng.random() < 0.4]
        graphs.append(SignedGraph.from_edges(n, edges, negative))
    return graphs
