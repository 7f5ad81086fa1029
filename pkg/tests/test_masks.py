import numpy as np
import pytest

from spectralcert.graph import Graph, GraphError, count_walks, distances, structure_flags
from spectralcert.linalg import charpoly
from spectralcert.masks import adjacency_stack, connected_masks, mask_table

from conftest import brute_connected_count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_connected_counts(n):
    assert connected_masks(n).size == brute_connected_count(n)


def test_table_agrees_with_per_graph_routines():
    n = 5
    t = mask_table(n)
    rng = np.random.default_rng(3)
    for mask in rng.choice(t.size, 150, replace=False):
        g = Graph.from_mask(n, int(mask))
        s = structure_flags(g)
        assert list(t.charpoly[mask]) == charpoly(g.adjacency_matrix().tolist())
        assert t.connected[mask] == s.is_connected
        assert t.bipartite[mask] == s.is_bipartite
        assert t.max_degree[mask] == s.max_degree and t.edges[mask] == g.m
        if s.is_connected:
            assert t.diameter[mask] == s.diameter
            dm = distances(g)
            assert all(t.dist[mask, i, j] == dm[i, j] for i in range(n) for j in range(n))
        for k in range(n + 1):
            assert t.walks[mask, k] == count_walks(g, k + 1)


def test_adjacency_stack_symmetric():
    a = adjacency_stack(4, np.arange(64))
    assert np.array_equal(a, a.transpose(0, 2, 1))
    assert np.array_equal(a[63], np.ones((4, 4)) - np.eye(4))


def test_table_range():
    with pytest.raises(GraphError):
        mask_table(8)
