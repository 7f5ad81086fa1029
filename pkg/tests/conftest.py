import itertools

import numpy as np
import pytest

from spectralcert.graph import Graph


def brute_connected_count(n: int) -> int:
    """Count labelled connected graphs by trying every edge subset."""
    pairs = list(itertools.combinations(range(n), 2))
    count = 0
    for bits in range(1 << len(pairs)):
        adj = [set() for _ in range(n)]
        for k, (u, v) in enumerate(pairs):
            if bits >> k & 1:
                adj[u].add(v)
                adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        count += len(seen) == n
    return count


def float_spectrum(g: Graph) -> np.ndarray:
    return np.linalg.eigvalsh(g.adjacency_matrix(dtype=float))


def random_graph(rng, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    from spectralcert.graph import build_graph
    return build_graph(n, edges)


@pytest.fixture(scope="session")
def engine7():
    from spectralcert.exhaustive import ExhaustiveEngine
    return ExhaustiveEngine(7)
