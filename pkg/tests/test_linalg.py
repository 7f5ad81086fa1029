from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralcert.graph import Graph, complete, cycle, path, petersen
from spectralcert.linalg import (SturmCounter, charpoly, inertia_exact, negative_count_interval,
                                 squarefree_decomposition)


def test_charpoly_closed_forms():
    assert charpoly(complete(3).adjacency_matrix().tolist()) == [1, 0, -3, -2]  # (x-2)(x+1)^2
    assert charpoly(path(3).adjacency_matrix().tolist()) == [1, 0, -2, 0]


def test_squarefree_of_petersen():
    # spectrum 3, 1^5, (-2)^4
    p = charpoly(petersen().adjacency_matrix().tolist())
    mults = sorted(m for _, m in squarefree_decomposition(p))
    assert mults == [1, 4, 5]


def test_sturm_counts():
    s = SturmCounter(charpoly(complete(3).adjacency_matrix().tolist()))
    assert s.count(Fraction(0)) == (2, 0)
    assert s.count(Fraction(-1)) == (0, 2)
    assert s.count(Fraction(2)) == (2, 1)
    c5 = SturmCounter(charpoly(cycle(5).adjacency_matrix().tolist()))
    assert c5.count(Fraction(2)) == (4, 1)


graph_masks = st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1)))


@settings(max_examples=120, deadline=None)
@given(graph_masks, st.fractions(min_value=-7, max_value=7, max_denominator=64))
def test_three_counters_agree(nm, t):
    g = Graph.from_mask(*nm)
    rows = g.adjacency_matrix().tolist()
    neg, zero, pos = inertia_exact(rows, t)
    below, at = SturmCounter(charpoly(rows)).count(t)
    assert (neg, zero) == (below, at)
    assert neg + zero + pos == g.n
    fl = negative_count_interval(g.adjacency_matrix(np.float64), t)
    assert fl is None or fl == neg
    eig = np.linalg.eigvalsh(g.adjacency_matrix(float))
    clear = np.abs(eig - float(t)) > 1e-9
    if clear.all():
        assert neg == int((eig < float(t)).sum())
