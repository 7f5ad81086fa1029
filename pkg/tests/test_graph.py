import itertools

import pytest
from hypothesis import given, settings, strategies as st

from spectralcert.graph import (DISCONNECTED, Graph, GraphError, bfs, build_graph, complete,
                                complete_bipartite, count_walks, cycle, distances,
                                enumerate_connected, format_edge_list, generate, is_connected,
                                parse_edge_list, paw, path, petersen, star, structure_flags,
                                two_coloring)

from conftest import brute_connected_count


def test_build_triangle_and_path():
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert k3 == complete(3)
    p3 = build_graph(3, [(0, 1), (1, 2)])
    assert p3.edges() == [(0, 1), (1, 2)]


def test_build_rejects_self_loop_and_range():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(2, [(0, 0)])
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])


def test_families():
    assert complete(4).m == 6
    k33 = complete_bipartite(3, 3)
    st_ = structure_flags(k33)
    assert k33.m == 9 and st_.is_bipartite and st_.is_regular and st_.max_degree == 3
    assert set(map(frozenset, st_.bipartition)) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    c5 = structure_flags(cycle(5))
    assert not c5.is_bipartite and c5.diameter == 2 and len(c5.odd_cycle) == 5
    assert petersen().m == 15 and structure_flags(petersen()).is_regular
    assert star(3).degrees == (3, 1, 1, 1)
    assert generate("cycle", 6) == cycle(6)
    with pytest.raises(GraphError):
        generate("cycle", 0)


def test_paw_flags():
    s = structure_flags(paw())
    assert s.is_connected and not s.is_bipartite and not s.is_regular and s.max_degree == 3


def test_distances():
    p3 = path(3)
    dm = distances(p3)
    assert dm.diameter == 2 and dm[0, 2] == 2
    assert distances(cycle(5)).diameter == 2
    two = build_graph(4, [(0, 1), (2, 3)])
    assert distances(two).diameter is DISCONNECTED
    assert bfs(two, 0) == [0, 1, None, None]
    assert not is_connected(two)


def test_walk_counts():
    assert count_walks(complete(2), 2) == 2
    assert count_walks(path(3), 1) == 3
    assert count_walks(path(3), 3) == 6


def test_enumeration_counts_match_brute_force():
    for n, expected in [(1, 1), (2, 1), (3, 4), (4, 38)]:
        assert sum(1 for _ in enumerate_connected(n)) == expected == brute_connected_count(n)


def test_enumeration_out_of_range():
    with pytest.raises(GraphError, match="corpus"):
        list(enumerate_connected(8))


def test_edge_list_round_trip():
    g = petersen()
    assert parse_edge_list(format_edge_list(g)) == g
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")


def test_mask_round_trip_all_n4():
    for mask in range(1 << 6):
        assert Graph.from_mask(4, mask).to_mask() == mask


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_two_coloring_certificates(g):
    colour, cycle_ = two_coloring(g)
    if colour is not None:
        assert all(colour[u] != colour[v] for u, v in g.edges())
    else:
        assert len(cycle_) % 2 == 1
        closed = cycle_ + cycle_[:1]
        assert all(g.has_edge(a, b) for a, b in zip(closed, closed[1:]))


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_distance_triangle_inequality(g):
    dm = distances(g)
    for u, v in g.edges():
        for w in range(g.n):
            a, b = dm[w, u], dm[w, v]
            assert (a is None) == (b is None)
            if a is not None:
                assert abs(a - b) <= 1
