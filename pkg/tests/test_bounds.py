import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralcert.bounds import (HypothesisFailure, TolerancePolicy, Verdict, check_diameter_power,
                                 check_eigenvector_ratio, check_nonbipartite_gap,
                                 check_regular_variants, check_sachs, check_subgraph_gap,
                                 check_theorem4, decide, edge_deletion_distance_lemma,
                                 min_bipartization, sign_cut_subgraph)
from spectralcert.graph import (Graph, build_graph, complete, complete_bipartite, cycle,
                                is_connected, paw, path, petersen, star, structure_flags)
from spectralcert.harness import random_connected_graph
from spectralcert.interval import Interval

HOLDS = Verdict.HOLDS


def by_id(verdicts):
    return {v.check_id: v for v in verdicts}


def near(iv, x, eps=1e-9):
    return abs(float(iv.mid) - x) < eps


def encloses(iv, q):
    return iv.contains(q) and iv.width < Fraction(1, 10**50)


def test_decide_relations():
    a, b = Interval(1, 2), Interval(3, 4)
    assert decide(b, a, ">") is Verdict.HOLDS
    assert decide(a, b, ">") is Verdict.FAILS
    assert decide(Interval(1, 3), Interval(2, 4), ">") is Verdict.UNDECIDED
    assert decide(Interval.point(2), Interval.point(2), ">=") is Verdict.HOLDS
    assert decide(Interval.point(2), Interval.point(2), ">") is Verdict.FAILS
    assert decide(a, b, "<") is Verdict.HOLDS
    assert decide(Interval.point(5), Interval.point(5), "==") is Verdict.HOLDS
    assert decide(Interval(0, 1), Interval(2, 3), "~") is Verdict.FAILS


def test_subgraph_gap_examples():
    v = by_id(check_subgraph_gap(complete(3), path(3)))
    assert near(v["T1"].lhs, 2 - math.sqrt(2)) and encloses(v["T1"].rhs, Fraction(1, 12))
    assert v["T1"].verdict is HOLDS and v["T1a_strong"].verdict is HOLDS
    assert encloses(v["T1a_strong"].rhs, Fraction(1, 6))
    v = by_id(check_subgraph_gap(cycle(5), path(5)))
    assert near(v["T1"].lhs, 2 - math.sqrt(3)) and encloses(v["T1"].rhs, Fraction(1, 80))
    assert v["T1"].verdict is HOLDS


def test_subgraph_gap_disconnected_h_skips_strong_case():
    v = by_id(check_subgraph_gap(path(3), build_graph(3, [(0, 1)])))
    assert v["T1"].verdict is HOLDS and v["T1a_strong"].verdict is Verdict.SKIPPED


def test_subgraph_gap_not_proper():
    with pytest.raises(HypothesisFailure):
        check_subgraph_gap(complete(3), complete(3))


def test_nonbipartite_gap():
    v = check_nonbipartite_gap(cycle(5))
    assert near(v.lhs, (3 - math.sqrt(5)) / 2) and encloses(v.rhs, Fraction(2, 80))
    assert v.verdict is HOLDS
    with pytest.raises(HypothesisFailure) as exc:
        check_nonbipartite_gap(complete_bipartite(3, 3))
    assert exc.value.report["G nonbipartite"] is False


def test_regular_variants():
    v = by_id(check_regular_variants(cycle(5), path(5)))
    assert v["T11"].verdict is HOLDS and encloses(v["T11"].rhs, Fraction(1, 15))
    assert v["T21"].verdict is HOLDS and encloses(v["T21"].rhs, Fraction(2, 25))
    with pytest.raises(HypothesisFailure):
        check_regular_variants(paw())


def test_theorem4_examples():
    v = by_id(check_theorem4(paw()))
    assert v["T4"].verdict is HOLDS and v["CGN"].verdict is HOLDS
    v = by_id(check_theorem4(complete(4).remove_edge(0, 1)))
    assert near(v["T4"].lhs, 3 + (1 - math.sqrt(17)) / 2)
    mu = (1 + math.sqrt(17)) / 2
    assert near(v["T4"].rhs, 1 / 12 + 1 / (mu ** 4 * 4), 1e-6)
    v = by_id(check_theorem4(star(3)))
    assert v["T4"].verdict is Verdict.SKIPPED
    assert near(v["CGN"].lhs, 3 - math.sqrt(3)) and encloses(v["CGN"].rhs, Fraction(6, 52))


def test_theorem4_regular_rejected():
    with pytest.raises(HypothesisFailure):
        check_theorem4(cycle(5))


def test_eigenvector_ratio_tight_cases():
    for g in (path(3), star(3)):
        v = by_id(check_eigenvector_ratio(g))
        assert v["P1"].verdict is HOLDS and v["P1_MINMAX"].verdict is HOLDS
        assert "1 tight leaf pair" in v["P1"].notes or "tight" in v["P1"].notes


def test_eigenvector_ratio_disconnected():
    with pytest.raises(HypothesisFailure):
        check_eigenvector_ratio(build_graph(4, [(0, 1), (2, 3)]))


def test_diameter_power_examples():
    v = by_id(check_diameter_power(path(3)))
    assert near(v["P2"].lhs, 2) and v["WALK"].lhs == Interval.point(10)
    assert encloses(v["WALK"].rhs, 9) and near(v["P2_CITED"].lhs, math.sqrt(2) + 2)
    assert near(by_id(check_diameter_power(cycle(5)))["P2"].lhs, 4)
    assert near(by_id(check_diameter_power(star(3)))["P2"].lhs, 3)
    with pytest.raises(HypothesisFailure):
        check_diameter_power(path(2))


def test_distance_lemma_equality_cases():
    for g in (complete(3), cycle(5)):
        v = edge_deletion_distance_lemma(g, (0, 1))
        assert v.verdict is HOLDS and v.lhs == v.rhs
    with pytest.raises(HypothesisFailure):
        edge_deletion_distance_lemma(path(3), (0, 1))


def test_sachs():
    assert check_sachs(cycle(5)).verdict is HOLDS
    v = check_sachs(complete_bipartite(2, 3))
    assert v.verdict is HOLDS and v.relation == "~"


@pytest.mark.parametrize("g,edges", [(cycle(5), 4), (complete(3), 2)])
def test_sign_cut_examples(g, edges):
    h, rep = sign_cut_subgraph(g)
    assert h.m == edges and rep.spanning and rep.bipartite and rep.proper and rep.connected
    assert h.is_edge_subgraph_of(g)


def test_sign_cut_petersen():
    h, rep = sign_cut_subgraph(petersen())
    assert rep.ok and structure_flags(h).is_bipartite
    assert h.m == 15 - rep.dropped_edges


def test_sign_cut_bipartite_rejected():
    with pytest.raises(HypothesisFailure):
        sign_cut_subgraph(complete_bipartite(2, 2))


def bipartization_by_deletion(g: Graph) -> int:
    """Smallest edge subset whose removal leaves no odd cycle (independent of cuts)."""
    edges = g.edges()
    for k in range(len(edges) + 1):
        for drop in itertools.combinations(edges, k):
            h = g.edge_subgraph(e for e in edges if e not in drop)
            if structure_flags(h).is_bipartite:
                return k


def test_bipartization_examples():
    assert min_bipartization(complete(5)) == 4
    assert min_bipartization(cycle(5)) == 1
    assert min_bipartization(complete(3)) == 1
    for s in range(2, 13):
        assert min_bipartization(complete(s)) == math.comb(s, 2) - s * s // 4


def test_bipartization_cap():
    with pytest.raises(ValueError, match="analytic"):
        min_bipartization(path(25))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1))))
def test_bipartization_matches_deletion_search(nm):
    g = Graph.from_mask(*nm)
    assert min_bipartization(g) == bipartization_by_deletion(g)


def test_eigenvector_ratio_random_sweep():
    rng = np.random.default_rng(11)
    for _ in range(200):
        g = random_connected_graph(int(rng.integers(3, 31)), rng)
        for v in check_eigenvector_ratio(g):
            assert v.verdict is not Verdict.FAILS, (g, v)


def test_policy_escalates_only_when_needed():
    v = check_nonbipartite_gap(cycle(5), TolerancePolicy())
    assert v.precision_bits <= 64


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, (1 << (n * (n - 1) // 2)) - 1))))
def test_strong_rhs_is_twice_general(nm):
    g = Graph.from_mask(*nm)
    if not is_connected(g):
        return
    u, v = g.edges()[0]
    vs = by_id(check_subgraph_gap(g, g.remove_edge(u, v)))
    strong = vs["T1a_strong"]
    if strong.verdict is Verdict.SKIPPED:
        return
    assert strong.rhs.lo == 2 * vs["T1"].rhs.lo and strong.rhs.hi == 2 * vs["T1"].rhs.hi


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1))))
def test_bipartization_zero_iff_bipartite(nm):
    g = Graph.from_mask(*nm)
    assert (min_bipartization(g) == 0) == structure_flags(g).is_bipartite
