"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with the figures it
checked, then asserts.  The n <= 7 exhaustive runs share one engine.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from spectralcert import graph6
from spectralcert.bounds import (CHECK_IDS, Verdict, check_sachs, min_bipartization)
from spectralcert.constructions import build_theorem2_construction, build_theorem3_construction
from spectralcert.eig import extreme_eigenvalues
from spectralcert.exhaustive import ExhaustiveEngine
from spectralcert.graph import (Graph, bfs, complete, complete_bipartite, cycle,
                                enumerate_connected, pair_order)
from spectralcert.harness import (emit_report, enumerate_source, random_source, run_sweep,
                                  summarize, without_timing)
from spectralcert.interval import Interval, sqrt_down, sqrt_up
from spectralcert.masks import connected_masks, mask_table

from conftest import brute_connected_count

pytestmark = pytest.mark.slow

TOL = Fraction(1, 10**12)
PROPOSITION_CHECKS = ("P1", "P1_MINMAX", "P2", "WALK", "P2_CITED")


@pytest.fixture
def verdict_line(capsys):
    def emit(criterion: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    return emit


@pytest.fixture(scope="session")
def engines():
    return {n: ExhaustiveEngine(n) for n in range(2, 8)}


@pytest.fixture(scope="session")
def tallies(engines):
    return {n: e.run(CHECK_IDS) for n, e in engines.items()}


def clean(t) -> bool:
    return t.fails == 0 and t.undecided == 0


# -- 1 -----------------------------------------------------------------------

def test_c1_exhaustive_subgraph_gap(tallies, verdict_line):
    counts = [connected_masks(n).size for n in range(1, 6)]
    brute = [brute_connected_count(n) for n in range(1, 6)]
    edges_ok = True
    lines = []
    for n, tal in tallies.items():
        tab = mask_table(n)
        # every deleted edge of every connected graph is one work item
        items = int(tab.edges[connected_masks(n)].astype(np.int64).sum())
        t = tal["T1"]
        edges_ok &= clean(t) and t.holds == items == t.total
        lines.append(f"n={n}:{t.holds}/{items}")
    n7 = connected_masks(7).size
    ok = edges_ok and counts == brute == [1, 1, 4, 38, 728] and n7 == 1866256
    verdict_line("C1 exhaustive T1, n<=7", ok,
                 f"connected counts {counts} (brute force {brute}), n=7 count {n7}; "
                 f"Holds per n {' '.join(lines)}; zero Fails/Undecided={edges_ok}")
    assert ok


# -- 2 -----------------------------------------------------------------------

def test_c2_exhaustive_nonbipartite_regular_degree(tallies, verdict_line):
    ok = True
    parts = []
    for n, tal in tallies.items():
        if n < 3:
            continue
        tab = mask_table(n)
        masks = connected_masks(n)
        nonbip = ~tab.bipartite[masks]
        regular = tab.max_degree[masks] == tab.min_degree[masks]
        expect = {"T2": int(nonbip.sum()), "T21": int((regular & nonbip).sum()),
                  "T4": int((~regular & nonbip).sum()), "CGN": int((~regular).sum()),
                  "T11": int(tab.edges[masks[regular]].astype(np.int64).sum())}
        for cid, want in expect.items():
            t = tal[cid]
            ok &= clean(t) and t.holds == want
        parts.append(f"n={n}: " + " ".join(f"{c}={tal[c].holds}" for c in expect))
    verdict_line("C2 exhaustive T2/T11/T21/T4/CGN, n<=7", ok, "; ".join(parts))
    assert ok


# -- 3 -----------------------------------------------------------------------

def test_c3_closed_form_spectra(verdict_line):
    ok = True
    for s in range(2, 12):
        sm = extreme_eigenvalues(complete(s), TOL)
        ok &= sm.mu == Interval.point(s - 1) and sm.mu_min == Interval.point(-1)
    for a, b in itertools.combinations_with_replacement(range(1, 7), 2):
        sm = extreme_eigenvalues(complete_bipartite(a, b), TOL)
        root = Interval(sqrt_down(Fraction(a * b)), sqrt_up(Fraction(a * b)))
        ok &= sm.mu.lo - TOL <= root.lo and root.hi <= sm.mu.hi + TOL
        ok &= sm.mu_min.lo - TOL <= -root.hi and -root.lo <= sm.mu_min.hi + TOL
    c5 = extreme_eigenvalues(cycle(5), TOL)
    total = c5.mu + c5.mu_min
    # 2 + 2cos(4pi/5) = (3 - sqrt 5)/2 = 0.3819660...
    target = (3 - Interval(sqrt_down(Fraction(5)), sqrt_up(Fraction(5)))) / 2
    slack = Fraction(1, 10**9)
    c5_ok = total.lo - slack <= target.lo and target.hi <= total.hi + slack and total.width < slack
    ok &= c5_ok
    verdict_line("C3 closed-form spectra", ok,
                 f"K_s s=2..11 exact, K_ab a,b<=6 within {float(TOL):.0e}, "
                 f"C5 mu+mu_min in {total} vs (3-sqrt5)/2 (within 1e-9: {c5_ok})")
    assert ok


# -- 4 -----------------------------------------------------------------------

def test_c4_theorem2_grid(verdict_line):
    ok = True
    worst = []
    for k, D in itertools.product((3, 4, 5, 6), (4, 6, 8, 10, 12)):
        rep = build_theorem2_construction(k, D)
        g = rep.graph
        diameter = max(max(bfs(g, v)) for v in range(g.n))
        up = rep.claim("C2_UPPER")
        bound = Fraction(4, (k - 1) ** (2 * D - 4))
        cell = (g.n == D + 2 * k - 1 and diameter == D
                and rep.claim("C2_MU_GT_K").verdict is Verdict.HOLDS
                and up.verdict is Verdict.HOLDS and up.lhs.hi < bound)
        ok &= cell
        if not cell:
            worst.append((k, D))
    special = build_theorem2_construction(4, 10).claim("C2_UPPER")
    special_ok = special.lhs.hi < Fraction(931, 10**10) and special.verdict is Verdict.HOLDS
    ok &= special_ok
    verdict_line("C4 thm2 grid k=3..6, D=4..12", ok,
                 f"20 cells, failing cells {worst}; (k=4,D=10) mu+mu_min <= "
                 f"{special.lhs.to_strings(6)[1]} < 9.31e-8 at {special.precision_bits} bits")
    assert ok


# -- 5 -----------------------------------------------------------------------

def test_c5_theorem3_instance(verdict_line):
    rep = build_theorem3_construction(100, Fraction(1, 20))
    deletions = math.comb(45, 2) - 45 ** 2 // 4
    target = (Fraction(1, 16) - Fraction(1, 20)) * 100 ** 2
    integer_ok = (deletions == rep.derived["ks_deletions"] == 484 and target == 125
                  and rep.claim("C3_BIPARTIZATION").verdict is Verdict.HOLDS)
    up = rep.claim("C3_UPPER")
    spectral_ok = up.verdict is Verdict.HOLDS
    verdict_line("C5 thm3 (n=100, eps=1/20)", integer_ok and spectral_ok,
                 f"integer check 484 >= 125: {integer_ok}; "
                 f"mu+mu_min in [{', '.join(up.lhs.to_strings(8))}] vs bound 1e-10: {up.verdict}")
    assert integer_ok
    assert spectral_ok, "certified mu+mu_min is far above 1e-10 for this construction"


# -- 6 -----------------------------------------------------------------------

def test_c6_proposition_sweeps(tallies, verdict_line):
    records = run_sweep(random_source(1000, n_max=50, seed=2024), PROPOSITION_CHECKS)
    rows = {r["check_id"]: r for r in summarize(records)}
    random_ok = all(rows[c]["fails"] == 0 for c in PROPOSITION_CHECKS)
    random_undecided = sum(rows[c]["undecided"] for c in PROPOSITION_CHECKS)
    exhaustive_ok = all(tal[c].fails == 0 and tal[c].undecided == 0
                        for n, tal in tallies.items() if n >= 3 for c in PROPOSITION_CHECKS)
    graphs = rows["P2"]["total"]
    ok = random_ok and exhaustive_ok and graphs == 1000
    verdict_line("C6 eigenvector-ratio and diameter-power sweeps", ok,
                 f"{graphs} random graphs n<=50: "
                 + " ".join(f"{c}={rows[c]['holds']}H/{rows[c]['fails']}F" for c in PROPOSITION_CHECKS)
                 + f" ({random_undecided} undecided); exhaustive n=3..7 zero Fails/Undecided: "
                 f"{exhaustive_ok}")
    assert ok


# -- 7 -----------------------------------------------------------------------

def test_c7_sachs_dichotomy(tallies, verdict_line):
    small = [check_sachs(g) for g in enumerate_connected(2)]
    ok = all(v.verdict is Verdict.HOLDS for v in small)
    counts = []
    for n, tal in tallies.items():
        if n < 3:
            continue
        t = tal["SACHS"]
        ok &= clean(t) and t.holds == connected_masks(n).size
        counts.append(f"n={n}:{t.holds}")
    verdict_line("C7 Sachs dichotomy, n<=7", ok,
                 "bipartite: enclosures of mu and -mu_min overlap; nonbipartite: mu+mu_min > 0; "
                 + " ".join(counts))
    assert ok


# -- 8 -----------------------------------------------------------------------

def test_c8_distance_lemma(tallies, verdict_line):
    ok = True
    parts = []
    for n, tal in tallies.items():
        tab = mask_table(n)
        masks = connected_masks(n)
        pairs = n * (n - 1) // 2
        # independent count of non-bridge edges: G - e is still connected
        nonbridge = 0
        for k in range(pairs):
            has = masks[(masks >> k) & 1 == 1]
            nonbridge += int(tab.connected[has & ~(1 << k)].sum())
        t = tal["DIST_LEMMA"]
        ok &= clean(t) and t.holds == nonbridge
        parts.append(f"n={n}:{t.holds}")
    verdict_line("C8 distance lemma, n<=7", ok, "non-bridge edges checked " + " ".join(parts))
    assert ok


# -- 9 -----------------------------------------------------------------------

def test_c9_sign_cut(engines, verdict_line):
    ok = True
    parts = []
    disconnected = 0
    for n, e in engines.items():
        if n < 3:
            continue
        t = e.sign_cut()
        ok &= t.ok == t.graphs and t.undecided == 0
        disconnected += len(t.disconnected)
        parts.append(f"n={n}: {t.ok}/{t.graphs} valid, connected {t.connectivity_rate:.4%} "
                     f"({len(t.disconnected)} disconnected, all with zero entries: "
                     f"{t.disconnected_near_zero == len(t.disconnected)}; "
                     f"excluding zero entries {t.connectivity_rate_nonzero:.2%})")
        if t.disconnected:
            print(f"sign cut disconnected at n={n}, e.g. "
                  f"{[graph6.encode(e.graph(m)) for m in t.disconnected[:5]]}")
    verdict_line("C9 sign-cut subgraph, n<=7", ok, "; ".join(parts))
    assert ok


# -- 10 ----------------------------------------------------------------------

def maxcut_all_colourings(n: int, masks: np.ndarray) -> np.ndarray:
    """Max cut of every mask by trying all 2**n colourings (no symmetry reduction)."""
    best = np.zeros(masks.size, dtype=np.int64)
    pairs = pair_order(n)
    for colouring in range(1 << n):
        crossing = sum(1 << k for k, (u, v) in enumerate(pairs)
                       if (colouring >> u & 1) != (colouring >> v & 1))
        cut = np.zeros(masks.size, dtype=np.int64)
        hit = masks & crossing
        for k in range(len(pairs)):
            cut += (hit >> k) & 1
        np.maximum(best, cut, out=best)
    return best


def test_c10_bipartization_oracle(verdict_line):
    mismatches = 0
    checked = 0
    for n in range(1, 7):
        masks = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
        edges = np.array([bin(m).count("1") for m in masks.tolist()])
        expected = edges - maxcut_all_colourings(n, masks)
        for m, want in zip(masks.tolist(), expected.tolist()):
            mismatches += min_bipartization(Graph.from_mask(n, m)) != want
        checked += masks.size
    rng = np.random.default_rng(10)
    sampled = 0
    for n in range(7, 11):
        pairs = n * (n - 1) // 2
        masks = np.array([sum(1 << k for k in range(pairs) if rng.random() < p)
                          for p in rng.random(400)], dtype=np.int64)
        edges = np.array([bin(m).count("1") for m in masks.tolist()])
        expected = edges - maxcut_all_colourings(n, masks)
        for m, want in zip(masks.tolist(), expected.tolist()):
            mismatches += min_bipartization(Graph.from_mask(n, m)) != want
        sampled += masks.size
    examples = (min_bipartization(complete(5)), min_bipartization(cycle(5)),
                min_bipartization(complete(3)))
    ok = mismatches == 0 and examples == (4, 1, 1)
    verdict_line("C10 bipartization vs brute force", ok,
                 f"all {checked} labelled graphs n<=6 and {sampled} random graphs n=7..10 "
                 f"against all-colourings max cut, {mismatches} mismatches; K5,C5,K3 -> {examples}")
    assert ok


# -- 11 ----------------------------------------------------------------------

def test_c11_determinism(tmp_path, verdict_line):
    outputs = []
    for tag in ("first", "second"):
        recs = run_sweep(enumerate_source(4), CHECK_IDS) + \
            run_sweep(random_source(15, n_max=20, seed=7), CHECK_IDS)
        emit_report(recs, tmp_path / f"{tag}.jsonl", tmp_path / f"{tag}.csv")
        outputs.append((without_timing(tmp_path / f"{tag}.jsonl"),
                        (tmp_path / f"{tag}.csv").read_text()))
    ok = outputs[0] == outputs[1]
    verdict_line("C11 determinism", ok,
                 f"{len(outputs[0][0])} detail records and summary identical excluding timing")
    assert ok
