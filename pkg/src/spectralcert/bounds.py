"""Certified evaluators for the spectral bounds.

Each checker computes enclosures of both sides of one inequality and returns
:class:`BoundVerdict` objects.  A claim ``lhs > rhs`` is ``Holds-certified``
only when ``lhs.lo > rhs.hi`` and ``Fails-certified`` only when
``lhs.hi <= rhs.lo``; anything in between is ``Undecided``.

Checkers raise :class:`HypothesisFailure` when the input does not satisfy the
hypotheses of the claim.  Multi-claim checkers mark individual inapplicable
claims as ``skipped`` and raise only when nothing applies.

Symbols: ``μ`` is the largest and ``μ_min`` the smallest adjacency eigenvalue,
``D`` the diameter of the host graph ``G`` and ``n`` its order.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .eig import (DEFAULT_MAX_BITS, SpectralOracle, Undecided, eigenvector_estimate,
                  perron_vector_estimate)
from .graph import (DISCONNECTED, Graph, GraphError, bfs, distances, is_connected,
                    structure_flags, two_coloring)
from .interval import Interval


class Verdict(str, enum.Enum):
    HOLDS = "Holds-certified"
    FAILS = "Fails-certified"
    UNDECIDED = "Undecided"
    SKIPPED = "skipped"

    def __str__(self) -> str:
        return self.value


CHECK_IDS = ("T1", "T1a_strong", "T2", "T11", "T21", "T4", "CGN",
             "P1", "P1_MINMAX", "P2", "WALK", "P2_CITED", "SACHS", "DIST_LEMMA")


class HypothesisFailure(ValueError):
    """The input violates a hypothesis of the checked statement."""

    def __init__(self, message: str, report: dict[str, bool] | None = None):
        super().__init__(message)
        self.report = report or {}


@dataclass
class BoundVerdict:
    check_id: str
    lhs: Interval | None
    rhs: Interval | None
    verdict: Verdict
    hypothesis_report: dict[str, bool] = field(default_factory=dict)
    precision_bits: int = 0
    notes: str = ""
    relation: str = ">"

    @property
    def margin(self) -> Fraction | None:
        """Certified slack of the claim (negative when not certified)."""
        if self.lhs is None or self.rhs is None:
            return None
        if self.relation in (">", ">="):
            return self.lhs.lo - self.rhs.hi
        if self.relation == "==":
            return -max(self.lhs.hi - self.rhs.lo, self.rhs.hi - self.lhs.lo)
        if self.relation == "~":
            return min(self.rhs.hi - self.lhs.lo, self.lhs.hi - self.rhs.lo)
        return self.rhs.lo - self.lhs.hi

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def decide(lhs: Interval, rhs: Interval, relation: str = ">") -> Verdict:
    """Three-valued verdict for ``lhs <relation> rhs``."""
    if relation == ">":
        holds, fails = lhs.lo > rhs.hi, lhs.hi <= rhs.lo
    elif relation == ">=":
        holds, fails = lhs.lo >= rhs.hi, lhs.hi < rhs.lo
    elif relation == "<":
        holds, fails = lhs.hi < rhs.lo, lhs.lo >= rhs.hi
    elif relation == "<=":
        holds, fails = lhs.hi <= rhs.lo, lhs.lo > rhs.hi
    elif relation == "==":
        holds = lhs.lo == lhs.hi == rhs.lo == rhs.hi
        fails = lhs.hi < rhs.lo or rhs.hi < lhs.lo
    elif relation == "~":
        # consistency: the enclosures overlap
        holds = not (lhs.hi < rhs.lo or rhs.hi < lhs.lo)
        fails = not holds
    else:
        raise ValueError(f"unknown relation {relation!r}")
    if holds:
        return Verdict.HOLDS
    if fails:
        return Verdict.FAILS
    return Verdict.UNDECIDED


@dataclass(frozen=True)
class TolerancePolicy:
    """Enclosure widths requested by the checkers.

    A coarse pass is tried first; if it does not decide, widths
    ``|rhs| / first_factor`` and then ``|rhs| / retry_factor`` follow.
    """

    coarse: Fraction = Fraction(1, 1 << 16)
    first_factor: int = 8
    retry_factor: int = 64
    max_bits: int = DEFAULT_MAX_BITS

    def widths(self, scale: Fraction) -> list[Fraction]:
        scale = abs(Fraction(scale))
        out = [self.coarse]
        if scale > 0:
            out += [scale / self.first_factor, scale / self.retry_factor]
        return out


DEFAULT_POLICY = TolerancePolicy()

OracleCache = dict


def oracle_for(g: Graph, cache: OracleCache | None = None,
               policy: TolerancePolicy = DEFAULT_POLICY) -> SpectralOracle:
    if cache is None:
        return SpectralOracle(g, max_bits=policy.max_bits)
    o = cache.get(g)
    if o is None:
        o = cache[g] = SpectralOracle(g, max_bits=policy.max_bits)
    return o


def _adaptive(check_id: str, evaluate: Callable[[Fraction], tuple[Interval, Interval]],
              scale: Fraction, relation: str, policy: TolerancePolicy,
              oracles: Sequence[SpectralOracle], report: dict[str, bool],
              notes: str = "") -> BoundVerdict:
    verdict = Verdict.UNDECIDED
    lhs = rhs = None
    for width in policy.widths(scale):
        lhs, rhs = evaluate(width)
        verdict = decide(lhs, rhs, relation)
        if verdict is not Verdict.UNDECIDED:
            break
    bits = max((o.bits_used for o in oracles), default=0)
    capped = any(o.capped for o in oracles)
    if capped and verdict is Verdict.UNDECIDED:
        notes = (notes + "; " if notes else "") + "precision cap reached"
    return BoundVerdict(check_id, lhs, rhs, verdict, dict(report), bits, notes, relation)


def _diameter(g: Graph) -> int:
    d = distances(g).diameter
    if d is DISCONNECTED:
        raise HypothesisFailure("graph is disconnected", {"G connected": False})
    return d


def _as_subgraph(g: Graph, h) -> Graph:
    if isinstance(h, Graph):
        if h.n != g.n:
            raise HypothesisFailure("subgraph must be padded to the host's vertex set",
                                    {"same vertex set": False})
        if not h.is_edge_subgraph_of(g):
            raise HypothesisFailure("H is not a subgraph of G", {"H subgraph of G": False})
        return h
    try:
        return g.edge_subgraph(h)
    except GraphError as exc:
        raise HypothesisFailure(str(exc), {"H subgraph of G": False}) from None


def _skipped(check_id: str, report: dict[str, bool], notes: str,
             relation: str = ">") -> BoundVerdict:
    return BoundVerdict(check_id, None, None, Verdict.SKIPPED, dict(report), 0, notes, relation)


def _spectral_rhs(mu: Interval, d: int, n: int, numerator: int = 1) -> Interval:
    # numerator / (mu^{2D} n)
    return Interval.point(numerator) / (mu ** (2 * d) * n)


# ---------------------------------------------------------------------------
# Subgraph gap

def check_subgraph_gap(g: Graph, h, policy: TolerancePolicy = DEFAULT_POLICY,
                       cache: OracleCache | None = None) -> list[BoundVerdict]:
    """``μ(G) - μ(H) > 1/(μ(G)^{2D} n)`` and, for connected ``H``, the
    stronger ``2/(μ(G)^{2D} n)``."""
    h = _as_subgraph(g, h)
    report = {"G connected": is_connected(g)}
    if not report["G connected"]:
        raise HypothesisFailure("G is disconnected", report)
    report["H proper subgraph"] = h.m < g.m
    if not report["H proper subgraph"]:
        raise HypothesisFailure("H is not a proper subgraph of G", report)
    report["H connected"] = is_connected(h)
    og, oh = oracle_for(g, cache, policy), oracle_for(h, cache, policy)
    return subgraph_gap_verdicts(og, oh, _diameter(g), g.n, report, policy)


def subgraph_gap_verdicts(og: SpectralOracle, oh: SpectralOracle, d: int, n: int,
                          report: dict[str, bool], policy: TolerancePolicy = DEFAULT_POLICY
                          ) -> list[BoundVerdict]:
    scale = _spectral_rhs(og.mu(), d, n).lo

    def evaluate(numerator):
        def ev(width):
            mu_g = og.mu(width / 2)
            return mu_g - oh.mu(width / 2), _spectral_rhs(mu_g, d, n, numerator)
        return ev

    out = [_adaptive("T1", evaluate(1), scale, ">", policy, (og, oh), report)]
    if report["H connected"]:
        out.append(_adaptive("T1a_strong", evaluate(2), 2 * scale, ">", policy, (og, oh), report))
    else:
        out.append(_skipped("T1a_strong", report, "H disconnected"))
    return out


# ---------------------------------------------------------------------------
# Nonbipartite gap

def _require_connected_nonbipartite(g: Graph) -> dict[str, bool]:
    colour, odd = two_coloring(g)
    report = {"G connected": is_connected(g), "G nonbipartite": odd is not None}
    if not report["G connected"]:
        raise HypothesisFailure("G is disconnected", report)
    if not report["G nonbipartite"]:
        raise HypothesisFailure("G is bipartite", report)
    return report


def check_nonbipartite_gap(g: Graph, policy: TolerancePolicy = DEFAULT_POLICY,
                           cache: OracleCache | None = None) -> BoundVerdict:
    """``μ(G) + μ_min(G) > 2/(μ(G)^{2D} n)``."""
    report = _require_connected_nonbipartite(g)
    return nonbipartite_gap_verdict(oracle_for(g, cache, policy), _diameter(g), g.n,
                                    report, policy)


def nonbipartite_gap_verdict(og: SpectralOracle, d: int, n: int, report: dict[str, bool],
                             policy: TolerancePolicy = DEFAULT_POLICY) -> BoundVerdict:
    scale = _spectral_rhs(og.mu(), d, n, 2).lo

    def ev(width):
        mu = og.mu(width / 2)
        return mu + og.mu_min(width / 2), _spectral_rhs(mu, d, n, 2)

    return _adaptive("T2", ev, scale, ">", policy, (og,), report)


# ---------------------------------------------------------------------------
# Regular variants

def check_regular_variants(g: Graph, h=None, policy: TolerancePolicy = DEFAULT_POLICY,
                           cache: OracleCache | None = None) -> list[BoundVerdict]:
    """T11: ``μ(G) - μ(H) > 1/(n(D+1))``; T21: ``μ + μ_min > 2/(n(2D+1))``."""
    stats = structure_flags(g)
    report = {"G connected": stats.is_connected, "G regular": stats.is_regular}
    if not stats.is_connected:
        raise HypothesisFailure("G is disconnected", report)
    if not stats.is_regular:
        raise HypothesisFailure("G is not regular", report)
    d, n = stats.diameter, g.n
    og = oracle_for(g, cache, policy)
    out = []
    if h is not None:
        hh = _as_subgraph(g, h)
        rep = dict(report, **{"H proper subgraph": hh.m < g.m})
        if not rep["H proper subgraph"]:
            raise HypothesisFailure("H is not a proper subgraph of G", rep)
        out.append(regular_subgraph_verdict(og, oracle_for(hh, cache, policy), d, n, rep, policy))
    rep = dict(report, **{"G nonbipartite": not stats.is_bipartite})
    if stats.is_bipartite:
        out.append(_skipped("T21", rep, "G bipartite"))
    else:
        out.append(regular_nonbipartite_verdict(og, d, n, rep, policy))
    if all(v.verdict is Verdict.SKIPPED for v in out):
        raise HypothesisFailure("no regular-variant claim applies", rep)
    return out


def regular_subgraph_verdict(og: SpectralOracle, oh: SpectralOracle, d: int, n: int,
                             report: dict[str, bool], policy: TolerancePolicy = DEFAULT_POLICY
                             ) -> BoundVerdict:
    rhs = Interval.point(Fraction(1, n * (d + 1)))
    return _adaptive("T11", lambda w: (og.mu(w / 2) - oh.mu(w / 2), rhs),
                     rhs.lo, ">", policy, (og, oh), report)


def regular_nonbipartite_verdict(og: SpectralOracle, d: int, n: int, report: dict[str, bool],
                                 policy: TolerancePolicy = DEFAULT_POLICY) -> BoundVerdict:
    rhs = Interval.point(Fraction(2, n * (2 * d + 1)))
    return _adaptive("T21", lambda w: (og.mu(w / 2) + og.mu_min(w / 2), rhs),
                     rhs.lo, ">", policy, (og,), report)


# ---------------------------------------------------------------------------
# Degree gaps for nonregular graphs

def check_theorem4(g: Graph, policy: TolerancePolicy = DEFAULT_POLICY,
                   cache: OracleCache | None = None) -> list[BoundVerdict]:
    """T4: ``Δ + μ_min > 1/(n(D+1)) + 1/(μ^{2D} n)`` (nonbipartite) and
    CGN: ``Δ - μ > (nΔ - 2m) / (n(D(nΔ - 2m) + 1))``."""
    stats = structure_flags(g)
    report = {"G connected": stats.is_connected, "G nonregular": not stats.is_regular}
    if not stats.is_connected:
        raise HypothesisFailure("G is disconnected", report)
    if stats.is_regular:
        raise HypothesisFailure("G is regular", report)
    d, n, m, delta = stats.diameter, g.n, g.m, stats.max_degree
    og = oracle_for(g, cache, policy)
    out = []
    rep4 = dict(report, **{"G nonbipartite": not stats.is_bipartite})
    if stats.is_bipartite:
        out.append(_skipped("T4", rep4, "G bipartite"))
    else:
        out.append(degree_gap_verdict(og, d, n, delta, rep4, policy))
    out.append(cgn_verdict(og, d, n, m, delta, report, policy))
    return out


def degree_gap_verdict(og: SpectralOracle, d: int, n: int, delta: int,
                       report: dict[str, bool], policy: TolerancePolicy = DEFAULT_POLICY
                       ) -> BoundVerdict:
    const = Fraction(1, n * (d + 1))

    def ev(width):
        mu = og.mu(width / 2)
        return delta + og.mu_min(width / 2), const + _spectral_rhs(mu, d, n)

    return _adaptive("T4", ev, const, ">", policy, (og,), report)


def cgn_verdict(og: SpectralOracle, d: int, n: int, m: int, delta: int,
                report: dict[str, bool], policy: TolerancePolicy = DEFAULT_POLICY
                ) -> BoundVerdict:
    excess = n * delta - 2 * m
    rhs = Interval.point(Fraction(excess, n * (d * excess + 1)))
    return _adaptive("CGN", lambda w: (delta - og.mu(w), rhs), rhs.lo, ">",
                     policy, (og,), report)


# ---------------------------------------------------------------------------
# Eigenvector entry ratios

def _tight_pairs(g: Graph) -> set[tuple[int, int]]:
    """Ordered pairs ``(i, j)`` where ``x_i / x_j = 1/μ`` exactly.

    For a leaf ``i`` with neighbour ``j`` the eigen-equation reads
    ``μ x_i = x_j``; no other pair attains the ratio bound.
    """
    return {(i, g.neighbors(i)[0]) for i in range(g.n) if g.degree(i) == 1}


def _ratio_verdicts(g: Graph, est, mu: Interval, dm) -> tuple[BoundVerdict, BoundVerdict]:
    n = g.n
    tight = _tight_pairs(g)
    xs = [est.entry(i) for i in range(n)]
    powers = {}
    lo_min = hi_min = None
    undecidable = 0
    worst = None
    for i, j in itertools.permutations(range(n), 2):
        if (i, j) in tight:
            continue
        d = dm[i, j]
        if xs[j].lo <= 0:
            undecidable += 1
            continue
        if d not in powers:
            powers[d] = mu ** d
        r = Interval(max(xs[i].lo, Fraction(0)), xs[i].hi) * powers[d] / xs[j]
        if lo_min is None or r.lo < lo_min:
            lo_min, worst = r.lo, (i, j)
        if hi_min is None or r.hi < hi_min:
            hi_min = r.hi
    one = Interval.point(1)
    notes = f"{len(tight)} tight leaf pairs"
    if worst is not None:
        notes += f"; tightest pair {worst}"
    if lo_min is None:
        # no non-tight pairs: every pair satisfies the bound with equality
        ratio = BoundVerdict("P1", one, one, Verdict.HOLDS if not undecidable else Verdict.UNDECIDED,
                             notes=notes, relation=">=")
    else:
        lhs = Interval(lo_min, hi_min)
        v = decide(lhs, one, ">")
        if undecidable and v is Verdict.HOLDS:
            v = Verdict.UNDECIDED
        ratio = BoundVerdict("P1", lhs, one, v, notes=notes, relation=">=")
    # x_min / x_max >= μ^{-(n-1)}
    if n <= 2:
        mm = BoundVerdict("P1_MINMAX", one, one, Verdict.HOLDS,
                          notes="n <= 2: equality from the eigen-equation", relation=">=")
    else:
        xmin = Interval(min(x.lo for x in xs), min(x.hi for x in xs))
        xmax = Interval(max(x.lo for x in xs), max(x.hi for x in xs))
        if xmin.lo <= 0:
            mm = BoundVerdict("P1_MINMAX", None, one, Verdict.UNDECIDED,
                              notes="entry error too large", relation=">=")
        else:
            lhs = xmin * mu ** (n - 1) / xmax
            mm = BoundVerdict("P1_MINMAX", lhs, one, decide(lhs, one, ">="), relation=">=")
    return ratio, mm


def check_eigenvector_ratio(g: Graph, policy: TolerancePolicy = DEFAULT_POLICY,
                            cache: OracleCache | None = None) -> list[BoundVerdict]:
    """``x_i / x_j >= μ^{-dist(i,j)}`` for all pairs, plus the min/max corollary.

    The lhs reported for P1 is the minimum over non-tight pairs of
    ``x_i μ^{dist(i,j)} / x_j`` and the rhs is 1.
    """
    report = {"G connected": is_connected(g)}
    if not report["G connected"]:
        raise HypothesisFailure("G is disconnected", report)
    og = oracle_for(g, cache, policy)
    dm = distances(g)
    out = None
    for tol in (Fraction(1, 10**12), Fraction(1, 1 << 120)):
        try:
            est = perron_vector_estimate(g, tol, og)
        except Undecided as exc:
            out = [BoundVerdict(c, None, Interval.point(1), Verdict.UNDECIDED, dict(report),
                                og.bits_used, str(exc), ">=") for c in ("P1", "P1_MINMAX")]
            continue
        mu = og.mu(min(tol, est.eigenvalue.width))
        out = list(_ratio_verdicts(g, est, mu, dm))
        for v in out:
            v.hypothesis_report = dict(report)
            v.precision_bits = og.bits_used
            v.notes = (v.notes + "; " if v.notes else "") + f"delta={float(est.delta):.3g}"
        if all(v.verdict is not Verdict.UNDECIDED for v in out):
            break
    return out


# ---------------------------------------------------------------------------
# Diameter power bound and walk counts

def check_diameter_power(g: Graph, policy: TolerancePolicy = DEFAULT_POLICY,
                         cache: OracleCache | None = None) -> list[BoundVerdict]:
    """P2: ``μ^D > n/√3``; WALK: ``w_D + w_{D+1} >= n²``;
    P2_CITED: ``μ^{D-1} + μ^D >= n``."""
    from .graph import count_walks

    report = {"G connected": is_connected(g), "n >= 3": g.n >= 3}
    if not report["G connected"]:
        raise HypothesisFailure("G is disconnected", report)
    if not report["n >= 3"]:
        raise HypothesisFailure("needs at least 3 vertices", report)
    d, n = _diameter(g), g.n
    walks = count_walks(g, d) + count_walks(g, d + 1)
    return diameter_power_verdicts(oracle_for(g, cache, policy), d, n, walks, report, policy)


def diameter_power_verdicts(og: SpectralOracle, d: int, n: int, walks: int,
                            report: dict[str, bool], policy: TolerancePolicy = DEFAULT_POLICY
                            ) -> list[BoundVerdict]:
    """``walks`` is the exact value of ``w_D + w_{D+1}``."""
    rhs_p2 = Interval.point(n) / Interval.point(3).sqrt()
    p2 = _adaptive("P2", lambda w: (og.mu(w) ** d, rhs_p2), rhs_p2.lo, ">",
                   policy, (og,), report)
    walk = BoundVerdict("WALK", Interval.point(walks), Interval.point(n * n),
                        decide(Interval.point(walks), Interval.point(n * n), ">="),
                        dict(report), 0, f"w_D + w_(D+1) = {walks}", ">=")

    def ev(w):
        mu = og.mu(w)
        return mu ** (d - 1) + mu ** d, Interval.point(n)

    cited = _adaptive("P2_CITED", ev, Fraction(n), ">=", policy, (og,), report)
    return [p2, walk, cited]


# ---------------------------------------------------------------------------
# Sign of mu + mu_min

def check_sachs(g: Graph, policy: TolerancePolicy = DEFAULT_POLICY,
                cache: OracleCache | None = None) -> BoundVerdict:
    """Connected bipartite graphs have ``μ + μ_min = 0``; all other connected
    graphs have ``μ + μ_min > 0``."""
    stats = structure_flags(g)
    report = {"G connected": stats.is_connected, "G bipartite": stats.is_bipartite}
    if not stats.is_connected:
        raise HypothesisFailure("G is disconnected", report)
    return sachs_verdict(oracle_for(g, cache, policy), stats.is_bipartite, report, policy)


def sachs_verdict(og: SpectralOracle, bipartite: bool, report: dict[str, bool],
                  policy: TolerancePolicy = DEFAULT_POLICY) -> BoundVerdict:
    zero = Interval.point(0)
    if not bipartite:
        return _adaptive("SACHS", lambda w: (og.mu(w / 2) + og.mu_min(w / 2), zero),
                         Fraction(0), ">", policy, (og,), report)
    # the enclosure of a true zero must straddle it; a certified nonzero refutes
    w = policy.coarse
    lhs = og.mu(w / 2) + og.mu_min(w / 2)
    return BoundVerdict("SACHS", lhs, zero, decide(lhs, zero, "~"), dict(report), og.bits_used,
                        "bipartite: enclosure must contain 0", "~")


# ---------------------------------------------------------------------------
# Distance lemma for an edge deletion

def edge_deletion_distance_lemma(g: Graph, e: tuple[int, int]) -> BoundVerdict:
    """``dist_H(w,u) + dist_H(w,v) <= 2D`` for all ``w``, where ``H = G - uv``."""
    u, v = e
    report = {"G connected": is_connected(g), "uv edge of G": g.has_edge(u, v)}
    if not report["G connected"]:
        raise HypothesisFailure("G is disconnected", report)
    if not report["uv edge of G"]:
        raise HypothesisFailure(f"({u},{v}) is not an edge", report)
    h = g.remove_edge(u, v)
    report["G - uv connected"] = is_connected(h)
    if not report["G - uv connected"]:
        raise HypothesisFailure("G - uv is disconnected", report)
    d = _diameter(g)
    du, dv = bfs(h, u), bfs(h, v)
    sums = [a + b for a, b in zip(du, dv)]
    worst = max(range(g.n), key=lambda w: sums[w])
    lhs, rhs = Interval.point(sums[worst]), Interval.point(2 * d)
    return BoundVerdict("DIST_LEMMA", lhs, rhs, decide(lhs, rhs, "<="), report, 0,
                        f"max attained at w={worst}", "<=")


# ---------------------------------------------------------------------------
# Sign-cut bipartite subgraph

@dataclass
class SignCutReport:
    negative_side: tuple[int, ...]
    near_zero: tuple[int, ...]
    delta: Fraction
    multiplicity: int
    spanning: bool
    bipartite: bool
    proper: bool
    connected: bool
    dropped_edges: int
    mu_min_drop: Verdict | None = None

    @property
    def ok(self) -> bool:
        return self.spanning and self.bipartite and self.proper


def sign_cut_subgraph(g: Graph, tol=Fraction(1, 10**12), check_drop: bool = True,
                      cache: OracleCache | None = None) -> tuple[Graph, SignCutReport]:
    """Spanning subgraph of edges crossing ``V1 = {u : x_u < 0}`` for an
    eigenvector ``x`` of ``μ_min``.

    Entries within the certified error of zero go to the nonnegative side and
    are listed in ``near_zero``.
    """
    _require_connected_nonbipartite(g)
    og = oracle_for(g, cache)
    est = eigenvector_estimate(g, "min", Fraction(tol), og)
    near = tuple(i for i, x in enumerate(est.entries) if abs(x) <= est.delta)
    if len(near) == g.n:
        raise Undecided("eigenvector error too large to fix any sign")
    neg = tuple(i for i, x in enumerate(est.entries) if x < 0 and i not in near)
    side = [1 if i in neg else 0 for i in range(g.n)]
    h = g.edge_subgraph([(u, v) for u, v in g.edges() if side[u] != side[v]])
    colour, _ = two_coloring(h)
    report = SignCutReport(
        negative_side=neg,
        near_zero=near,
        delta=est.delta,
        multiplicity=est.multiplicity,
        spanning=h.n == g.n,
        bipartite=colour is not None,
        proper=h.m < g.m,
        connected=is_connected(h),
        dropped_edges=g.m - h.m,
    )
    if check_drop:
        oh = oracle_for(h, cache)
        w = Fraction(1, 1 << 40)
        report.mu_min_drop = decide(oh.mu_min(w), og.mu_min(w), "<")
    return h, report


# ---------------------------------------------------------------------------
# Bipartization number

MAX_BIPARTIZATION_N = 24


def min_bipartization(g: Graph) -> int:
    """Fewest edge deletions making ``g`` bipartite, i.e. ``m - maxcut``.

    Exhaustive over the ``2**(n-1)`` cuts with the last vertex fixed.
    """
    n = g.n
    if n > MAX_BIPARTIZATION_N:
        raise ValueError(
            f"exact bipartization is capped at n={MAX_BIPARTIZATION_N}; "
            "use the analytic lower bound for complete subgraphs instead")
    if g.m == 0 or n == 1:
        return 0
    edges = np.array(g.edges(), dtype=np.int64)
    total = 1 << (n - 1)
    best = 0
    chunk = 1 << 20
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cut = np.zeros(masks.size, dtype=np.int32)
        for u, v in edges:
            cut += ((masks >> u) ^ (masks >> v)) & 1
        best = max(best, int(cut.max()))
    return g.m - best
