"""The two extremal families and validators for their claimed properties.

Vertex numbering is fixed: the first block comes first, then the interior of
the connecting path, then the second block.  A path "of length L" has L
edges; its two ends are shared with the blocks, so it adds L - 1 vertices.

``thm2(k, D)``
    triangle on ``{0, 1, 2}`` (``u1 = 0, u2 = 1, v1 = 2``), a path from
    vertex 2 of length ``n - 2k - 2``, and K_{k,k} on the last ``2k``
    vertices (parts ``[n-2k, n-k)`` and ``[n-k, n)``); the path ends at
    vertex ``n - 2k``.  Order ``n = D + 2k - 1``.
``thm3(n, ε)``
    K_{r,r} on ``[0, 2r)`` (parts ``[0, r)`` and ``[r, 2r)``), a path from
    vertex 0 of length ``n - 2r - s + 1``, and K_s on the last ``s``
    vertices, entered at vertex ``n - s``.  ``r = ⌈n/4⌉ + 1`` and
    ``s = ⌈(1/2 - ε) n⌉``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import graph6
from .bounds import (DEFAULT_POLICY, BoundVerdict, TolerancePolicy, Verdict, _adaptive,
                     check_nonbipartite_gap, decide)
from .eig import SpectralOracle
from .graph import Graph, build_graph, distances, is_connected, two_coloring
from .interval import Interval, iroot_bounds


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    k: int | None = None
    D: int | None = None
    n: int | None = None
    eps: Fraction | None = None

    @property
    def label(self) -> str:
        if self.family == "thm2":
            return f"thm2(k={self.k},D={self.D})"
        return f"thm3(n={self.n},eps={self.eps})"


@dataclass
class ConstructionReport:
    spec: ConstructionSpec
    graph: Graph
    derived: dict[str, int | Fraction]
    claims: list[BoundVerdict] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.verdict is Verdict.HOLDS for c in self.claims)

    @property
    def verdict(self) -> Verdict:
        vs = {c.verdict for c in self.claims}
        if Verdict.FAILS in vs:
            return Verdict.FAILS
        if Verdict.UNDECIDED in vs:
            return Verdict.UNDECIDED
        return Verdict.HOLDS

    def claim(self, check_id: str) -> BoundVerdict:
        return next(c for c in self.claims if c.check_id == check_id)

    @property
    def graph6(self) -> str:
        return graph6.encode(self.graph)


def _exact_claim(check_id: str, lhs, rhs, relation: str, notes: str = "") -> BoundVerdict:
    left, right = Interval.point(lhs), Interval.point(rhs)
    return BoundVerdict(check_id, left, right, decide(left, right, relation),
                        notes=notes, relation=relation)


def _flag(check_id: str, ok: bool, notes: str = "") -> BoundVerdict:
    return _exact_claim(check_id, int(ok), 1, "==", notes)


def _join(n: int, first_edges, path_start: int, path_len: int, interior_start: int,
          path_end: int, second_edges) -> Graph:
    chain = [path_start] + list(range(interior_start, interior_start + path_len - 1)) + [path_end]
    return build_graph(n, list(first_edges) + list(zip(chain, chain[1:])) + list(second_edges))


# ---------------------------------------------------------------------------
# Triangle + path + K_{k,k}

def theorem2_graph(k: int, D: int) -> Graph:
    if k < 3 or D < 4:
        raise ConstructionError(f"need k >= 3 and D >= 4, got k={k}, D={D}")
    n = D + 2 * k - 1
    path_len = n - 2 * k - 2
    a0 = n - 2 * k
    kkk = [(a0 + i, a0 + k + j) for i in range(k) for j in range(k)]
    return _join(n, [(0, 1), (0, 2), (1, 2)], 2, path_len, 3, a0, kkk)


def build_theorem2_construction(k: int, D: int, policy: TolerancePolicy = DEFAULT_POLICY
                                ) -> ConstructionReport:
    g = theorem2_graph(k, D)
    n = D + 2 * k - 1
    spec = ConstructionSpec("thm2", k=k, D=D, n=n)
    diam = distances(g).diameter
    derived = {"n": n, "path_length": n - 2 * k - 2}
    rep = ConstructionReport(spec, g, derived)
    rep.claims.append(_exact_claim("C2_ORDER", g.n, n, "=="))
    rep.claims.append(_exact_claim("C2_DIAMETER", diam, D, "==", f"n - 2k + 1 = {n - 2 * k + 1}"))
    rep.claims.append(_flag("C2_CONNECTED", is_connected(g)))
    rep.claims.append(_flag("C2_NONBIPARTITE", two_coloring(g)[1] is not None))

    o = SpectralOracle(g, max_bits=policy.max_bits)
    rep.claims.append(_adaptive("C2_MU_GT_K", lambda w: (o.mu(w), Interval.point(k)),
                                Fraction(1), ">", policy, (o,), {}))
    bound = Interval.point(Fraction(4, (k - 1) ** (2 * D - 4)))
    rep.claims.append(_adaptive(
        "C2_UPPER", lambda w: (o.mu(w / 2) + o.mu_min(w / 2), bound), bound.lo, "<",
        policy, (o,), {}, notes="mu + mu_min < 4/(k-1)^(2D-4)"))
    rep.claims.append(check_nonbipartite_gap(g, policy, cache={g: o}))
    return rep


# ---------------------------------------------------------------------------
# K_{r,r} + path + K_s

def theorem3_parameters(n: int, eps) -> dict[str, int]:
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 16):
        raise ConstructionError(f"eps must lie in (0, 1/16), got {eps}")
    r = math.ceil(Fraction(n, 4)) + 1
    s = math.ceil((Fraction(1, 2) - eps) * n)
    path_len = n - 2 * r - s + 1
    if path_len < 1 or 2 * r + s > n:
        raise ConstructionError(
            f"n={n} too small for eps={eps}: path length {path_len} (r={r}, s={s})")
    return {"r": r, "s": s, "path_length": path_len}


def theorem3_graph(n: int, eps) -> Graph:
    p = theorem3_parameters(n, eps)
    r, s = p["r"], p["s"]
    krr = [(i, r + j) for i in range(r) for j in range(r)]
    k0 = n - s
    ks = [(k0 + i, k0 + j) for j in range(s) for i in range(j)]
    return _join(n, krr, 0, p["path_length"], 2 * r, k0, ks)


def _power_bound(n: int, exponent: Fraction) -> Interval:
    """Enclosure of ``n ** (-exponent)`` for rational ``exponent > 0``."""
    p, q = exponent.numerator, exponent.denominator
    lo, hi = iroot_bounds(Fraction(n ** p), q)
    return Interval(1 / hi, 1 / lo)


def build_theorem3_construction(n: int, eps, policy: TolerancePolicy = DEFAULT_POLICY
                                ) -> ConstructionReport:
    eps = Fraction(eps)
    params = theorem3_parameters(n, eps)
    g = theorem3_graph(n, eps)
    s, plen = params["s"], params["path_length"]
    spec = ConstructionSpec("thm3", n=n, eps=eps)
    ks_deletions = math.comb(s, 2) - s * s // 4
    target = (Fraction(1, 16) - eps) * n * n
    derived = dict(params, ks_deletions=ks_deletions, deletion_target=target)
    rep = ConstructionReport(spec, g, derived)
    rep.claims.append(_exact_claim("C3_ORDER", g.n, n, "=="))
    rep.claims.append(_flag("C3_CONNECTED", is_connected(g)))

    links = [
        ("C(s,2) - floor(s^2/4) >= s^2/4 - s/2", ks_deletions >= Fraction(s * s, 4) - Fraction(s, 2)),
        ("s >= (1/2-eps) n", s >= (Fraction(1, 2) - eps) * n),
        ("((1/2-eps) n)^2/4 - s/2 >= (1/16-eps) n^2",
         ((Fraction(1, 2) - eps) * n) ** 2 / 4 - Fraction(s, 2) >= target),
    ]
    notes = "; ".join(f"{text}: {'holds' if ok else 'fails'}" for text, ok in links)
    rep.claims.append(_exact_claim("C3_BIPARTIZATION", ks_deletions, target, ">=", notes))
    rep.claims.append(_exact_claim("C3_PATH_LENGTH", plen, eps * n - 4, ">"))

    o = SpectralOracle(g, max_bits=policy.max_bits)
    bound = _power_bound(n, eps * n)
    rep.claims.append(_adaptive(
        "C3_UPPER", lambda w: (o.mu(w / 2) + o.mu_min(w / 2), bound), bound.lo, "<",
        policy, (o,), {}, notes="mu + mu_min < n^(-eps n)"))
    return rep
