"""Exhaustive sweeps over every connected labelled graph of order ``n <= 7``.

Spectral verdicts depend only on the characteristic polynomial and a few
integer invariants (diameter, degrees, edge count, walk counts).  The engine
groups work items by those keys, certifies one representative per key with
the ordinary checkers, and weights the verdict by the number of items that
share the key.  Eigenvector checks cannot be grouped this way; they use a
batched float eigensolver with a rigorous residual bound and fall back to
the exact per-graph checker whenever the float bound does not decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bounds import (CHECK_IDS, DEFAULT_POLICY, TolerancePolicy, Verdict,
                     cgn_verdict, check_eigenvector_ratio, decide, degree_gap_verdict,
                     diameter_power_verdicts, nonbipartite_gap_verdict,
                     regular_nonbipartite_verdict, regular_subgraph_verdict, sachs_verdict,
                     sign_cut_subgraph, subgraph_gap_verdicts)
from .eig import SpectralOracle, Undecided
from .graph import Graph
from .masks import adjacency_stack, connected_masks, mask_table, pair_arrays

BATCH = 1 << 15
_U = 2.0 ** -53
# relative slack absorbing the handful of float operations in each comparison
_SLACK = 1e-8

EDGE_CHECKS = ("T1", "T1a_strong", "T11", "DIST_LEMMA")


@dataclass
class CheckTally:
    """Verdict counts for one check id over a sweep."""

    check_id: str
    holds: int = 0
    fails: int = 0
    undecided: int = 0
    skipped: int = 0
    min_margin: Fraction | None = None
    max_bits: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.holds + self.fails + self.undecided + self.skipped

    def add(self, verdict: Verdict, count: int = 1, margin=None, bits: int = 0,
            witness=None) -> None:
        if verdict is Verdict.HOLDS:
            self.holds += count
        elif verdict is Verdict.FAILS:
            self.fails += count
        elif verdict is Verdict.UNDECIDED:
            self.undecided += count
        else:
            self.skipped += count
        if verdict is not Verdict.SKIPPED and margin is not None:
            if self.min_margin is None or margin < self.min_margin:
                self.min_margin = margin
        self.max_bits = max(self.max_bits, bits)
        if verdict in (Verdict.FAILS, Verdict.UNDECIDED) and witness is not None:
            if len(self.witnesses) < 20:
                self.witnesses.append(witness)

    def counts(self) -> dict[str, int]:
        return {"holds": self.holds, "fails": self.fails,
                "undecided": self.undecided, "skipped": self.skipped}


@dataclass
class SignCutTally:
    graphs: int = 0
    ok: int = 0
    connected: int = 0
    disconnected: list = field(default_factory=list)
    # disconnected cuts whose eigenvector had entries certified-close to zero
    disconnected_near_zero: int = 0
    near_zero: int = 0
    multiple: int = 0
    undecided: int = 0
    drop_holds: int = 0

    @property
    def connectivity_rate(self) -> float:
        return self.connected / self.graphs if self.graphs else 1.0

    @property
    def connectivity_rate_nonzero(self) -> float:
        """Connectivity over cuts whose eigenvector has no entry near zero."""
        base = self.graphs - self.near_zero - self.undecided
        bad = len(self.disconnected) - self.disconnected_near_zero
        return (base - bad) / base if base else 1.0


def _group(acc: dict, keys: np.ndarray, witnesses: np.ndarray) -> None:
    """Merge ``keys`` into ``acc`` as ``key -> [count, first witness]``."""
    if keys.size == 0:
        return
    uniq, first, counts = np.unique(keys, return_index=True, return_counts=True)
    for k, i, c in zip(uniq.tolist(), first.tolist(), counts.tolist()):
        slot = acc.get(k)
        if slot is None:
            acc[k] = [c, int(witnesses[i])]
        else:
            slot[0] += c


class ExhaustiveEngine:
    def __init__(self, n: int, policy: TolerancePolicy = DEFAULT_POLICY):
        self.n = n
        self.policy = policy
        self.table = mask_table(n)
        self.masks = connected_masks(n)
        polys, first, inverse = np.unique(self.table.charpoly, axis=0, return_index=True,
                                          return_inverse=True)
        self.polys = polys
        self.cpid = inverse.reshape(-1).astype(np.int64)
        self._rep = first
        self._oracles: dict[int, SpectralOracle] = {}
        self.ncp = len(polys)
        self.pi, self.pj = pair_arrays(n)

    @property
    def graph_count(self) -> int:
        return int(self.masks.size)

    def oracle(self, cp: int) -> SpectralOracle:
        o = self._oracles.get(cp)
        if o is None:
            g = Graph.from_mask(self.n, int(self._rep[cp]))
            o = SpectralOracle(g, max_bits=self.policy.max_bits,
                               charpoly_coeffs=[int(c) for c in self.polys[cp]])
            self._oracles[cp] = o
        return o

    def graph(self, mask: int) -> Graph:
        return Graph.from_mask(self.n, int(mask))

    # -- helpers -------------------------------------------------------

    def _edge_items(self, base: np.ndarray):
        """Yield ``(bit, G masks containing the bit, H = G minus that edge)``."""
        for b in range(self.n * (self.n - 1) // 2):
            g = base[(base >> b) & 1 == 1]
            yield b, g, g ^ (1 << b)

    def _apply(self, tallies, acc: dict, decode, evaluate, witness_of=lambda w: w) -> None:
        for key in sorted(acc):
            count, wit = acc[key]
            for v in evaluate(*decode(key)):
                t = tallies.get(v.check_id)
                if t is not None:
                    t.add(v.verdict, count, v.margin, v.precision_bits, witness_of(wit))

    # -- spectral checks grouped by key --------------------------------

    def _subgraph_checks(self, tallies) -> None:
        tab, C = self.table, self.ncp
        acc: dict = {}
        for b, g, h in self._edge_items(self.masks):
            key = (((self.cpid[g] * C + self.cpid[h]) * 8 + tab.diameter[g]) * 2
                   + tab.connected[h])
            _group(acc, key, g * 64 + b)

        def decode(k):
            k, hc = divmod(k, 2)
            k, d = divmod(k, 8)
            cg, ch = divmod(k, C)
            return cg, ch, d, bool(hc)

        def evaluate(cg, ch, d, hc):
            report = {"G connected": True, "H proper subgraph": True, "H connected": hc}
            return subgraph_gap_verdicts(self.oracle(cg), self.oracle(ch), d, self.n,
                                         report, self.policy)

        self._apply(tallies, acc, decode, evaluate, lambda w: divmod(w, 64))

    def _regular_edge_checks(self, tallies) -> None:
        tab, C = self.table, self.ncp
        regular = tab.max_degree[self.masks] == tab.min_degree[self.masks]
        tallies["T11"].add(Verdict.SKIPPED, int((~regular).sum()))
        acc: dict = {}
        for b, g, h in self._edge_items(self.masks[regular]):
            key = (self.cpid[g] * C + self.cpid[h]) * 8 + tab.diameter[g]
            _group(acc, key, g * 64 + b)

        def decode(k):
            k, d = divmod(k, 8)
            return divmod(k, C) + (d,)

        def evaluate(cg, ch, d):
            report = {"G connected": True, "G regular": True, "H proper subgraph": True}
            return [regular_subgraph_verdict(self.oracle(cg), self.oracle(ch), d, self.n,
                                             report, self.policy)]

        self._apply(tallies, acc, decode, evaluate, lambda w: divmod(w, 64))

    def _graph_checks(self, tallies, wanted: set[str]) -> None:
        tab, n, m = self.table, self.n, self.masks
        cp, diam = self.cpid[m], tab.diameter[m].astype(np.int64)
        bip = tab.bipartite[m]
        regular = tab.max_degree[m] == tab.min_degree[m]
        delta = tab.max_degree[m].astype(np.int64)
        edges = tab.edges[m].astype(np.int64)
        pol = self.policy

        def run(check_ids, select, key, decode, evaluate):
            if not wanted & set(check_ids):
                return
            for c in check_ids:
                if c in tallies:
                    tallies[c].add(Verdict.SKIPPED, int((~select).sum()))
            acc: dict = {}
            _group(acc, key[select], m[select])
            self._apply(tallies, acc, decode, evaluate)

        base = {"G connected": True}
        run(("T2",), ~bip, cp * 8 + diam, lambda k: divmod(k, 8),
            lambda c, d: [nonbipartite_gap_verdict(self.oracle(c), d, n,
                                                   dict(base, **{"G nonbipartite": True}), pol)])
        run(("T21",), regular & ~bip, cp * 8 + diam, lambda k: divmod(k, 8),
            lambda c, d: [regular_nonbipartite_verdict(
                self.oracle(c), d, n, dict(base, **{"G regular": True, "G nonbipartite": True}),
                pol)])
        run(("T4",), ~regular & ~bip, (cp * 8 + diam) * 8 + delta,
            lambda k: divmod(k // 8, 8) + (k % 8,),
            lambda c, d, dl: [degree_gap_verdict(
                self.oracle(c), d, n, dl,
                dict(base, **{"G nonregular": True, "G nonbipartite": True}), pol)])
        run(("CGN",), ~regular, ((cp * 8 + diam) * 8 + delta) * 32 + edges,
            lambda k: divmod(k // 256, 8) + ((k // 32) % 8, k % 32),
            lambda c, d, dl, e: [cgn_verdict(self.oracle(c), d, n, e, dl,
                                             dict(base, **{"G nonregular": True}), pol)])
        run(("SACHS",), np.ones(m.size, dtype=bool), cp * 2 + bip, lambda k: divmod(k, 2),
            lambda c, b: [sachs_verdict(self.oracle(c), bool(b),
                                        dict(base, **{"G bipartite": bool(b)}), pol)])
        if n >= 3:
            rows = np.arange(m.size)
            walks = tab.walks[m][rows, diam - 1] + tab.walks[m][rows, diam]
            run(("P2", "WALK", "P2_CITED"), np.ones(m.size, dtype=bool),
                (cp * 8 + diam) * (1 << 20) + walks,
                lambda k: divmod(k >> 20, 8) + (k & ((1 << 20) - 1),),
                lambda c, d, w: diameter_power_verdicts(
                    self.oracle(c), d, n, w, dict(base, **{"n >= 3": True}), pol))
        else:
            for c in ("P2", "WALK", "P2_CITED"):
                if c in tallies:
                    tallies[c].add(Verdict.SKIPPED, int(m.size))

    # -- distance lemma --------------------------------------------------

    def _distance_lemma(self, tally: CheckTally) -> None:
        tab = self.table
        for b, g, h in self._edge_items(self.masks):
            conn = tab.connected[h]
            tally.add(Verdict.SKIPPED, int((~conn).sum()))
            g, h = g[conn], h[conn]
            if g.size == 0:
                continue
            u, v = int(self.pi[b]), int(self.pj[b])
            dh = tab.dist[h]
            worst = (dh[:, :, u].astype(np.int64) + dh[:, :, v]).max(axis=1)
            bound = 2 * tab.diameter[g].astype(np.int64)
            ok = worst <= bound
            tally.holds += int(ok.sum())
            tally.fails += int((~ok).sum())
            for gm in g[~ok][:20]:
                tally.witnesses.append((int(gm), b))
            margin = Fraction(int((bound - worst).min()))
            if tally.min_margin is None or margin < tally.min_margin:
                tally.min_margin = margin

    # -- eigenvector checks ----------------------------------------------

    def _float_bounds(self, cp: int, idx: int, neighbour: int, tol=Fraction(1, 1 << 45)):
        """Float-rounded ``(λ lo, λ hi, σ, gap)`` for the eigenvalue ``idx``."""
        o = self.oracle(cp)
        lam = o.enclosure(idx, tol)
        other = o.enclosure(neighbour, Fraction(1, 1 << 30))
        sigma = float(lam.mid)
        gap = Fraction(sigma) - other.hi if neighbour < idx else other.lo - Fraction(sigma)
        return (math.nextafter(float(lam.lo), -math.inf), math.nextafter(float(lam.hi), math.inf),
                sigma, math.nextafter(float(gap), -math.inf) if gap > 0 else 0.0)

    def _batch_vectors(self, masks: np.ndarray, which: str, info: dict):
        """Float eigenvectors with a certified entrywise error ``delta``.

        For ``which="min"`` a multiple eigenvalue is fine: ``delta`` then
        bounds the distance to its eigenspace.  Rows without a positive gap
        get ``delta = inf``.  Also returns the per-row multiplicity.
        """
        n = self.n
        a = adjacency_stack(n, masks)
        _, vecs = np.linalg.eigh(a)
        x = vecs[:, :, -1] if which == "max" else vecs[:, :, 0]
        cps = self.cpid[masks]
        lam_lo = np.empty(masks.size)
        lam_hi = np.empty(masks.size)
        sigma = np.empty(masks.size)
        gap = np.empty(masks.size)
        mult = np.empty(masks.size, dtype=np.int64)
        for c in np.unique(cps):
            row = info.get(int(c))
            if row is None:
                o = self.oracle(int(c))
                idx = n - 1 if which == "max" else 0
                first, last = o.cluster(idx)
                neighbour = first - 1 if which == "max" else last + 1
                if (which == "max" and last > first) or not 0 <= neighbour < n:
                    lam = o.enclosure(idx)
                    row = (float(lam.lo), float(lam.hi), float(lam.mid), 0.0)
                else:
                    row = self._float_bounds(int(c), idx, neighbour)
                info[int(c)] = row + (last - first + 1,)
            sel = cps == c
            lam_lo[sel], lam_hi[sel], sigma[sel], gap[sel], mult[sel] = info[int(c)]
        # residual r = A x - σ x with a componentwise rounding bound
        ax = np.einsum("bij,bj->bi", a, x)
        r = ax - sigma[:, None] * x
        gamma = (n + 2) * _U / (1 - (n + 2) * _U)
        err = gamma * (np.einsum("bij,bj->bi", a, np.abs(x)) + np.abs(sigma)[:, None] * np.abs(x))
        rnorm = np.sqrt(((np.abs(r) + err) ** 2).sum(axis=1)) * (1 + 4 * n * _U)
        ss = (x * x).sum(axis=1)
        gam_n = n * _U / (1 - n * _U)
        xn_lo = np.sqrt(ss * (1 - gam_n)) * (1 - 2 * _U)
        xn_hi = np.sqrt(ss * (1 + gam_n)) * (1 + 2 * _U)
        with np.errstate(divide="ignore", invalid="ignore"):
            sin = np.where(gap > 0, rnorm / (xn_lo * gap), np.inf)
            scale = np.maximum(np.abs(1 - 1 / xn_lo), np.abs(1 - 1 / xn_hi))
            delta = (math.sqrt(2) * sin + np.abs(x).max(axis=1) * scale) * (1 + _SLACK)
        return x, delta, lam_lo, lam_hi, mult

    def _eigenvector_ratio(self, tallies) -> None:
        n, tab = self.n, self.table
        t1, t2 = tallies.get("P1"), tallies.get("P1_MINMAX")
        if n <= 2:
            for mask in self.masks:
                self._ratio_fallback(int(mask), t1, t2)
            return
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        ii = np.array([p[0] for p in pairs])
        jj = np.array([p[1] for p in pairs])
        info: dict = {}
        for start in range(0, self.masks.size, BATCH):
            masks = self.masks[start:start + BATCH]
            x, delta, mu_lo, _, _ = self._batch_vectors(masks, "max", info)
            x = x * np.sign(x.sum(axis=1))[:, None]
            d = tab.dist[masks][:, ii, jj].astype(np.int64)
            deg = self._degrees(masks)
            tight = (deg[:, ii] == 1) & (d == 1)
            lo_i = x[:, ii] - delta[:, None]
            hi_j = x[:, jj] + delta[:, None]
            lhs = lo_i * mu_lo[:, None] ** d
            ok_pair = tight | (lhs > hi_j * (1 + _SLACK))
            ok = ok_pair.all(axis=1) & np.isfinite(delta)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(tight, np.inf, lhs / hi_j).min(axis=1)
            xmin = x.min(axis=1) - delta
            xmax = x.max(axis=1) + delta
            mm_lhs = xmin * mu_lo ** (n - 1)
            ok_mm = (xmin > 0) & (mm_lhs > xmax * (1 + _SLACK)) & np.isfinite(delta)
            good = ok & ok_mm
            for t, values in ((t1, ratio), (t2, mm_lhs / xmax)):
                if t is not None and good.any():
                    t.add(Verdict.HOLDS, int(good.sum()), _float_margin(values[good].min()))
            for mask in masks[~good].tolist():
                self._ratio_fallback(mask, t1, t2)

    def _degrees(self, masks: np.ndarray) -> np.ndarray:
        deg = np.zeros((masks.size, self.n), dtype=np.int64)
        for k in range(self.pi.size):
            bit = (masks >> k) & 1
            deg[:, self.pi[k]] += bit
            deg[:, self.pj[k]] += bit
        return deg

    def _ratio_fallback(self, mask: int, t1, t2) -> None:
        self.fallbacks += 1
        for v in check_eigenvector_ratio(self.graph(mask), self.policy):
            t = t1 if v.check_id == "P1" else t2
            if t is not None:
                t.add(v.verdict, 1, v.margin, v.precision_bits, mask)

    # -- sign cut ----------------------------------------------------------

    def sign_cut(self) -> SignCutTally:
        """Sign-cut subgraphs of every connected nonbipartite graph.

        Entries within the certified error of zero join the nonnegative side,
        after orienting the vector so its first clearly nonzero entry is
        positive, exactly as :func:`bounds.sign_cut_subgraph` does.
        """
        tab = self.table
        out = SignCutTally()
        nb = self.masks[~tab.bipartite[self.masks]]
        info: dict = {}
        drops: dict = {}
        for start in range(0, nb.size, BATCH):
            masks = nb[start:start + BATCH]
            x, delta, _, _, mult = self._batch_vectors(masks, "min", info)
            clear = np.abs(x) > delta[:, None]
            usable = np.isfinite(delta) & clear.any(axis=1)
            rows = np.arange(masks.size)
            lead = x[rows, clear.argmax(axis=1)]
            x = x * np.where(lead < 0, -1.0, 1.0)[:, None]
            side = (x < -delta[:, None]).astype(np.int64)
            cross = np.zeros(masks.size, dtype=np.int64)
            for k in range(self.pi.size):
                cross |= (side[:, self.pi[k]] ^ side[:, self.pj[k]]) << k
            h = masks & cross
            near = ~clear.all(axis=1)
            g_ok, h_ok, near_ok = masks[usable], h[usable], near[usable]
            conn = tab.connected[h_ok]
            out.graphs += int(g_ok.size)
            out.ok += int((tab.bipartite[h_ok] & (h_ok != g_ok)).sum())
            out.connected += int(conn.sum())
            out.disconnected += g_ok[~conn].tolist()
            out.disconnected_near_zero += int((~conn & near_ok).sum())
            out.near_zero += int(near_ok.sum())
            out.multiple += int((mult[usable] > 1).sum())
            pairs = [(self.cpid[g_ok] * self.ncp + self.cpid[h_ok])]
            for g in masks[~usable].tolist():
                out.graphs += 1
                try:
                    hg, rep = sign_cut_subgraph(self.graph(g), check_drop=False)
                except Undecided:
                    out.undecided += 1
                    continue
                out.ok += rep.ok
                out.connected += rep.connected
                out.near_zero += bool(rep.near_zero)
                out.multiple += rep.multiplicity > 1
                if not rep.connected:
                    out.disconnected.append(g)
                    out.disconnected_near_zero += bool(rep.near_zero)
                pairs.append(np.array([self.cpid[g] * self.ncp + self.cpid[hg.to_mask()]]))
            keys, counts = np.unique(np.concatenate(pairs), return_counts=True)
            for key, count in zip(keys.tolist(), counts.tolist()):
                if key not in drops:
                    cg, ch = divmod(key, self.ncp)
                    w = Fraction(1, 1 << 40)
                    drops[key] = decide(self.oracle(ch).mu_min(w), self.oracle(cg).mu_min(w), "<=")
                out.drop_holds += count * (drops[key] is Verdict.HOLDS)
        return out

    # -- entry point -------------------------------------------------------

    def run(self, checks=CHECK_IDS) -> dict[str, CheckTally]:
        wanted = set(checks)
        unknown = wanted - set(CHECK_IDS)
        if unknown:
            raise ValueError(f"unknown check ids: {sorted(unknown)}")
        tallies = {c: CheckTally(c) for c in CHECK_IDS if c in wanted}
        self.fallbacks = 0
        if wanted & {"T1", "T1a_strong"}:
            self._subgraph_checks(tallies)
        if "T11" in wanted:
            self._regular_edge_checks(tallies)
        self._graph_checks(tallies, wanted)
        if wanted & {"P1", "P1_MINMAX"}:
            self._eigenvector_ratio(tallies)
        if "DIST_LEMMA" in wanted:
            self._distance_lemma(tallies["DIST_LEMMA"])
        return tallies


def _float_margin(r: float) -> Fraction | None:
    if not math.isfinite(r):
        return None
    return Fraction(math.nextafter(r, -math.inf)) - 1


def exhaustive_summary(n: int, checks=CHECK_IDS, policy: TolerancePolicy = DEFAULT_POLICY
                       ) -> dict[str, CheckTally]:
    return ExhaustiveEngine(n, policy).run(checks)
