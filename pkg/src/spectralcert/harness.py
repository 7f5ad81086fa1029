"""Sweeps over graph sources, run records, and report files.

A sweep turns a source (enumeration, graph6 corpus, random corpus or
construction grid) and a set of check ids into a list of :class:`RunRecord`.
Each (graph, applicable check) pair yields exactly one record; a pair whose
hypotheses fail yields a ``skipped`` record carrying the reason.  Edge-level
checks (``T1``, ``T1a_strong``, ``T11``, ``DIST_LEMMA``) produce one record per
deleted edge, with ``graph_id`` of the form ``<graph6>#u-v``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from . import graph6
from .bounds import (CHECK_IDS, DEFAULT_POLICY, BoundVerdict, HypothesisFailure,
                     TolerancePolicy, Verdict, check_diameter_power, check_eigenvector_ratio,
                     check_nonbipartite_gap, check_regular_variants, check_sachs,
                     check_subgraph_gap, check_theorem4, edge_deletion_distance_lemma)
from .constructions import (ConstructionError, ConstructionReport, ConstructionSpec,
                            build_theorem2_construction, build_theorem3_construction)
from .eig import Undecided
from .graph import (MAX_ENUMERATE_N, Graph, GraphStats, build_graph, enumerate_connected,
                    structure_flags)
from .interval import Interval, decimal_string

DIGITS = 30
GRID_CHECKS = ("thm2", "thm3")
EDGE_CHECK_IDS = ("T1", "T1a_strong", "T11", "DIST_LEMMA")
TIMING_FIELDS = ("wall_time",)


class SweepError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Records

@dataclass
class RunRecord:
    graph_id: str
    check_id: str
    lhs_lo: str | None
    lhs_hi: str | None
    rhs_lo: str | None
    rhs_hi: str | None
    verdict: str
    hypothesis_report: dict[str, bool] = field(default_factory=dict)
    precision_bits: int = 0
    wall_time: float = 0.0
    relation: str = ">"
    notes: str = ""

    @classmethod
    def from_verdict(cls, graph_id: str, v: BoundVerdict, wall_time: float = 0.0) -> RunRecord:
        lo_hi = lambda iv: (None, None) if iv is None else iv.to_strings(DIGITS)
        lhs_lo, lhs_hi = lo_hi(v.lhs)
        rhs_lo, rhs_hi = lo_hi(v.rhs)
        return cls(graph_id, v.check_id, lhs_lo, lhs_hi, rhs_lo, rhs_hi, str(v.verdict),
                   dict(v.hypothesis_report), v.precision_bits, wall_time, v.relation, v.notes)

    @classmethod
    def skipped(cls, graph_id: str, check_id: str, report: dict[str, bool], reason: str,
                wall_time: float = 0.0) -> RunRecord:
        return cls(graph_id, check_id, None, None, None, None, str(Verdict.SKIPPED),
                   dict(report), 0, wall_time, notes=reason)

    @property
    def margin(self) -> Fraction | None:
        """Certified slack from the rendered endpoints; ``lhs.lo - rhs.hi``
        for ``>``/``>=`` claims and ``rhs.lo - lhs.hi`` for ``<``/``<=``."""
        if self.verdict == str(Verdict.SKIPPED) or self.lhs_lo is None or self.rhs_lo is None:
            return None
        lhs = Interval(Fraction(self.lhs_lo), Fraction(self.lhs_hi))
        rhs = Interval(Fraction(self.rhs_lo), Fraction(self.rhs_hi))
        return BoundVerdict(self.check_id, lhs, rhs, Verdict(self.verdict),
                            relation=self.relation).margin

    def to_json(self, timing: bool = True) -> str:
        d = asdict(self)
        if not timing:
            for k in TIMING_FIELDS:
                d.pop(k)
        return json.dumps(d, ensure_ascii=False, sort_keys=False)

    @classmethod
    def from_json(cls, line: str) -> RunRecord:
        return cls(**json.loads(line))


# ---------------------------------------------------------------------------
# Sources

@dataclass(frozen=True)
class Source:
    """A description of the graphs to sweep; ``items()`` yields ``(id, payload)``
    where the payload is a :class:`Graph` or a :class:`ConstructionSpec`."""

    kind: str
    n: int | None = None
    path: str | None = None
    specs: tuple[ConstructionSpec, ...] = ()
    count: int = 0
    n_min: int = 3
    n_max: int = 50
    seed: int = 0

    def items(self) -> Iterator[tuple[str, Graph | ConstructionSpec]]:
        if self.kind == "enumerate":
            for g in enumerate_connected(self.n):
                yield graph6.encode(g), g
        elif self.kind == "corpus":
            try:
                for g in graph6.read_corpus(self.path):
                    yield graph6.encode(g), g
            except OSError as exc:
                raise SweepError(f"cannot read corpus {self.path}: {exc}") from None
        elif self.kind == "random":
            rng = np.random.default_rng(self.seed)
            for _ in range(self.count):
                g = random_connected_graph(int(rng.integers(self.n_min, self.n_max + 1)), rng)
                yield graph6.encode(g), g
        elif self.kind == "grid":
            for spec in self.specs:
                yield spec.label, spec
        else:
            raise SweepError(f"unknown source kind {self.kind!r}")


def enumerate_source(n: int) -> Source:
    if not 1 <= n <= MAX_ENUMERATE_N:
        raise SweepError(f"enumeration supports 1 <= n <= {MAX_ENUMERATE_N}; "
                         "supply a graph6 corpus for larger n")
    return Source("enumerate", n=n)


def corpus_source(path: str | Path) -> Source:
    if not Path(path).is_file():
        raise SweepError(f"cannot read corpus {path}: no such file")
    return Source("corpus", path=str(path))


def random_source(count: int, n_max: int = 50, seed: int = 0, n_min: int = 3) -> Source:
    if not 1 <= n_min <= n_max:
        raise SweepError("need 1 <= n_min <= n_max")
    return Source("random", count=count, n_min=n_min, n_max=n_max, seed=seed)


def grid_source(family: str, **ranges: Iterable) -> Source:
    """``grid_source("thm2", k=[3, 4], D=[4, 6])`` or
    ``grid_source("thm3", n=[100], eps=["1/20"])``; the product is swept."""
    if family == "thm2":
        specs = [ConstructionSpec("thm2", k=k, D=D, n=D + 2 * k - 1)
                 for k, D in itertools.product(ranges["k"], ranges["D"])]
    elif family == "thm3":
        specs = [ConstructionSpec("thm3", n=n, eps=Fraction(e))
                 for n, e in itertools.product(ranges["n"], ranges["eps"])]
    else:
        raise SweepError(f"unknown construction family {family!r}")
    return Source("grid", specs=tuple(specs))


def random_connected_graph(n: int, rng: np.random.Generator) -> Graph:
    """Random spanning tree plus independent extra edges at a random density."""
    edges = set()
    order = rng.permutation(n)
    for i in range(1, n):
        u, v = int(order[i]), int(order[rng.integers(0, i)])
        edges.add((min(u, v), max(u, v)))
    p = float(rng.uniform(0.0, 0.5)) ** 2
    iu, ju = np.triu_indices(n, 1)
    extra = rng.random(iu.size) < p
    edges.update(zip(iu[extra].tolist(), ju[extra].tolist()))
    return build_graph(n, sorted(edges))


# ---------------------------------------------------------------------------
# Check dispatch

def _only(ids):
    def pick(verdicts):
        return [v for v in verdicts if v.check_id in ids]
    return pick


# graph-level groups: ids computed together, and the function producing them
_GRAPH_GROUPS: list[tuple[tuple[str, ...], Callable]] = [
    (("T2",), lambda g, p, c: [check_nonbipartite_gap(g, p, c)]),
    (("T21",), lambda g, p, c: _only(("T21",))(check_regular_variants(g, None, p, c))),
    (("T4", "CGN"), check_theorem4),
    (("P1", "P1_MINMAX"), check_eigenvector_ratio),
    (("P2", "WALK", "P2_CITED"), check_diameter_power),
    (("SACHS",), lambda g, p, c: [check_sachs(g, p, c)]),
]


def _edge_group_gate(ids: tuple[str, ...], stats: GraphStats
                     ) -> tuple[dict[str, bool], str] | None:
    """Graph-level hypotheses of an edge-level group; ``None`` when they hold."""
    report = {"G connected": stats.is_connected}
    if not stats.is_connected:
        return report, "G is disconnected"
    if ids == ("T11",):
        report["G regular"] = stats.is_regular
        if not stats.is_regular:
            return report, "G is not regular"
    return None


_EDGE_GROUPS: list[tuple[tuple[str, ...], Callable]] = [
    (("T1", "T1a_strong"), lambda g, e, p, c: check_subgraph_gap(g, g.remove_edge(*e), p, c)),
    (("T11",), lambda g, e, p, c: _only(("T11",))(check_regular_variants(g, g.remove_edge(*e), p, c))),
    (("DIST_LEMMA",), lambda g, e, p, c: [edge_deletion_distance_lemma(g, e)]),
]


def _run_group(graph_id: str, ids, fn, wanted) -> list[RunRecord]:
    chosen = [c for c in ids if c in wanted]
    t0 = time.perf_counter()
    try:
        verdicts = fn()
    except HypothesisFailure as exc:
        dt = time.perf_counter() - t0
        return [RunRecord.skipped(graph_id, c, exc.report, str(exc), dt) for c in chosen]
    except Undecided as exc:
        dt = time.perf_counter() - t0
        return [RunRecord(graph_id, c, None, None, None, None, str(Verdict.UNDECIDED),
                          {}, 0, dt, notes=str(exc)) for c in chosen]
    dt = time.perf_counter() - t0
    by_id = {v.check_id: v for v in verdicts}
    return [RunRecord.from_verdict(graph_id, by_id[c], dt) for c in chosen]


def graph_records(graph_id: str, g: Graph, checks, policy: TolerancePolicy = DEFAULT_POLICY
                  ) -> list[RunRecord]:
    """All records for one graph, graph-level checks first, then per edge."""
    wanted = set(checks)
    cache: dict = {}
    out: list[RunRecord] = []
    for ids, fn in _GRAPH_GROUPS:
        if wanted & set(ids):
            out += _run_group(graph_id, ids, lambda: fn(g, policy, cache), wanted)
    stats = None
    for ids, fn in _EDGE_GROUPS:
        if not wanted & set(ids):
            continue
        stats = stats or structure_flags(g)
        gate = _edge_group_gate(ids, stats)
        if gate is not None:
            report, reason = gate
            out += [RunRecord.skipped(graph_id, c, report, reason) for c in ids if c in wanted]
            continue
        for e in g.edges():
            eid = f"{graph_id}#{e[0]}-{e[1]}"
            out += _run_group(eid, ids, lambda: fn(g, e, policy, cache), wanted)
    return out


def construction_record(spec: ConstructionSpec, policy: TolerancePolicy = DEFAULT_POLICY
                        ) -> tuple[RunRecord, ConstructionReport | None]:
    """One record per construction instance; the headline claim is the upper
    bound on ``μ + μ_min`` and the verdict aggregates every claim."""
    t0 = time.perf_counter()
    try:
        if spec.family == "thm2":
            rep = build_theorem2_construction(spec.k, spec.D, policy)
        else:
            rep = build_theorem3_construction(spec.n, spec.eps, policy)
    except ConstructionError as exc:
        return RunRecord.skipped(spec.label, spec.family, {"parameters valid": False},
                                 str(exc), time.perf_counter() - t0), None
    dt = time.perf_counter() - t0
    head = rep.claim("C2_UPPER" if spec.family == "thm2" else "C3_UPPER")
    rec = RunRecord.from_verdict(spec.label, head, dt)
    rec.check_id = spec.family
    rec.verdict = str(rep.verdict)
    rec.hypothesis_report = {c.check_id: c.holds for c in rep.claims}
    failing = [c.check_id for c in rep.claims if not c.holds]
    rec.notes = "all claims hold" if not failing else "not certified: " + ", ".join(failing)
    return rec, rep


# ---------------------------------------------------------------------------
# Sweeps

def _work(item, checks, policy) -> tuple[list[RunRecord], str | None]:
    graph_id, payload = item
    if isinstance(payload, ConstructionSpec):
        rec, rep = construction_record(payload, policy)
        return [rec], rep.graph6 if rep is not None else None
    return graph_records(graph_id, payload, checks, policy), graph_id


def _validate_checks(source: Source, checks) -> tuple[str, ...]:
    checks = tuple(checks)
    if not checks:
        raise SweepError("empty check set")
    allowed = GRID_CHECKS if source.kind == "grid" else CHECK_IDS
    bad = [c for c in checks if c not in allowed]
    if bad:
        raise SweepError(f"unknown check ids for a {source.kind} sweep: {bad}")
    return checks


def iter_sweep(source: Source, checks, policy: TolerancePolicy = DEFAULT_POLICY,
               threads: int = 1, counterexample_path: str | Path | None = None
               ) -> Iterator[RunRecord]:
    """Stream records in input order.

    Fails-certified records append ``<graph6>\\t<check_id>\\t<graph_id>`` to
    ``counterexample_path``; the first column alone is a graph6 corpus.
    """
    checks = _validate_checks(source, checks)
    if threads < 1:
        raise SweepError("threads must be >= 1")
    cx = open(counterexample_path, "w", encoding="ascii") if counterexample_path else None
    try:
        if threads == 1:
            results = (_work(item, checks, policy) for item in source.items())
        else:
            pool = ProcessPoolExecutor(max_workers=threads)
            items = list(source.items())
            results = pool.map(_work, items, [checks] * len(items), [policy] * len(items),
                               chunksize=max(1, len(items) // (threads * 8)))
        for records, g6 in results:
            for rec in records:
                if source.kind == "grid" and rec.check_id not in checks:
                    continue
                if cx is not None and rec.verdict == str(Verdict.FAILS) and g6:
                    cx.write(f"{g6.split('#')[0]}\t{rec.check_id}\t{rec.graph_id}\n")
                yield rec
        if threads > 1:
            pool.shutdown()
    finally:
        if cx is not None:
            cx.close()


def run_sweep(source: Source, checks, policy: TolerancePolicy = DEFAULT_POLICY,
              threads: int = 1, counterexample_path: str | Path | None = None
              ) -> list[RunRecord]:
    return list(iter_sweep(source, checks, policy, threads, counterexample_path))


_EDGE_SUFFIX = re.compile(r"#(\d+)-(\d+)$")
_LABEL = re.compile(r"^(thm2)\(k=(\d+),D=(\d+)\)$|^(thm3)\(n=(\d+),eps=([\d/]+)\)$")


def replay(line: str, policy: TolerancePolicy = DEFAULT_POLICY) -> RunRecord:
    """Re-run one counterexample line in isolation."""
    g6, check_id, graph_id = line.rstrip("\n").split("\t")
    g = graph6.decode(g6)
    m = _LABEL.match(graph_id)
    if m:
        if m.group(1):
            spec = ConstructionSpec("thm2", k=int(m.group(2)), D=int(m.group(3)))
        else:
            spec = ConstructionSpec("thm3", n=int(m.group(5)), eps=Fraction(m.group(6)))
        rec, rep = construction_record(spec, policy)
        if rep is None or rep.graph != g:
            raise SweepError("construction does not reproduce the witness graph")
        return rec
    for rec in graph_records(g6, g, [check_id], policy):
        if rec.graph_id == graph_id:
            return rec
    raise SweepError(f"no record {graph_id} / {check_id} on replay")


# ---------------------------------------------------------------------------
# Reports

SUMMARY_FIELDS = ("check_id", "total", "holds", "fails", "undecided", "skipped",
                  "min_margin", "max_precision_bits")


def summarize(records: Iterable[RunRecord]) -> list[dict]:
    rows: dict[str, dict] = {}
    for rec in records:
        row = rows.setdefault(rec.check_id, {"check_id": rec.check_id, "total": 0, "holds": 0,
                                             "fails": 0, "undecided": 0, "skipped": 0,
                                             "min_margin": None, "max_precision_bits": 0})
        row["total"] += 1
        key = {str(Verdict.HOLDS): "holds", str(Verdict.FAILS): "fails",
               str(Verdict.UNDECIDED): "undecided"}.get(rec.verdict, "skipped")
        row[key] += 1
        mg = rec.margin
        if mg is not None and (row["min_margin"] is None or mg < row["min_margin"]):
            row["min_margin"] = mg
        row["max_precision_bits"] = max(row["max_precision_bits"], rec.precision_bits)
    order = {c: i for i, c in enumerate(CHECK_IDS + GRID_CHECKS)}
    return sorted(rows.values(), key=lambda r: (order.get(r["check_id"], len(order)), r["check_id"]))


def tally_rows(tallies) -> list[dict]:
    """Summary rows from :class:`exhaustive.CheckTally` objects."""
    return [{"check_id": t.check_id, "total": t.total, "holds": t.holds, "fails": t.fails,
             "undecided": t.undecided, "skipped": t.skipped, "min_margin": t.min_margin,
             "max_precision_bits": t.max_bits} for t in tallies.values()]


def summary_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SUMMARY_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        row = dict(row)
        mg = row["min_margin"]
        row["min_margin"] = "" if mg is None else decimal_string(mg, 12, "down")
        w.writerow(row)
    return buf.getvalue()


def emit_report(records: Iterable[RunRecord], detail_path: str | Path,
                summary_path: str | Path) -> list[dict]:
    """Write the JSON-lines detail file and the CSV summary; returns the rows."""
    records = list(records)
    try:
        with open(detail_path, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(rec.to_json() + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report {detail_path}: {exc.strerror}") from exc
    rows = summarize(records)
    try:
        Path(summary_path).write_text(summary_csv(rows), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write summary {summary_path}: {exc.strerror}") from exc
    return rows


def read_detail(path: str | Path) -> list[RunRecord]:
    with open(path, encoding="utf-8") as fh:
        return [RunRecord.from_json(line) for line in fh if line.strip()]


def without_timing(path: str | Path) -> list[str]:
    """Detail lines with timing fields removed, for determinism comparisons."""
    return [rec.to_json(timing=False) for rec in read_detail(path)]
