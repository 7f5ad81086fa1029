"""Command-line interface.

Exit status: 0 when every verdict holds or is skipped, 2 on any
Fails-certified verdict, 3 on Undecided (single checks and constructions
only; sweeps count Undecided records without failing), 64 on usage errors
and 65 on malformed input data.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import graph6
from .bounds import (CHECK_IDS, BoundVerdict, HypothesisFailure,
                     MAX_BIPARTIZATION_N, TolerancePolicy, Verdict, check_diameter_power,
                     check_eigenvector_ratio, check_nonbipartite_gap, check_regular_variants,
                     check_sachs, check_subgraph_gap, check_theorem4,
                     edge_deletion_distance_lemma, min_bipartization)
from .constructions import (ConstructionError, build_theorem2_construction,
                            build_theorem3_construction)
from .eig import BACKENDS, DEFAULT_MAX_BITS, SpectralOracle, Undecided
from .graph import Graph, GraphError, parse_edge_list
from .harness import (RunRecord, SweepError, corpus_source, emit_report, enumerate_source,
                      grid_source, random_source, run_sweep, summary_csv, tally_rows)

EXIT_OK, EXIT_FAILS, EXIT_UNDECIDED = 0, 2, 3
EXIT_USAGE, EXIT_DATA = 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _exit_for(verdicts) -> int:
    vs = set(verdicts)
    if Verdict.FAILS in vs:
        return EXIT_FAILS
    if Verdict.UNDECIDED in vs:
        return EXIT_UNDECIDED
    return EXIT_OK


# ---------------------------------------------------------------------------
# Input

def _load_graph(args) -> Graph:
    if (args.graph is None) == (args.file is None):
        raise UsageError("give exactly one of a graph6 string or --file")
    try:
        if args.graph is not None:
            return graph6.decode(args.graph)
        text = Path(args.file).read_text(encoding="ascii")
    except OSError as exc:
        raise DataError(f"cannot read {args.file}: {exc.strerror}") from None
    except (GraphError, UnicodeDecodeError) as exc:
        raise DataError(str(exc)) from None
    try:
        first = next((ln.split() for ln in text.splitlines() if ln.strip()), None)
        if first is None:
            raise DataError(f"{args.file} is empty")
        if len(first) == 2 and all(tok.isdigit() for tok in first):
            return parse_edge_list(text)
        return graph6.decode(first[0])
    except (GraphError, ValueError) as exc:
        raise DataError(str(exc)) from None


def _policy(args) -> TolerancePolicy:
    return TolerancePolicy(max_bits=args.max_bits)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _edge(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    parts = text.replace("-", ",").split(",")
    if len(parts) != 2:
        raise UsageError(f"edge must look like 'u,v', got {text!r}")
    return tuple(_int_list(",".join(parts)))


# ---------------------------------------------------------------------------
# Output

def _fmt_interval(iv) -> str:
    if iv is None:
        return "-"
    lo, hi = iv.to_strings(16)
    return f"[{lo}, {hi}]"


def _print_verdict(v: BoundVerdict, out) -> None:
    print(f"{v.check_id:<11} {v.verdict}", file=out)
    if v.lhs is not None or v.rhs is not None:
        print(f"  lhs   {_fmt_interval(v.lhs)}", file=out)
        print(f"  rhs   {_fmt_interval(v.rhs)}   ({v.relation})", file=out)
    if v.hypothesis_report:
        hyp = ", ".join(f"{k}={'yes' if ok else 'no'}" for k, ok in v.hypothesis_report.items())
        print(f"  hypotheses: {hyp}", file=out)
    if v.precision_bits:
        print(f"  precision: {v.precision_bits} bits", file=out)
    if v.notes:
        print(f"  notes: {v.notes}", file=out)


def _write_records(path, records) -> None:
    if not path:
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(rec.to_json() + "\n")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# Subcommands

def cmd_spectrum(args) -> int:
    g = _load_graph(args)
    tol = _fraction(args.tol) if args.tol else Fraction(1, 1 << 40)
    if tol <= 0:
        raise UsageError("--tol must be positive")
    o = SpectralOracle(g, backend=args.backend, max_bits=args.max_bits)
    s = o.summary(tol)
    print(f"n={g.n} m={g.m} backend={s.method}")
    print(f"mu      {_fmt_interval(s.mu)}")
    print(f"mu_min  {_fmt_interval(s.mu_min)}")
    print(f"precision: {s.precision_bits} bits" + ("  (cap reached)" if s.capped else ""))
    gid = graph6.encode(g)
    records = []
    for name, iv in (("mu", s.mu), ("mu_min", s.mu_min)):
        lo, hi = iv.to_strings(30)
        records.append(RunRecord(gid, name, lo, hi, None, None, "enclosure", {},
                                 s.precision_bits, relation="", notes=s.method))
    _write_records(args.out, records)
    return EXIT_OK


def _single_check(check_id: str, g: Graph, edge, policy) -> BoundVerdict:
    if check_id in ("T1", "T1a_strong", "T11", "DIST_LEMMA"):
        if edge is None:
            raise UsageError(f"{check_id} needs --edge u,v (the deleted edge)")
        if not g.has_edge(*edge):
            raise HypothesisFailure(f"{edge} is not an edge", {"uv edge of G": False})
        if check_id == "DIST_LEMMA":
            return edge_deletion_distance_lemma(g, edge)
        h = g.remove_edge(*edge)
        found = (check_subgraph_gap(g, h, policy) if check_id != "T11"
                 else check_regular_variants(g, h, policy))
    elif check_id == "T2":
        return check_nonbipartite_gap(g, policy)
    elif check_id == "T21":
        found = check_regular_variants(g, None, policy)
    elif check_id in ("T4", "CGN"):
        found = check_theorem4(g, policy)
    elif check_id in ("P1", "P1_MINMAX"):
        found = check_eigenvector_ratio(g, policy)
    elif check_id in ("P2", "WALK", "P2_CITED"):
        found = check_diameter_power(g, policy)
    else:
        return check_sachs(g, policy)
    return next(v for v in found if v.check_id == check_id)


def cmd_check(args) -> int:
    g = _load_graph(args)
    edge = _edge(args.edge)
    gid = graph6.encode(g) + (f"#{edge[0]}-{edge[1]}" if edge else "")
    try:
        v = _single_check(args.id, g, edge, _policy(args))
    except HypothesisFailure as exc:
        print(f"{args.id:<11} {Verdict.SKIPPED}: {exc}")
        _write_records(args.out, [RunRecord.skipped(gid, args.id, exc.report, str(exc))])
        return EXIT_OK
    except Undecided as exc:
        print(f"{args.id:<11} {Verdict.UNDECIDED}: {exc}")
        return EXIT_UNDECIDED
    _print_verdict(v, sys.stdout)
    _write_records(args.out, [RunRecord.from_verdict(gid, v)])
    return _exit_for([v.verdict])


def cmd_construct(args) -> int:
    policy = _policy(args)
    try:
        if args.family == "thm2":
            if args.k is None or args.D is None:
                raise UsageError("thm2 needs --k and --D")
            rep = build_theorem2_construction(args.k, args.D, policy)
        else:
            if args.n is None or args.eps is None:
                raise UsageError("thm3 needs --n and --eps")
            rep = build_theorem3_construction(args.n, _fraction(args.eps), policy)
    except ConstructionError as exc:
        raise DataError(str(exc)) from None
    print(rep.graph6)
    print(f"# {rep.spec.label}: n={rep.graph.n} m={rep.graph.m} "
          + " ".join(f"{k}={v}" for k, v in rep.derived.items() if k != "n"))
    for c in rep.claims:
        _print_verdict(c, sys.stdout)
    if args.graph6_out:
        Path(args.graph6_out).write_text(rep.graph6 + "\n", encoding="ascii")
    _write_records(args.out, [RunRecord.from_verdict(rep.spec.label, c) for c in rep.claims])
    return _exit_for([rep.verdict])


def cmd_sweep(args) -> int:
    sources = [args.enumerate is not None, args.corpus is not None, args.random is not None,
               args.grid is not None, args.exhaustive is not None]
    if sum(sources) != 1:
        raise UsageError("choose exactly one of --enumerate, --corpus, --random, --grid, --exhaustive")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    policy = _policy(args)
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)

    if args.exhaustive is not None:
        from .exhaustive import ExhaustiveEngine

        checks = args.checks.split(",") if args.checks else list(CHECK_IDS)
        try:
            tallies = ExhaustiveEngine(args.exhaustive, policy).run(checks)
        except (GraphError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        text = summary_csv(tally_rows(tallies))
        sys.stdout.write(text)
        if out:
            (out / "summary.csv").write_text(text, encoding="utf-8")
        return EXIT_FAILS if any(t.fails for t in tallies.values()) else EXIT_OK

    try:
        if args.grid is not None:
            if args.grid == "thm2":
                src = grid_source("thm2", k=_int_list(args.k or "3"), D=_int_list(args.D or "4"))
            else:
                eps = [_fraction(e) for e in (args.eps or "1/20").split(",")]
                src = grid_source("thm3", n=_int_list(args.n or "100"), eps=eps)
            checks = [args.grid]
        else:
            if args.enumerate is not None:
                src = enumerate_source(args.enumerate)
            elif args.corpus is not None:
                src = corpus_source(args.corpus)
            else:
                src = random_source(args.random, n_max=args.n_max, seed=args.seed)
            checks = args.checks.split(",") if args.checks else list(CHECK_IDS)
        cx = out / "counterexamples.txt" if out else None
        records = run_sweep(src, checks, policy, args.threads, cx)
    except SweepError as exc:
        msg = str(exc)
        if msg.startswith("cannot read"):
            raise DataError(msg) from None
        raise UsageError(msg) from None
    except GraphError as exc:
        raise DataError(str(exc)) from None
    if out:
        try:
            rows = emit_report(records, out / "detail.jsonl", out / "summary.csv")
        except OSError as exc:
            raise DataError(str(exc)) from None
    else:
        from .harness import summarize
        rows = summarize(records)
    sys.stdout.write(summary_csv(rows))
    return EXIT_FAILS if any(r["fails"] for r in rows) else EXIT_OK


def cmd_bipartization(args) -> int:
    g = _load_graph(args)
    if g.n > MAX_BIPARTIZATION_N:
        raise DataError(f"exact bipartization is capped at n={MAX_BIPARTIZATION_N}; "
                        "use the analytic lower bound for complete subgraphs instead")
    value = min_bipartization(g)
    print(value)
    exact = str(value)
    _write_records(args.out, [RunRecord(graph6.encode(g), "BIPARTIZATION", exact, exact, None, None,
                                        "exact", relation="", notes=f"m={g.m}")])
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spectralcert", description="Certified spectral bound checks for graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def graph_args(sp):
        sp.add_argument("graph", nargs="?", help="graph6 string")
        sp.add_argument("--file", help="file holding a graph6 line or an 'n m' edge list")

    def common(sp):
        sp.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS,
                        help="precision cap for bisection (default from SPECTRALCERT_MAX_BITS)")
        sp.add_argument("--out", help="machine-readable output path")

    sp = sub.add_parser("spectrum", help="certified enclosures of mu and mu_min")
    graph_args(sp)
    common(sp)
    sp.add_argument("--tol", help="enclosure width, e.g. 1e-12 or 1/4096")
    sp.add_argument("--backend", choices=("auto",) + BACKENDS, default="auto")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("check", help="evaluate one bound")
    graph_args(sp)
    common(sp)
    sp.add_argument("--id", required=True, choices=CHECK_IDS)
    sp.add_argument("--edge", help="deleted edge 'u,v' for the edge-level checks")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("construct", help="build and validate an extremal family member")
    common(sp)
    sp.add_argument("--family", required=True, choices=("thm2", "thm3"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--D", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--eps", help="rational in (0, 1/16), e.g. 1/20")
    sp.add_argument("--graph6-out", help="write the graph6 line here")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("sweep", help="run checks over a graph source")
    common(sp)
    sp.add_argument("--enumerate", type=int, metavar="N", help="all connected graphs of order N")
    sp.add_argument("--exhaustive", type=int, metavar="N",
                    help="all connected graphs of order N via the grouped engine (summary only)")
    sp.add_argument("--corpus", help="graph6 corpus file")
    sp.add_argument("--random", type=int, metavar="COUNT", help="random connected graphs")
    sp.add_argument("--n-max", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grid", choices=("thm2", "thm3"))
    sp.add_argument("--k", help="comma-separated k values (thm2)")
    sp.add_argument("--D", help="comma-separated D values (thm2)")
    sp.add_argument("--n", help="comma-separated n values (thm3)")
    sp.add_argument("--eps", help="comma-separated eps values (thm3)")
    sp.add_argument("--checks", help="comma-separated check ids (default: all)")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bipartization", help="exact minimum edge deletions to bipartite")
    graph_args(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bipartization)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spectralcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"spectralcert: bad input: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
