import csv
from fractions import Fraction

import pytest

from spectralcert import graph6
from spectralcert.bounds import Verdict
from spectralcert.graph import complete_bipartite, cycle, paw
from spectralcert.harness import (SUMMARY_FIELDS, RunRecord, SweepError, corpus_source,
                                  emit_report, enumerate_source, grid_source, random_source,
                                  read_detail, replay, run_sweep, summarize, without_timing)

HOLDS = str(Verdict.HOLDS)


def record(verdict, lhs=("1", "2"), rhs=("0", "0")):
    return RunRecord("Bw", "T2", *lhs, *rhs, str(verdict), {"G connected": True}, 40, 0.5)


def test_record_json_round_trip():
    rec = record(Verdict.HOLDS)
    assert RunRecord.from_json(rec.to_json()) == rec
    assert "wall_time" not in rec.to_json(timing=False)


def test_empty_report(tmp_path):
    rows = emit_report([], tmp_path / "d.jsonl", tmp_path / "s.csv")
    assert rows == [] and (tmp_path / "d.jsonl").read_text() == ""
    with open(tmp_path / "s.csv") as fh:
        assert next(csv.reader(fh)) == list(SUMMARY_FIELDS)


def test_single_record_margin(tmp_path):
    rec = record(Verdict.HOLDS, lhs=("0.5", "0.6"), rhs=("0.25", "0.25"))
    rows = emit_report([rec], tmp_path / "d.jsonl", tmp_path / "s.csv")
    assert rows[0]["min_margin"] == rec.margin == Fraction(1, 4)
    assert read_detail(tmp_path / "d.jsonl") == [rec]


def test_mixed_counts_partition_total():
    recs = [record(v) for v in (Verdict.HOLDS, Verdict.HOLDS, Verdict.FAILS, Verdict.UNDECIDED)]
    recs.append(RunRecord.skipped("Bw", "T2", {"G nonbipartite": False}, "bipartite"))
    (row,) = summarize(recs)
    assert row["total"] == 5
    assert row["holds"] + row["fails"] + row["undecided"] + row["skipped"] == row["total"]


def test_enumerate_t1_records():
    recs = run_sweep(enumerate_source(4), ["T1"])
    # one record per edge of each connected labelled graph on 4 vertices
    assert len(recs) == 144
    assert all(r.verdict == HOLDS for r in recs)
    assert all("#" in r.graph_id for r in recs)


def test_corpus_of_three(tmp_path):
    p = tmp_path / "c.g6"
    graph6.write_corpus(p, [cycle(5), complete_bipartite(2, 3), paw()])
    recs = run_sweep(corpus_source(p), ["T2"])
    assert len(recs) == 3
    assert [r.verdict for r in recs] == [HOLDS, str(Verdict.SKIPPED), HOLDS]


def test_thm2_grid():
    recs = run_sweep(grid_source("thm2", k=[3, 4, 5], D=[4, 6, 8]), ["thm2"])
    assert len(recs) == 9 and all(r.verdict == HOLDS for r in recs)


def test_threads_give_same_records():
    src = random_source(12, n_max=12, seed=4)
    one = [r.to_json(timing=False) for r in run_sweep(src, ["T2", "P2"])]
    two = [r.to_json(timing=False) for r in run_sweep(src, ["T2", "P2"], threads=2)]
    assert one == two


def test_deterministic_reports(tmp_path):
    for tag in "ab":
        recs = run_sweep(random_source(10, n_max=15, seed=9), ["T2", "P1", "SACHS"])
        emit_report(recs, tmp_path / f"{tag}.jsonl", tmp_path / f"{tag}.csv")
    assert without_timing(tmp_path / "a.jsonl") == without_timing(tmp_path / "b.jsonl")
    assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()


def test_counterexample_replay(tmp_path):
    cx = tmp_path / "cx.txt"
    recs = run_sweep(grid_source("thm3", n=[64], eps=["1/32"]), ["thm3"], counterexample_path=cx)
    assert recs[0].verdict == str(Verdict.FAILS)
    (line,) = cx.read_text().splitlines()
    again = replay(line)
    assert again.to_json(timing=False) == recs[0].to_json(timing=False)


def test_source_errors(tmp_path):
    with pytest.raises(SweepError):
        enumerate_source(8)
    with pytest.raises(SweepError):
        corpus_source(tmp_path / "missing.g6")
    with pytest.raises(SweepError):
        run_sweep(enumerate_source(3), ["NOPE"])
