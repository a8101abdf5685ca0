import csv

from s3real.certificates import Kernel
from s3real.realize import RealizationResult, Realizer
from s3real.graph import MultiGraph
from s3real.report import SweepSummary, check_one, plot_coverage, run_sweep, write_csv
from s3real.sequences import parse


def test_sweep_eight():
    s = run_sweep(8)
    # 41 counted independently with the brute-force graphicality oracle
    assert s.ok and s.realized == 41 and s.rejected == 1213 - 41
    assert s.coverage()["two-large n=7: K7"] >= 1
    d = s.as_dict()
    assert d["realized"] == 41 and d["failures"] == []


def test_parallel_sweep_matches_serial():
    serial = run_sweep(9)
    parallel = run_sweep(9, jobs=2)
    assert [r.sequence for r in serial.rows] == [r.sequence for r in parallel.rows]
    assert [r.trace for r in serial.rows] == [r.trace for r in parallel.rows]
    assert serial.coverage() == parallel.coverage()


class _Broken(Realizer):
    def realize(self, seq):
        return RealizationResult(MultiGraph.complete(7), Kernel("K7"), ("broken",))


def test_check_one_reports_failures():
    row = check_one(_Broken(), parse("6^8"))
    assert row.status == "fail" and "degree sequence" in row.detail
    assert check_one(Realizer(), parse("6^8")).status == "ok"
    assert check_one(Realizer(), parse("5^8")).detail.startswith("RealizationRejected")


def test_csv_and_png(tmp_path):
    s = run_sweep(7)
    write_csv(s, tmp_path / "a.csv")
    with open(tmp_path / "a.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert {r["status"] for r in rows} == {"ok"} and len(rows) == 4
    assert rows[0]["sequence"] == "(6^7)" and rows[0]["sum"] == "42"
    plot_coverage(s, tmp_path / "a.png")
    plot_coverage(SweepSummary(5), tmp_path / "empty.png")
    assert (tmp_path / "a.png").stat().st_size > 1000
