"""Exhaustive sweeps over all graphic sequences of one length.

A sweep realizes every sequence meeting the S3 conditions, checks the
output graph and certificate, and confirms that every other graphic
sequence is rejected.  Results go to a CSV file and a bar chart of how often
each case label of the construction was used.
"""

from __future__ import annotations

import csv
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .certificates import verify
from .graph import degree_sequence, is_simple
from .realize import RealizationRejected, Realizer, rejection_reason
from .sequences import DegreeSequence, graphic_sequences


@dataclass(frozen=True)
class SweepRow:
    sequence: DegreeSequence
    status: str  # "ok", "fail"
    trace: tuple[str, ...] = ()
    detail: str = ""


@dataclass
class SweepSummary:
    n: int
    rows: list[SweepRow] = field(default_factory=list)
    rejected: int = 0
    wrongly_rejected: int = 0
    wrongly_accepted: int = 0

    @property
    def realized(self) -> int:
        return sum(r.status == "ok" for r in self.rows)

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if r.status != "ok"]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.wrongly_rejected and not self.wrongly_accepted

    def coverage(self) -> Counter:
        out = Counter()
        for r in self.rows:
            out.update(set(r.trace))
        return out

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "realized": self.realized,
            "failures": [{"sequence": str(r.sequence), "detail": r.detail} for r in self.failures],
            "rejected": self.rejected,
            "wrongly_rejected": self.wrongly_rejected,
            "wrongly_accepted": self.wrongly_accepted,
            "coverage": dict(sorted(self.coverage().items())),
        }


def check_one(realizer: Realizer, seq: DegreeSequence) -> SweepRow:
    try:
        res = realizer.realize(seq)
        if not is_simple(res.graph):
            return SweepRow(seq, "fail", res.trace, "graph is not simple")
        if degree_sequence(res.graph) != seq:
            return SweepRow(seq, "fail", res.trace, f"degree sequence {degree_sequence(res.graph)}")
        verdict = verify(res.graph, res.certificate)
        if not verdict.ok:
            return SweepRow(seq, "fail", res.trace, verdict.describe())
        return SweepRow(seq, "ok", res.trace)
    except Exception as exc:  # reported, not raised: a sweep collects all failures
        return SweepRow(seq, "fail", (), f"{type(exc).__name__}: {exc}")


def _rejected_properly(realizer: Realizer, seq: DegreeSequence) -> bool:
    try:
        realizer.realize(seq)
    except RealizationRejected:
        return True
    return False


def _chunk(args):
    n, degrees, budget, seed = args
    from .z3build import Z3Builder

    realizer = Realizer(Z3Builder(budget=budget, seed=seed))
    return [check_one(realizer, DegreeSequence(d)) for d in degrees]


def run_sweep(n: int, realizer: Realizer | None = None, jobs: int = 1,
              budget: int | None = None, seed: int = 0) -> SweepSummary:
    """Sweep all graphic sequences of length ``n``."""
    from .z3build import DEFAULT_BUDGET, Z3Builder

    budget = DEFAULT_BUDGET if budget is None else budget
    realizer = realizer or Realizer(Z3Builder(budget=budget, seed=seed))
    summary = SweepSummary(n)
    todo = []
    for seq in graphic_sequences(n):
        if rejection_reason(seq) is None:
            todo.append(seq)
        else:
            summary.rejected += 1
            if not _rejected_properly(realizer, seq):
                summary.wrongly_accepted += 1
    if jobs > 1 and len(todo) > jobs:
        parts = [todo[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_chunk, [(n, [s.degrees for s in p], budget, seed) for p in parts])
            rows = [r for c in chunks for r in c]
        rows.sort(key=lambda r: r.sequence.degrees, reverse=True)
    else:
        rows = [check_one(realizer, s) for s in todo]
    summary.rows = rows
    return summary


def write_csv(summary: SweepSummary, path) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["n", "sequence", "sum", "status", "trace", "detail"])
        for r in summary.rows:
            out.writerow([summary.n, str(r.sequence), r.sequence.total, r.status, " | ".join(r.trace), r.detail])


def plot_coverage(summary: SweepSummary, path) -> None:
    """Horizontal bar chart: number of sequences whose trace used each label."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cov = summary.coverage()
    labels = sorted(cov)
    height = max(2.5, 0.32 * len(labels) + 1.2)
    fig, ax = plt.subplots(figsize=(9, height))
    ax.barh(range(len(labels)), [cov[k] for k in labels], color="#4a78a8")
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    if labels:
        ax.set_xscale("log")
    else:
        ax.text(0.5, 0.5, "no qualifying sequences", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("sequences using the case")
    ax.set_title(f"case coverage, n = {summary.n}: {summary.realized} realized, "
                 f"{len(summary.failures)} failed")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
