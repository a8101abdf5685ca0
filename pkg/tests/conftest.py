"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

CRITERIA = {
    1: "S3 kernel oracle verdicts",
    2: "Z3 kernel oracle verdicts",
    3: "stored lifting scripts and cycle decompositions",
    4: "Erdos-Gallai test against brute force, n <= 7",
    5: "graphicality invariant under laying off, 10,000 cases",
    6: "every qualifying sequence, 7 <= n <= 12, realized and verified",
    7: "oracle confirms every realization with n <= 8, at most 24 edges",
    8: "rejection of non-qualifying sequences; edge and degree bounds",
    9: "modulo-3 orientation witness from the flow command",
    10: "join family degrees and script multiplicities, n <= 40",
    11: "property tests, 1,000 cases each",
}

_outcomes: dict[int, list[tuple[str, bool]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(mark.args[0], []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_outcomes):
        results = _outcomes[k]
        ok = all(p for _, p in results)
        failed = [name for name, p in results if not p]
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {CRITERIA.get(k, '')}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        tr.write_line(line)
