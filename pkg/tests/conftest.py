"""Acceptance reporting: tests marked ``criterion(n)`` roll up into one
PASS/FAIL line per criterion at the end of the run."""

CRITERIA = {
    1: "cancellation example collapses to a single P gate (T-count 0, < 1 ms)",
    2: "ccZ: T-count 7, T-depth 3 with no ancilla and 2 with one (< 1 ms)",
    3: "expanded Toffoli: T-depth 1, T-count 7 with unbounded ancillae",
    4: "Barenco k-controlled X: T-count 12k-20, unbounded T-depth 4k-8 (< 0.1 s)",
    5: "clean-ancilla k-controlled X: T-count 8k-9, unbounded T-depth 2k-3",
    6: "GF(2^m) multipliers: unbounded T-depth 2; T-count 68 at m=4, <= 0.7 x 7m^2 otherwise (< 1 s)",
    7: "zero-ancilla T-depth of k-controlled X within 1 of the reference table",
    8: "every optimized benchmark passes the summary check and, when small, the unitary check",
    9: "partition_all is minimal against brute force on >= 500 random term sets (< 10 s)",
    10: "the independence oracle satisfies the matroid axioms (exhaustive, |S| <= 6)",
    11: "T-count never grows; T-depth never grows with more ancillae",
    12: "10-controlled X and GF(2^8) optimize in < 5 s each",
}

_results: dict[int, dict[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    entry = _results.setdefault(crit, {"passed": [], "failed": []})
    if report.failed:
        entry["failed"].append(report.nodeid.split("::", 1)[-1])
    elif report.when == "call" and report.passed:
        entry["passed"].append(report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(CRITERIA):
        entry = _results.get(crit)
        if entry is None:
            tr.write_line(f"criterion {crit:2d}: NOT RUN  {CRITERIA[crit]}")
            continue
        status = "FAIL" if entry["failed"] else "PASS"
        checks = len(entry["passed"]) + len(entry["failed"])
        tr.write_line(f"criterion {crit:2d}: {status}     {CRITERIA[crit]} [{checks} test{'s' * (checks != 1)}]")
        for name in entry["failed"]:
            tr.write_line(f"               failed: {name}")
