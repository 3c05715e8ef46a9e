"""Print one PASS/FAIL line per acceptance criterion at the end of the run."""

_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.when == "call" or report.failed:
        _results.setdefault(name, ("PASS" if report.passed else "FAIL", report.nodeid))
        if report.failed:
            _results[name] = ("FAIL", report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        status, _ = _results[name]
        terminalreporter.write_line(f"{status}  {name}")
