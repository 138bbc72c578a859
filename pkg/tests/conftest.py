"""Shared pytest wiring: one visible PASS/FAIL line per acceptance
criterion at the end of the run."""

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _acceptance[report.nodeid.split("::")[-1]] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_acceptance):
        verdict = "PASS" if _acceptance[name] else "FAIL"
        terminalreporter.write_line("%s: %s" % (name, verdict))
