from __future__ import annotations

ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for result in sorted(ACCEPTANCE_RESULTS, key=lambda r: r.name):
        terminalreporter.write_line(result.line())
