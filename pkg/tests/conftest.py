import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: one acceptance criterion, reported in the summary"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", None) != "call":
                continue
            if "acceptance" in report.keywords:
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append(f"{status}: {report.nodeid.split('::')[-1]}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
