"""Test-session plumbing: collect acceptance pass/fail lines for the summary."""

import pytest

_acceptance_lines = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)
    print(line)


@pytest.hookimpl
def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.line(line)
