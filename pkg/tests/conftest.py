"""Shared fixtures: the acceptance battery's criterion checklist.

Acceptance tests record one `criterion N: PASS/FAIL - detail` line each
through the `criterion` fixture; the hook below prints the collected
lines as a section of the terminal summary, where capture cannot
swallow them.
"""

import pytest

_CRITERION_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for the terminal summary."""
    return _CRITERION_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
