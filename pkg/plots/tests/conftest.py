import pytest

_CRITERION_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for the terminal summary."""
    return _CRITERION_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria (plots)")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
