"""Shared pytest plumbing.

The acceptance tests register one human-readable verdict line per
criterion; printing them from the terminal-summary hook keeps them
visible even though pytest captures stdout during the tests.
"""

ACCEPTANCE_LINES = []


def record_acceptance(line):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
