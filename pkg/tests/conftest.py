from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "dosum",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("dosum")

# criterion number -> (status, detail), filled by the acceptance tests
ACCEPTANCE_LINES: dict = {}


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        status, detail = ACCEPTANCE_LINES[num]
        terminalreporter.write_line(f"criterion {num}: {status}  {detail}")
