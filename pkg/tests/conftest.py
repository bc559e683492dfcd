import warnings

import pytest

from fockbench.errors import ReliabilityWarning

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def no_reliability_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error", ReliabilityWarning)
        yield
