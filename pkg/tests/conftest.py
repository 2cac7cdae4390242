import mpmath
import pytest

mpmath.mp.dps = 50


def mpf_of(x):
    """Exact mpmath value of an MPFR endpoint."""
    n, d = x.as_integer_ratio()
    return mpmath.mpf(int(n)) / int(d)


def contains(enc, value):
    return mpf_of(enc.lo) <= value <= mpf_of(enc.hi)


@pytest.fixture
def oracle():
    return mpmath


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
