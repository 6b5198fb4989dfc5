import sys

import mpmath
import pytest

from agmpi.fixedpoint import PrecisionContext

# the oracle helpers print mpmath integers far past the default str() cap
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

# Golden outputs p_0..p_4 of the AGM iteration, truncated to 45 fraction digits.
GOLDEN_P = [
    "2.914213562373095048801688724209698078569671875",
    "3.140579250522168248311331268975823311773440237",
    "3.141592646213542282149344431982695774314437223",
    "3.141592653589793238279512774801863974381225504",
    "3.141592653589793238462643383279502884197114678",
]

ROOT2_45 = "1.414213562373095048801688724209698078569671875"


def mp_digits(value, digits):
    """Truncated decimal string of an mpmath number (positive values)."""
    with mpmath.workdps(digits + 30):
        scaled = mpmath.floor(value * mpmath.mpf(10) ** digits)
        s = str(int(scaled)).zfill(digits + 1)
    head, tail = s[: -digits] or "0", s[-digits:]
    return head + "." + tail


def mp_pi_digits(digits):
    with mpmath.workdps(digits + 30):
        return mp_digits(+mpmath.pi, digits)


@pytest.fixture
def ctx60():
    return PrecisionContext(60)


@pytest.fixture
def ctx200():
    return PrecisionContext(200)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
