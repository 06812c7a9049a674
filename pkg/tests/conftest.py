import math

import pytest

from cosetpp import build_field

_FIELDS = {}

_PM = {
    3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2),
    11: (11, 1), 13: (13, 1), 23: (23, 1), 25: (5, 2), 29: (29, 1),
    47: (47, 1), 49: (7, 2),
}


def field(q):
    """Session-cached default field GF(q^2)."""
    if q not in _FIELDS:
        p, m = _PM[q]
        _FIELDS[q] = build_field(p, m)
    return _FIELDS[q]


def admissible_r(q, bound=None):
    """All r in [1, bound] with gcd(r, q - 1) = 1; bound defaults to q."""
    if bound is None:
        bound = q
    return [r for r in range(1, bound + 1) if math.gcd(r, q - 1) == 1]


@pytest.fixture(scope="session")
def f47():
    """The GF(47^2) context with modulus X^2 + X + 13, gamma the root."""
    return build_field(47, 1, modulus2=[13, 1, 1], gamma=[0, 1])


# one line per acceptance criterion, printed after the test summary
ACCEPTANCE_RESULTS: dict = {}


def record_acceptance(number: int, name: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE_RESULTS[number] = (name, ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        name, ok, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number:2d} [{status}] {name}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
