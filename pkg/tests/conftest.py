import pytest

from birkhoff import GOLDEN, Observable, birkhoff_irrational, convergent
from birkhoff.renorm import build_f_n

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def logsin():
    return Observable.logsin()


@pytest.fixture(scope="session")
def q():
    return lambda n: convergent(GOLDEN, n).q


@pytest.fixture(scope="session")
def trace24(logsin):
    """S_1..S_{q_24} at the golden mean, shared by the slower tests."""
    return birkhoff_irrational(logsin, GOLDEN, convergent(GOLDEN, 24).q)


@pytest.fixture(scope="session")
def golden_f(logsin):
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_f_n(logsin, GOLDEN, n)
        return cache[n]

    return get


@pytest.fixture
def criterion():
    """Record one acceptance criterion: a dict of check name -> (ok, detail)."""

    def record(number, title, checks):
        ok = all(v[0] for v in checks.values())
        detail = "; ".join(f"{k}: {'ok' if v[0] else 'FAIL'} ({v[1]})" for k, v in checks.items())
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {title} | {detail}"
        _ACCEPTANCE_LINES.append((number, line))
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
