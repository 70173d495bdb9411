import pytest

from tybraid import tydata as td
from tybraid.tydata import Case

REAL_CASES = [Case.SPLIT_REAL, Case.REAL_QUATERNIONIC, Case.RC_ID, Case.RC_CONJ]


@pytest.fixture(autouse=True)
def _default_modulus(monkeypatch):
    monkeypatch.delenv("TYBRAID_MODULUS", raising=False)


def instances(max_n=1, cases=REAL_CASES):
    """(case, n, tau) triples for parametrization."""
    return [(c, n, t) for c in cases for n in range(max_n + 1) for t in (1, -1)]


def make(case, n, tau):
    return td.make(case, n, tau)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
