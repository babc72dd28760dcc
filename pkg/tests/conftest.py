import re

import pytest

from batchcodes import build_matrix, grouped_matrix

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(number, passed, detail):
        line = f"criterion {str(number):>3}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed
    return record


def _order(line):
    num, suffix = re.match(r'criterion\s+(\d+)(\w*)', line).groups()
    return int(num), suffix


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=_order):
            terminalreporter.write_line(line)


@pytest.fixture(scope='session')
def example1():
    return grouped_matrix(6, 4).flatten()


@pytest.fixture(scope='session')
def example2():
    rows = [
        "1000010000",
        "0100001000",
        "0010000100",
        "0001000010",
        "0000100001",
    ]
    from batchcodes import IncidenceMatrix
    return IncidenceMatrix([[int(c) for c in r] for r in rows])


@pytest.fixture
def identity():
    def make(n):
        return build_matrix([{i} for i in range(1, n + 1)], n)
    return make
