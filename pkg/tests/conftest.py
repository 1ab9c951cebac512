import sys

import pytest

from dbhom.core import Cycle

TABLE2 = {
    (1, 1, 0): "120221100",
    (1, 1, 1): "221120100",
    (1, 1, 2): "220121100",
    (1, 2, 0): "102112200",
    (1, 2, 1): "112102200",
    (1, 2, 2): "112202100",
    (2, 1, 0): "201221100",
    (2, 1, 1): "221101200",
    (2, 1, 2): "221201100",
    (2, 2, 0): "210112200",
    (2, 2, 1): "110212200",
    (2, 2, 2): "112210200",
}

EXAMPLE_BASE = "00011101"
SHORT_8 = "10110010"
LONG_24 = "000001000110100111011111"


@pytest.fixture
def table2():
    return dict(TABLE2)


@pytest.fixture
def example_base():
    return Cycle.parse(EXAMPLE_BASE, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
