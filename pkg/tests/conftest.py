import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cognatebf.boolean import TruthTable, parse_truth_table  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def tt():
    return parse_truth_table


def random_tables(rng, n, count):
    return [TruthTable(row) for row in rng.integers(0, 2, size=(count, 1 << n), dtype=np.uint8)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
