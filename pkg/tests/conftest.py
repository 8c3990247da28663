import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cfdigraph.grammar import parse_grammar, to_cnf  # noqa: E402

EXAMPLE1_TEXT = "S -> A B\nB -> S C\nS -> A C\nA -> 0\nC -> 1\n"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def example1():
    return to_cnf(parse_grammar(EXAMPLE1_TEXT))


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
