import itertools
from pathlib import Path

import pytest

from p2t.formula import Formula, is_good

DATA = Path(__file__).parent / "data"

SINGLE_CLAUSE = Formula.from_ints(3, [[-1, 2, -3]])
X1X1 = Formula.from_ints(1, [[1, 1]])


def all_assignments(n):
    """Every assignment in binary-counter order, x1 least significant."""
    for bits in itertools.product((False, True), repeat=n):
        yield {i + 1: b for i, b in enumerate(reversed(bits))}


def nae_satisfiable(formula):
    return any(is_good(formula, a) for a in all_assignments(formula.num_vars))


@pytest.fixture
def data_dir():
    return DATA


# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {desc}")
