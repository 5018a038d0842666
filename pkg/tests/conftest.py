import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from k0dense.cartan import Arrow, QuiverAlgebra

DATA = Path(__file__).resolve().parent.parent / "src" / "k0dense" / "data"


@pytest.fixture
def data_dir():
    return DATA


def truncated_polynomial(n):
    """k[x]/(x^n) as a one-loop quiver; n = 1 kills the loop itself."""
    if n == 1:
        return QuiverAlgebra(("1",))
    return QuiverAlgebra(("1",), (Arrow("x", "1", "1"),), (("x",) * n,))


_acceptance_lines = []


def record_criterion(number, title, passed, detail=""):
    _acceptance_lines.append(
        f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    )


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
