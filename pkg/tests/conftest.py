import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, str] = {}


@pytest.fixture
def criterion(capsys):
    """criterion(n, ok, detail): print and remember one PASS/FAIL line, return ok."""
    def emit(n: int, ok: bool, detail: str) -> bool:
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _criteria[n] = line
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_criteria):
            terminalreporter.write_line(_criteria[n])
