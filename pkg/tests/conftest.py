import json
import os
from pathlib import Path

import pytest

from densedp.graph import from_edges, parse_edge_list

FIXTURES = Path(__file__).parent / "fixtures"
ACCEPTANCE_LOG: list[str] = []


def calibration() -> dict:
    return json.loads((FIXTURES / "calibration.json").read_text())


def data_dir() -> Path:
    return Path(os.environ.get("DENSEDP_DATA_DIR", Path(__file__).resolve().parent.parent / "data"))


def record(name: str, ok: bool, detail: str) -> None:
    """Log one acceptance line and fail the test when the criterion does not hold."""
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LOG.append(line)
    print(line)
    assert ok, line


def skip_criterion(name: str, reason: str) -> None:
    line = f"[SKIP] {name}: {reason}"
    ACCEPTANCE_LOG.append(line)
    pytest.skip(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    return parse_edge_list(["0 1", "1 2", "2 0"])


@pytest.fixture
def k5():
    return from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])


@pytest.fixture
def star4():
    return from_edges(5, [(0, i) for i in range(1, 5)])
