import sys
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))
RINGS = HERE.parent / "rings"

from hilbcoeff.parser import parse_ring  # noqa: E402


def load(name: str):
    return parse_ring((RINGS / f"{name}.ring").read_text())


@pytest.fixture
def poly2():
    return load("poly2")


@pytest.fixture
def quadric():
    return load("quadric")


@pytest.fixture
def idealization():
    return load("idealization")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
