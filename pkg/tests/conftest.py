from pathlib import Path

import pytest

from srikit.decorations import parse_decoration

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden():
    def load(name):
        return parse_decoration((GOLDEN / name).read_text())

    return load


@pytest.fixture
def golden_text():
    return lambda name: (GOLDEN / name).read_text()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
