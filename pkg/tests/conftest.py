from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def m11_path():
    return DATA / "m11.perm"


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
