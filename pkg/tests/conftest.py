import sys
from pathlib import Path

import pytest

from ismtopsis.pipeline import study_dir


@pytest.fixture(scope="session")
def study() -> Path:
    return study_dir()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
