import numpy as np
import pytest

from spinwigner.spin_core import SpinQuantumNumber

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20191028)


def spin(text) -> SpinQuantumNumber:
    return SpinQuantumNumber.parse(text)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
