import numpy as np
import pytest

from skewlab.sampling import ginibre_density, random_hermitian, random_operator


@pytest.fixture
def rho3():
    return ginibre_density(3, (7, 0))


@pytest.fixture
def ops3():
    return [random_operator(3, (7, 1, t)) for t in range(3)]


@pytest.fixture
def obs3():
    return [random_hermitian(3, (7, 2, t)) for t in range(3)]


def ket0():
    return np.diag([1.0, 0.0]).astype(complex)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
