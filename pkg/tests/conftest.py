import numpy as np
import pytest

from kerrscope import FockConfig, ModelParams, NonlinearSign

TWO_S = 50
FIG1A_OMEGA = 0.06
FIG1A_GAMMA = 1e-3


def fig1a(delta, omega=FIG1A_OMEGA, gamma=FIG1A_GAMMA, sign=NonlinearSign.ATTRACTIVE):
    """Physical parameters for the solid curve of the first figure (alpha = 1)."""
    return ModelParams.from_scaled(delta, 1.0, omega, gamma, TWO_S, sign)


@pytest.fixture
def cfg():
    return FockConfig(dim=20)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
