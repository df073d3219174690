import math

import pytest

from dce_bell.circuit import CircuitParams

OMEGA_D = 20 * math.pi * 1e9
HALF = 10 * math.pi * 1e9


def make_params(epsilon=0.6, temperature=0.015, delta_omega_frac=0.0, omega_d=OMEGA_D,
                v=1.2e8, l0_eff=5e-4):
    return CircuitParams(omega_d=omega_d, epsilon=epsilon, delta_omega=delta_omega_frac * omega_d,
                         v=v, l0_eff=l0_eff, temperature=temperature)


@pytest.fixture
def baseline():
    return make_params()


# one line per acceptance criterion, echoed again after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
