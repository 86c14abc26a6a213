import math

import pytest
from hypothesis import settings

from holoirs import SphericalPoint, SurfaceSpec, wavelength

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

F_300G = 300e9
LAM = wavelength(F_300G)
K = 2.0 * math.pi / LAM


@pytest.fixture
def lam():
    return LAM


@pytest.fixture
def k():
    return K


@pytest.fixture
def fig2_tx():
    return SphericalPoint.from_degrees(2.0, 45.0, 36.0)


@pytest.fixture
def surface_200():
    return SurfaceSpec(200 * LAM, 200 * LAM)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    def record(number: int, passed: bool, detail: str):
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        print(ACCEPTANCE_LINES[number])
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
