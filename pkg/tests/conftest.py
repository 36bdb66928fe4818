import numpy as np
import pytest

from resonant.spectral import Field, FourierGrid

EPS = np.finfo(float).eps


def random_field(grid, seed=0, decay=0.0):
    rng = np.random.default_rng(seed)
    k = grid.wavenumbers.astype(float)
    c = (rng.standard_normal(grid.n_modes) + 1j * rng.standard_normal(grid.n_modes))
    return Field(grid, c * (1 + k**2) ** (-decay / 2))


def smooth_random_field(grid, seed=0, width=6):
    """Random coefficients on |k| <= width, Gaussian envelope."""
    rng = np.random.default_rng(seed)
    k = grid.wavenumbers.astype(float)
    c = rng.standard_normal(grid.n_modes) + 1j * rng.standard_normal(grid.n_modes)
    c = np.where(np.abs(k) <= width, c * np.exp(-0.5 * (k / (width / 2)) ** 2), 0.0)
    return Field(grid, 0.5 * c / np.sqrt(np.sum(np.abs(c) ** 2)))


@pytest.fixture
def grid32():
    return FourierGrid(32)


@pytest.fixture
def grid64():
    return FourierGrid(64)


# One summary line per acceptance criterion, printed after the test session.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
