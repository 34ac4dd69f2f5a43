import numpy as np
import pytest

from ensemble_knn.dataset import Dataset


def figure2_dataset():
    """25 points in 2-D, query at the origin; nearest five are classes 0,1,1,1,1."""
    near = [
        ((0.10, 0.00), 0),
        ((0.00, 0.20), 1),
        ((0.30, 0.00), 1),
        ((0.00, -0.40), 1),
        ((-0.50, 0.00), 1),
    ]
    far = []
    for j in range(20):
        angle = 2 * np.pi * j / 20
        radius = 1.0 + 0.1 * j
        far.append(((radius * np.cos(angle), radius * np.sin(angle)), 0 if j % 3 else 1))
    points = near + far
    x = np.array([p for p, _ in points])
    y = np.array([c for _, c in points])
    return Dataset(x, y, ("0", "1"), name="figure2")


@pytest.fixture
def figure2():
    return figure2_dataset()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_dataset(rng, n, n_features=3, n_classes=3, grid=None):
    if grid:
        x = rng.integers(0, grid, size=(n, n_features)).astype(float)
    else:
        x = rng.random((n, n_features))
    y = rng.integers(0, n_classes, size=n)
    return Dataset(x, y, tuple(str(c) for c in range(n_classes)))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
