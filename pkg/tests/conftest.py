import numpy as np
import pytest

from masscap import PerturbedProfile, RadialMetric, SchwarzschildData

# Acceptance grid: every (n, m, r0) lies safely inside x < 1.
DIMENSIONS = (3, 4, 5, 7)
MASSES = (0.5, 1.0, 2.0)
RADII = (1.5, 2.0, 4.0)

SCHWARZSCHILD_GRID = [
    SchwarzschildData(n, m, r0)
    for n in DIMENSIONS
    for m in MASSES
    for r0 in RADII
    if m / (2.0 * r0 ** (n - 2)) < 1.0
]

# Perturbed fixtures: superharmonic bumps, so R >= 0 pointwise, with
# H > 0 and c > 1 at the boundary (verified by the tests that use them).
PERTURBED_FIXTURES = [
    # (n, m, eps, scale, r0)
    (3, 1.0, 0.10, 1.0, 1.0),
    (3, 2.0, 0.30, 2.0, 2.0),
    (3, 0.5, 0.05, 0.5, 1.5),
    (4, 1.0, 0.20, 1.0, 1.5),
    (5, 2.0, 0.15, 3.0, 2.0),
    (7, 1.0, 0.10, 1.0, 1.2),
]


def perturbed_metric(n, m, eps, scale, r0) -> RadialMetric:
    return RadialMetric(n, r0, PerturbedProfile(n, m, eps, scale))


@pytest.fixture(scope="session")
def schwarzschild_grid():
    return SCHWARZSCHILD_GRID


@pytest.fixture(scope="session")
def perturbed_metrics():
    return [perturbed_metric(*params) for params in PERTURBED_FIXTURES]


def rel_err(value, reference):
    return abs(value - reference) / max(1.0, abs(reference))


def log_radii(r0, factor=1e4, count=64):
    return np.geomspace(r0, factor * r0, count)
