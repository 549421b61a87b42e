"""Shared fixtures: expensive session-scoped objects built once."""

import pytest

from lacunary import GrowthFunction, psi_series


@pytest.fixture(scope="session")
def power2():
    return GrowthFunction.power(2)


@pytest.fixture(scope="session")
def power3():
    return GrowthFunction.power(3)


@pytest.fixture(scope="session")
def power32():
    return GrowthFunction.power(1.5)


@pytest.fixture(scope="session")
def geometric2():
    return GrowthFunction.geometric(2)


@pytest.fixture(scope="session")
def series_k8():
    """Conjugacy series at order 8, default degree cap 1024 (~3 s to build)."""
    return psi_series(8)


@pytest.fixture(scope="session")
def series_k4():
    return psi_series(4)
