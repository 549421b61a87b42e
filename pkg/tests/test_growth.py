"""Growth families: evaluation, derivative, inverse, and validation."""

import math

import pytest
from hypothesis import given, strategies as st

from lacunary import GrowthFunction
from lacunary.growth import g_derivative, g_eval, g_inverse


def test_power_defaults():
    g = GrowthFunction.power(2)
    assert g.kind == "power" and g.b == 2.0
    assert g.start_index == 1
    assert g_eval(g, 3.0) == 9.0
    assert g_derivative(g, 3.0) == 6.0


def test_geometric_defaults():
    g = GrowthFunction.geometric(2)
    assert g.start_index == 0
    assert g_eval(g, 0.0) == 1.0
    assert g_eval(g, 3.0) == 8.0


def test_geometric_normalized_starts_at_zero():
    g = GrowthFunction.geometric(2, normalized=True)
    assert g_eval(g, 0.0) == 0.0
    assert g_eval(g, 3.0) == 7.0


def test_custom_growth_roundtrip():
    g = GrowthFunction.custom(lambda k: k ** 2 + k,
                              derivative_fn=lambda k: 2 * k + 1)
    assert g_eval(g, 2.0) == 6.0
    k = g_inverse(g, 6.0)
    assert abs(k - 2.0) < 1e-10


def test_validation_errors():
    with pytest.raises(ValueError):
        GrowthFunction.power(1.0)
    with pytest.raises(ValueError):
        GrowthFunction.geometric(0.5)
    g = GrowthFunction.power(2)
    with pytest.raises(ValueError):
        g_eval(g, -1.0)
    with pytest.raises(ValueError):
        g_derivative(g, -0.5)


@given(st.floats(min_value=1.2, max_value=6.0),
       st.floats(min_value=0.0, max_value=50.0))
def test_power_inverse_roundtrip(b, k):
    g = GrowthFunction.power(b)
    u = g_eval(g, k)
    assert abs(g_inverse(g, u) - k) <= 1e-9 * (1.0 + k)


@given(st.floats(min_value=1.3, max_value=5.0),
       st.floats(min_value=0.0, max_value=30.0))
def test_geometric_inverse_roundtrip(a, k):
    g = GrowthFunction.geometric(a)
    u = g_eval(g, k)
    assert abs(g_inverse(g, u) - k) <= 1e-9 * (1.0 + k)


def test_inverse_is_monotone():
    g = GrowthFunction.power(3)
    us = [0.5, 1.0, 7.0, 100.0, 1e6]
    ks = [g_inverse(g, u) for u in us]
    assert all(k2 > k1 for k1, k2 in zip(ks, ks[1:]))


def test_derivative_matches_finite_difference():
    for g in (GrowthFunction.power(2.7), GrowthFunction.geometric(1.9)):
        for k in (0.5, 2.0, 7.5):
            h = 1e-6
            fd = (g_eval(g, k + h) - g_eval(g, k - h)) / (2 * h)
            assert abs(fd - g_derivative(g, k)) < 1e-5 * (1 + abs(fd))
