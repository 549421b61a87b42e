"""Direct summation: frozen values, tail-bound honesty, grid consistency."""

import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lacunary import GrowthFunction, direct_sum, grid_eval

# Recomputed at 30 significant digits with an independent high-precision sum.
SUM_POWER2_Z1 = 0.386318602413326076515625275579
SUM_GEOM2_START1_Z1 = 0.153986497288436767451202513483
SUM_GEOM2_START0_Z1 = 0.521865938459879089046726283644


def test_frozen_reference_values(power2, geometric2):
    assert abs(direct_sum(power2, 1.0).value - SUM_POWER2_Z1) < 1e-15
    g1 = GrowthFunction.geometric(2, start_index=1)
    assert abs(direct_sum(g1, 1.0).value - SUM_GEOM2_START1_Z1) < 1e-15
    assert abs(direct_sum(geometric2, 1.0).value - SUM_GEOM2_START0_Z1) < 1e-15


def test_tail_bound_is_honest(power2):
    r = direct_sum(power2, 0.05, tol=1e-8)
    tight = direct_sum(power2, 0.05, tol=1e-15)
    assert abs(r.value - tight.value) <= r.tail_bound + 1e-15
    assert r.tail_bound <= 1e-8


def test_terms_used_scales_with_x(power2):
    near = direct_sum(power2, 1e-4)
    far = direct_sum(power2, 1.0)
    assert near.terms_used > far.terms_used
    # x = 1e-4 needs roughly sqrt(36 / x) ~ 600 terms
    assert 300 < near.terms_used < 5000


def test_rejects_boundary_and_beyond(power2):
    with pytest.raises(ValueError):
        direct_sum(power2, 0.0)
    with pytest.raises(ValueError):
        direct_sum(power2, -0.2 + 1j)


def test_geometric_functional_equation(geometric2):
    rng = np.random.default_rng(7)
    for _ in range(20):
        z = complex(10 ** rng.uniform(-2, 0.5), rng.uniform(-3, 3))
        lhs = direct_sum(geometric2, z).value - direct_sum(geometric2, 2 * z).value
        assert abs(lhs - cmath.exp(-z)) < 1e-12


def test_grid_eval_matches_pointwise(power3):
    zs = [0.3 + 0.1j, 0.5, 1.0 - 0.4j, 0.05 + 0.9j]
    grid = grid_eval(power3, zs)
    for z, r in zip(zs, grid):
        assert r.value == direct_sum(power3, z).value


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.02, max_value=2.0),
       st.floats(min_value=-5.0, max_value=5.0))
def test_value_bounded_by_real_axis(power2, x, y):
    # |sum e^{-z k^2}| is maximal along the real axis at the same x
    val = abs(direct_sum(power2, complex(x, y)).value)
    axis = direct_sum(power2, x).value.real
    assert val <= axis + 1e-12
