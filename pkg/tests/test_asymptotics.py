"""Laplace-integral + fractional-part decomposition of the direct sum."""

import math

import pytest

from lacunary import (GrowthFunction, decompose, direct_sum, growth_constant,
                      laplace_integral, measure_rate)
from lacunary._special import complex_gamma


def test_decomposition_identity_power(power2, power3, power32):
    # integral + remainder equals the k >= 1 sum to machine precision
    for g in (power2, power3, power32):
        for z in (0.2, 0.5 + 0.3j, 0.05 + 0.2j, 1.0 - 0.6j):
            d = decompose(g, z)
            f = direct_sum(g, z).value
            assert abs(d.integral_term + d.remainder - f) < 5e-14


def test_decomposition_identity_geometric(geometric2):
    g1 = GrowthFunction.geometric(2, start_index=1)
    for z in (0.5, 0.3 + 0.2j, 1.2 - 0.4j):
        d = decompose(geometric2, z)
        f1 = direct_sum(g1, z).value
        assert abs(d.integral_term + d.remainder - f1) < 5e-14


def test_laplace_integral_closed_form(power2, power3):
    # int_0^inf e^{-z s^b} ds = Gamma(1 + 1/b) z^(-1/b)
    for g, b in ((power2, 2.0), (power3, 3.0)):
        for z in (0.3, 0.02, 0.1 + 0.05j):
            ref = complex_gamma(1 + 1 / b) * complex(z) ** (-1 / b)
            got = laplace_integral(g, z)
            assert abs(got - ref) < 1e-10 * abs(ref)


def test_remainder_approaches_minus_half(power2):
    # the z -> 0 limit of the fractional remainder is -1/2
    d = decompose(power2, 1e-4)
    assert abs(d.remainder - (-0.5)) < 0.01
    assert d.half_term == -0.5


def test_leading_order_blowup(power3):
    # f(x) = Gamma(4/3) x^{-1/3} - 1/2 + O(x) as x -> 0
    x = 1e-6
    f = direct_sum(power3, x).value.real
    two_term = math.gamma(4 / 3) * x ** (-1 / 3) - 0.5
    assert abs(f - two_term) < 1e-6 * abs(two_term)


def test_growth_constant_and_measure_rate(power2):
    # recovered by quadrature against the scaling profile, not assumed
    assert abs(growth_constant(power2) - math.gamma(1.5)) < 1e-9
    # power growth takes the closed-form path: Gamma(1+1/b) (2x)^(-1/b)
    r = measure_rate(power2, 0.01)
    assert abs(r - math.gamma(1.5) * 0.02 ** -0.5) < 1e-10


def test_growth_constant_rejects_geometric(geometric2):
    with pytest.raises(RuntimeError):
        growth_constant(geometric2)


def test_rejects_left_half_plane(power2):
    with pytest.raises(ValueError):
        decompose(power2, -0.1)
