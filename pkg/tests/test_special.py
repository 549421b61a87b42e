"""Special-function kernels: gamma, zeta, Hurwitz zeta, popcount."""

import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from lacunary._special import complex_gamma, gamma, hurwitz_zeta, popcount, zeta


def test_gamma_known_values():
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-14
    assert abs(gamma(5.0) - 24.0) < 1e-12
    with pytest.raises(ValueError):
        gamma(0.0)


def test_complex_gamma_against_mpmath():
    mp.mp.dps = 25
    for w in (0.5 + 0j, 1 + 1j, -0.5 + 0.3j, 2.5 - 4j, 1 / 3 + 0j, 0.25 + 6j):
        ref = complex(mp.gamma(w))
        got = complex_gamma(w)
        assert abs(got - ref) <= 1e-12 * abs(ref)


def test_complex_gamma_reflection_consistency():
    w = -1.3 + 0.7j
    lhs = complex_gamma(w) * complex_gamma(1 - w)
    rhs = math.pi / cmath.sin(math.pi * w)
    assert abs(lhs - rhs) < 1e-12 * abs(rhs)


def test_gamma_imaginary_axis_modulus():
    y = 2.4
    got = abs(complex_gamma(1j * y))
    ref = math.sqrt(math.pi / (y * math.sinh(math.pi * y)))
    assert abs(got - ref) < 1e-12 * ref


def test_zeta_values():
    assert abs(zeta(2.0) - math.pi ** 2 / 6) < 1e-13
    assert abs(zeta(4.0) - math.pi ** 4 / 90) < 1e-13
    mp.mp.dps = 25
    for s in (1.5, 2.5, 5.5, 11.0):
        assert abs(zeta(s) - float(mp.zeta(s))) < 1e-12


def test_hurwitz_zeta_matches_shifted_sum():
    s, a = 4.0, 3.0
    ref = zeta(s) - 1.0 - 2.0 ** -s
    assert abs(hurwitz_zeta(s, a) - ref) < 1e-12


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_popcount_matches_bin(n):
    assert popcount(n) == bin(n).count("1")
