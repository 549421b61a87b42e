"""Windowed L2 blow-up: quadrature vs closed form, ratio scan, bounds."""

import math

import pytest

from lacunary import (GrowthFunction, WindowSpec, diagonal_term,
                      measure_ratio_scan, offdiagonal_bound, window_l2,
                      window_l2_exact)

# Frozen quarter-window deviations |ratio - 1| for g(k) = k^2 on [0, 1/4]
# (recomputed by scripts/compute_reference_values.py)
QUARTER_DEVIATIONS = {
    0.2:  0.15654,
    0.1:  0.14463,
    0.05: 0.11576,
    0.02: 0.07960,
}


def test_window_spec_validation():
    with pytest.raises(ValueError):
        WindowSpec(0.5, 0.2)
    with pytest.raises(ValueError):
        WindowSpec(0.0, 1.0, quadrature_points=8)
    assert WindowSpec(0.1, 0.3).length == pytest.approx(0.2)


def test_window_quadrature_matches_exact(power2):
    # trapezoid refinement vs the exact pair decomposition
    w = WindowSpec(0.0, 0.25)
    for x in (0.3, 0.1, 0.05):
        q = window_l2(power2, x, w)
        e = window_l2_exact(power2, x, w)
        assert abs(q - e) < 2e-5 * abs(e)


def test_window_additivity(power2):
    # [0, 1/8] + [1/8, 1/4] = [0, 1/4]
    x = 0.1
    a = window_l2_exact(power2, x, WindowSpec(0.0, 0.125))
    b = window_l2_exact(power2, x, WindowSpec(0.125, 0.25))
    c = window_l2_exact(power2, x, WindowSpec(0.0, 0.25))
    assert abs((a + b) - c) < 1e-12 * abs(c)


def test_diagonal_term_is_f_at_2x(power2):
    from lacunary import direct_sum
    x = 0.07
    assert diagonal_term(power2, x) == pytest.approx(
        direct_sum(power2, 2 * x).value.real, rel=1e-13)


def test_quarter_window_frozen_ratios(power2):
    w = WindowSpec(0.0, 0.25)
    ratios = measure_ratio_scan(power2, w, list(QUARTER_DEVIATIONS))
    for got, (x, ref) in zip(ratios, QUARTER_DEVIATIONS.items()):
        assert abs(abs(got - 1.0) - ref) < 5e-5, (x, got, ref)
    # monotone approach of the ratio to 1 as x decreases
    deviations = [abs(r - 1.0) for r in ratios]
    assert deviations == sorted(deviations, reverse=True)


def test_full_period_ratio_is_one(power2):
    # integer-valued growth over a full period: off-diagonal averages vanish
    # identically, so the ratio is 1 at every x (Parseval)
    w = WindowSpec(0.0, 1.0)
    for x in (0.3, 0.1):
        r = window_l2_exact(power2, x, w) / (w.length * diagonal_term(power2, x))
        assert abs(r - 1.0) < 1e-12


def test_offdiagonal_bound_decreasing_in_m(power2):
    x = 0.1
    vals = [offdiagonal_bound(power2, x, m) for m in (1, 2, 3)]
    assert vals[0] > vals[1] > vals[2]
    # frozen magnitudes at x = 0.1
    assert vals[0] == pytest.approx(0.4727, abs=2e-3)
    assert vals[1] == pytest.approx(0.1190, abs=2e-3)
    assert vals[2] == pytest.approx(0.0348, abs=2e-3)


def test_offdiagonal_bound_geometric_start1():
    # geometric gaps grow so fast the first smoothing is already < 1/2
    g = GrowthFunction.geometric(2, start_index=1)
    assert offdiagonal_bound(g, 0.5, 1) < 0.5


def test_large_x_single_term(power2):
    # at x = 10 only the k = 1 term survives: ratio -> 1 trivially
    w = WindowSpec(0.0, 0.25)
    r = window_l2_exact(power2, 10.0, w) / (w.length * diagonal_term(power2, 10.0))
    assert abs(r - 1.0) < 1e-10


def test_scan_validation(power2):
    with pytest.raises(ValueError):
        measure_ratio_scan(power2, WindowSpec(0.0, 0.25), [0.1, 0.2])
    with pytest.raises(ValueError):
        measure_ratio_scan(power2, WindowSpec(0.3, 0.3), [0.2, 0.1])
    with pytest.raises(ValueError):
        window_l2(power2, -1.0, WindowSpec(0.0, 0.25))
