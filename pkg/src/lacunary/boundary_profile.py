"""Boundary behavior at rational points: exponential sums and profiles.

Along the line Re z = x -> 0+ the series f(x + iy) = sum_k e^{-x g(k)} e^{-i y g(k)}
either blows up at the power-law rate of the y = 0 axis, scaled by a complete
exponential sum, or stays bounded when that sum vanishes.  This module
provides the exponential sums, the Richardson-extrapolated profile limits
for integer b and for b = 3/2, the closed-form duality between the two, the
weighted (Cesaro-type) limits, and the standard rational-height function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ._special import gamma
from .growth import GrowthFunction, g_eval
from .series_eval import direct_sum

__all__ = [
    "RationalPoint",
    "ProfileEstimate",
    "exp_sum",
    "gauss_profile",
    "profile_limit",
    "three_halves_profile",
    "three_halves_target",
    "duality_residual",
    "weighted_limit",
    "standard_Q",
    "rational_blowup",
    "critical_curve",
]


@dataclass(frozen=True)
class RationalPoint:
    """Reduced fraction m/n labeling the boundary point y = 2 pi m/n."""

    m: int
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.m, self.n)
        if g > 1:
            object.__setattr__(self, "m", self.m // g)
            object.__setattr__(self, "n", self.n // g)

    @property
    def value(self) -> float:
        return self.m / self.n


@dataclass(frozen=True)
class ProfileEstimate:
    """Extrapolated boundary-profile value x^(1/d) f(x + iy) as x -> 0+.

    ``convergence_indicator`` is the modulus of the difference of the last
    two Richardson extrapolants; it is reported, never asserted small -- the
    limit may genuinely fail to exist.
    """

    point: object                 # RationalPoint or float (y / 2pi)
    exponent_d: Fraction
    extrapolated_value: complex
    x_sequence: tuple
    raw_values: tuple
    convergence_indicator: float

    def __post_init__(self):
        xs = self.x_sequence
        if any(b >= a for a, b in zip(xs, xs[1:])):
            raise ValueError("x_sequence must be strictly decreasing")


def exp_sum(g: GrowthFunction, y: float, N: int) -> complex:
    """Compensated partial sum sum_{k} e^{-i y g(k)} over the first N indices."""
    if N < 1:
        raise ValueError("N must be >= 1")
    ks = np.arange(g.start_index, g.start_index + N, dtype=float)
    gv = np.array([g_eval(g, float(k)) for k in ks])
    terms = np.exp(-1j * y * gv)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def gauss_profile(b: int, p: RationalPoint) -> complex:
    """Normalized complete sum (1/n) sum_{l=1}^n e^{-2 pi i (m/n) l^b}.

    Computed with exact modular exponents so the only rounding is in the
    final cos/sin calls.
    """
    if int(b) != b or b < 2:
        raise ValueError("b must be an integer >= 2")
    b = int(b)
    n, m = p.n, p.m
    total = 0j
    for l in range(1, n + 1):
        r = (m * pow(l, b, n)) % n
        total += cmath.exp(-2j * math.pi * r / n)
    return total / n


def _richardson(xs: Sequence[float], vals: Sequence[complex], inv_d: float):
    """One elimination level for the model V(x) = Q + A x^(inv_d)."""
    out = []
    for i in range(len(vals) - 1):
        rho = (xs[i + 1] / xs[i]) ** inv_d
        out.append((vals[i + 1] - rho * vals[i]) / (1 - rho))
    return out


def profile_limit(g: GrowthFunction, d, y: float,
                  x_grid: Sequence[float]) -> ProfileEstimate:
    """Richardson-extrapolated limit of x^(1/d) f(x + iy) as x -> 0+.

    The correction model is V(x) = Q + A x^(1/d), matching the half-integer
    ladder of the small-x expansion; one elimination level is applied.
    """
    d = Fraction(d).limit_denominator(64) if not isinstance(d, Fraction) else d
    xs = [float(x) for x in x_grid]
    if len(xs) < 3:
        raise ValueError("need at least 3 grid points")
    if any(b >= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_grid must be strictly decreasing")
    if xs[-1] < 1e-5:
        raise ValueError("smallest x below the 1e-5 double-precision floor")
    inv_d = 1.0 / float(d)
    vals = [x ** inv_d * direct_sum(g, complex(x, y)).value for x in xs]
    rich = _richardson(xs, vals, inv_d)
    indicator = abs(rich[-1] - rich[-2]) if len(rich) >= 2 else float("inf")
    return ProfileEstimate(point=y / (2 * math.pi), exponent_d=d,
                           extrapolated_value=rich[-1],
                           x_sequence=tuple(xs), raw_values=tuple(vals),
                           convergence_indicator=indicator)


def three_halves_target(p: RationalPoint) -> complex:
    """Closed-form profile value for the b = 3/2 family:
    (sqrt(6 pi i)/3^(7/4)) (n/m)^(1/4) (1/n) sum_l e^(-2 pi i (m/n) l^3)."""
    if p.m <= 0:
        raise ValueError("the b=3/2 family needs m >= 1")
    return (cmath.sqrt(6j * math.pi) / 3 ** 1.75
            * (p.n / p.m) ** 0.25 * gauss_profile(3, p))


def three_halves_profile(p: RationalPoint,
                         x_grid: Sequence[float]) -> ProfileEstimate:
    """Extrapolated sqrt(x) f(x + i y*) for the b = 3/2 series at the family
    of boundary points y* = -(4 pi/(3 sqrt 3)) sqrt(n/m).

    The closed-form limit is :func:`three_halves_target`.
    """
    if p.m <= 0:
        raise ValueError("the b=3/2 family needs m >= 1")
    xs = [float(x) for x in x_grid]
    if len(xs) < 3:
        raise ValueError("need at least 3 grid points")
    if any(b >= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_grid must be strictly decreasing")
    if xs[-1] < 1e-5:
        raise ValueError("smallest x below the 1e-5 double-precision floor")
    g = GrowthFunction.power(1.5, start_index=1)
    y_star = -(4 * math.pi / (3 * math.sqrt(3.0))) * math.sqrt(p.n / p.m)
    vals = [math.sqrt(x) * direct_sum(g, complex(x, y_star)).value for x in xs]
    rich = _richardson(xs, vals, 0.5)
    indicator = abs(rich[-1] - rich[-2]) if len(rich) >= 2 else float("inf")
    return ProfileEstimate(point=p, exponent_d=Fraction(2),
                           extrapolated_value=rich[-1],
                           x_sequence=tuple(xs), raw_values=tuple(vals),
                           convergence_indicator=indicator)


def duality_residual(p: RationalPoint) -> float:
    """Closed-form residual of the 3 <-> 3/2 profile duality.

    With s = -(2/(3 sqrt 3)) sqrt(n/m) (the profile argument of the b = 3/2
    family), the two closed forms satisfy

        Q_{3/2}(s) = (sqrt(6 pi i) |s|^(1/2) / Gamma(4/3))
                     * (1/(3 sqrt 2)) * Q_3((4/27) s^(-2)),

    where Q_3(m/n) = Gamma(4/3) (1/n) sum_l e^(-2 pi i (m/n) l^3) and the
    argument map (4/27) s^(-2) = m/n is evaluated in exact rational
    arithmetic.  Both sides are finite sums; the residual is pure rounding.
    """
    lhs = three_halves_target(p)
    s_sq = Fraction(4, 27) * Fraction(p.n, p.m)        # s^2 exactly
    arg = Fraction(4, 27) / s_sq                       # = m/n exactly
    q3 = gamma(4 / 3) * gauss_profile(3, RationalPoint(arg.numerator, arg.denominator))
    s_abs = math.sqrt(float(s_sq))
    rhs = (cmath.sqrt(6j * math.pi) * math.sqrt(s_abs) / gamma(4 / 3)
           / (3 * math.sqrt(2.0)) * q3)
    return abs(lhs - rhs)


def weighted_limit(g: GrowthFunction, y: float, rho: Callable[[float], float],
                   rho_prime: Callable[[float], float], N_max: int):
    """Weighted exponential-sum limit L and the comparison integral Phi.

    L is estimated as the average of S_N / rho(N) over the last decade of
    N <= N_max, where S_N = sum_k rho'(k) e^(-i y g(k)); Phi(x) =
    integral_0^inf e^(-x g(u)) rho'(u) du by graded Gauss quadrature.  The
    pair feeds the comparison f(x+iy) ~ L Phi(x).  When the last-decade
    values spread by more than 10% the limit is flagged (``limit_ok`` False)
    but still reported, matching the limsup fallback.
    """
    if N_max < 20:
        raise ValueError("N_max too small for a last-decade average")
    lo = max(2, N_max // 10)
    partial = 0j
    samples = []
    for k in range(g.start_index, g.start_index + N_max):
        idx = k - g.start_index + 1
        partial += rho_prime(k) * cmath.exp(-1j * y * g_eval(g, k))
        if idx >= lo:
            samples.append(partial / rho(idx))
    samples = np.array(samples)
    L = complex(samples.mean())
    scale = max(abs(L), np.abs(samples).max(), 1e-30)
    spread = float(np.abs(samples - L).max() / scale)

    x_nodes, w_nodes = np.polynomial.legendre.leggauss(24)

    def Phi(x: float) -> float:
        # integrate to where x*g(u) ~ 46, graded panels toward 0
        from .growth import g_inverse
        U = g_inverse(g, 46.0 / x)
        edges = U * np.linspace(0, 1, 25) ** 1.5
        total = 0.0
        for a, b_ in zip(edges[:-1], edges[1:]):
            mid, h = (a + b_) / 2, (b_ - a) / 2
            u = mid + h * x_nodes
            vals = np.array([math.exp(-x * g_eval(g, float(uu))) * rho_prime(float(uu))
                             for uu in u])
            total += float(np.sum(h * w_nodes * vals))
        return total

    return {"L_estimate": L, "Phi": Phi, "spread": spread,
            "limit_ok": spread <= 0.10}


def standard_Q(x: float, q_max: int) -> float:
    """1/q when x is (within 1e-12) the reduced fraction p/q, q <= q_max; else 0."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    for q in range(1, q_max + 1):
        p = round(x * q)
        if abs(x - p / q) < 1e-12:
            return 1.0 / q
    return 0.0


def rational_blowup(b: int, p: RationalPoint, delta: float) -> complex:
    """Predicted leading term of f at distance delta from the boundary point
    2 pi i m/n: gauss_profile(b, m/n) * Gamma(1+1/b) * delta^(-1/b).

    When the exponential sum vanishes the prediction is 0 and f stays
    bounded; otherwise f blows up at the same x -> 0 rate as on the real
    axis, scaled by the sum.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    return gauss_profile(b, p) * gamma(1 + 1 / b) * delta ** (-1.0 / b)


def critical_curve(r: float) -> float:
    """Boundary-approach angle theta(r) = (9/(64 pi^3)) r^2 log(1/r)."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    return 9.0 / (64 * math.pi ** 3) * r * r * math.log(1.0 / r)
