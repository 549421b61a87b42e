"""Exact representations: the b=2 theta identity and the geometric-base
Fourier/Gamma representation, with the rational-angle regrouping formula.

Purpose
-------
Two growth families admit exact closed forms:

* b = 2 (g(k) = k^2): the theta-function modular identity

      sum_{k>=1} e^{-z k^2} = (1/2) sqrt(pi/z) - 1/2
                              + sqrt(pi/z) sum_{k>=1} e^{-k^2 pi^2 / z},

  which converts a slowly convergent sum near z = 0 into a rapidly
  convergent dual sum.

* geometric growth (g(k) = a^k): with f(z) = sum_{k>=0} e^{-z a^k},
  the function f(z) + log z/log a - Gcheck(z) is periodic in log z with
  period log a, where

      Gcheck(z) = sum_{n>=1} (-z)^n / (n! (1 - a^n))

  is entire and satisfies Gcheck(z) - Gcheck(z/a) = 1 - e^{-z/a}.  Its
  Fourier coefficients are Gamma values on the imaginary axis:

      f(z) = -log z/log a + Gcheck(z) + c_0
             + (1/log a) sum_{k != 0} Gamma(-2 k pi i/log a) z^{2 k pi i/log a},

  all logs/powers principal.  |Gamma(iy)|^2 = pi/(y sinh(pi y)) gives the
  decay |c_k| ~ e^{-|k| pi^2/log a} / sqrt(|k| log a).

The rational-angle regrouping applies to the lacunary power series
F(s) = sum_{n>=1} s^{a^n}: at s = rho e^{2 pi i m/a^j} the first j terms
form a polynomial and the rest collapse to F(rho^{a^j}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import scipy.integrate as _si

from ._special import complex_gamma
from .growth import GrowthFunction
from .series_eval import direct_sum

__all__ = [
    "GeometricRep",
    "theta_identity_eval",
    "geometric_checkG",
    "geometric_fourier_coeff",
    "geometric_c0",
    "make_geometric_rep",
    "geometric_rep_eval",
    "geometric_zeta_variant_residual",
    "rational_angle_regroup",
    "power_lacunary_eval",
]


def theta_identity_eval(z: complex) -> complex:
    """Right-hand side of the b=2 identity, dual sum truncated below 1e-16."""
    z = complex(z)
    if not z.real > 0:
        raise ValueError(f"theta_identity_eval requires Re z > 0, got {z}")
    root = cmath.sqrt(cmath.pi / z)
    dual_rate = cmath.pi * cmath.pi / z  # Re > 0
    acc = 0.0 + 0.0j
    k = 1
    while True:
        term = cmath.exp(-dual_rate * k * k)
        acc += term
        if abs(term) < 1e-16 * (1.0 + abs(acc)):
            break
        k += 1
        if k > 10 ** 6:  # unreachable for Re z > 0; guard anyway
            raise RuntimeError("theta dual sum failed to converge")
    return 0.5 * root - 0.5 + root * acc


def geometric_checkG(a: float, z: complex, M: int = 40) -> complex:
    """Gcheck(z) = sum_{n=1}^{M} (-z)^n / (n! (1 - a^n)).

    Entire in z; the factorial tail beyond M is below 1e-15 for the
    default cutoff on |z| of order ten.
    """
    if not a > 1:
        raise ValueError(f"geometric_checkG requires a > 1, got {a}")
    z = complex(z)
    acc = 0.0 + 0.0j
    term = 1.0 + 0.0j  # (-z)^n / n!
    for n in range(1, M + 1):
        term *= -z / n
        acc += term / (1.0 - a ** n)
    return acc


def geometric_fourier_coeff(a: float, k: int) -> complex:
    """c_k = Gamma(-2 k pi i / log a) / log a for k != 0."""
    if k == 0:
        raise ValueError("geometric_fourier_coeff requires k != 0 (use geometric_c0)")
    if not a > 1:
        raise ValueError(f"geometric_fourier_coeff requires a > 1, got {a}")
    la = math.log(a)
    return complex_gamma(complex(0.0, -2.0 * math.pi * k / la)) / la


def geometric_c0(a: float) -> complex:
    """c_0 = int_0^1 f(a^y) dy + 1/2 - int_0^1 Gcheck(a^y) dy.

    f is evaluated by direct summation at the real points a^y in [1, a];
    each integral is done by adaptive quadrature to 1e-10.
    """
    if not a > 1:
        raise ValueError(f"geometric_c0 requires a > 1, got {a}")
    growth = GrowthFunction.geometric(a)

    def f_integrand(y: float) -> float:
        return direct_sum(growth, complex(a ** y), tol=1e-13).value.real

    def g_integrand(y: float) -> float:
        return geometric_checkG(a, complex(a ** y)).real

    i1, e1 = _si.quad(f_integrand, 0.0, 1.0, limit=200, epsabs=1e-12, epsrel=1e-11)
    i3, e3 = _si.quad(g_integrand, 0.0, 1.0, limit=200, epsabs=1e-12, epsrel=1e-11)
    if max(e1, e3) > 1e-9:
        raise RuntimeError(f"geometric_c0 quadrature error {max(e1, e3):.3g} too large")
    return complex(i1 + 0.5 - i3)


@dataclass(frozen=True)
class GeometricRep:
    """Assembled geometric-base representation (c_0 computed once)."""

    a: float
    c0: complex
    fourier_cutoff: int
    entire_series_cutoff: int


def make_geometric_rep(a: float, fourier_cutoff: int | None = None, entire_series_cutoff: int = 40) -> GeometricRep:
    """Build a GeometricRep; the Fourier cutoff K is chosen so the first
    discarded coefficient satisfies e^{-K pi^2/log a} < 1e-14."""
    if not a > 1:
        raise ValueError(f"make_geometric_rep requires a > 1, got {a}")
    if fourier_cutoff is None:
        la = math.log(a)
        fourier_cutoff = max(2, math.ceil(14.0 * math.log(10.0) * la / (math.pi ** 2)) + 1)
    return GeometricRep(
        a=float(a),
        c0=geometric_c0(a),
        fourier_cutoff=int(fourier_cutoff),
        entire_series_cutoff=int(entire_series_cutoff),
    )


def geometric_rep_eval(rep: GeometricRep, z: complex) -> complex:
    """-log z/log a + Gcheck(z) + c_0 + truncated Fourier sum (principal log).

    The k-th Fourier pair decays like e^{-k (pi^2 - 2 pi |arg z|)/log a}: the
    automatic cutoff targets real z, so points near the imaginary axis need
    an explicit ``fourier_cutoff`` sized for the sector (e.g. 24 keeps the
    tail below 1e-12 for |arg z| <= 1.2 at a = 2 or 3).  Cutoffs beyond ~60
    would underflow the coefficients while the modes overflow; stay below
    that.
    """
    z = complex(z)
    if not z.real > 0:
        raise ValueError(f"geometric_rep_eval requires Re z > 0, got {z}")
    return _assemble(rep, z)


def _assemble(rep: GeometricRep, z: complex) -> complex:
    la = math.log(rep.a)
    logz = cmath.log(z)
    acc = -logz / la + geometric_checkG(rep.a, z, rep.entire_series_cutoff) + rep.c0
    for k in range(1, rep.fourier_cutoff + 1):
        omega = 2.0 * math.pi * k / la
        ck = geometric_fourier_coeff(rep.a, k)
        acc += ck * cmath.exp(1j * omega * logz)
        acc += ck.conjugate() * cmath.exp(-1j * omega * logz)  # c_{-k} = conj(c_k)
    return acc


def geometric_zeta_variant_residual(rep: GeometricRep, z: complex) -> float:
    """Diagnostic: |representation evaluated at zeta = 1 - e^{-z}  -  f(z)|.

    A variant statement substitutes zeta = 1 - e^{-z} for z; the two agree
    as z -> 0 but differ at finite distance.  This reports the discrepancy
    against direct summation without endorsing the variant.
    """
    z = complex(z)
    zeta_var = 1.0 - cmath.exp(-z)
    f_true = direct_sum(GrowthFunction.geometric(rep.a), z, tol=1e-13).value
    return abs(_assemble(rep, zeta_var) - f_true)


def power_lacunary_eval(a: int, s: complex, tol: float = 1e-16) -> complex:
    """F(s) = sum_{n>=1} s^{a^n} for |s| < 1 (direct reference evaluation)."""
    if abs(s) >= 1:
        raise ValueError(f"power_lacunary_eval requires |s| < 1, got |s|={abs(s)}")
    acc = 0.0 + 0.0j
    n = 1
    while True:
        term = s ** (a ** n)
        acc += term
        if abs(term) < tol:
            return acc
        n += 1
        if n > 300:
            return acc


def rational_angle_regroup(a: int, m: int, j: int, rho: float) -> tuple[complex, float]:
    """Split F(rho e^{2 pi i m/a^j}) into polynomial + reduced tail argument.

    Returns (P, rho') with

        F(rho e^{2 pi i m / a^j}) = P + F(rho'),
        P = sum_{n=1}^{j} rho^{a^n} e^{2 pi i m a^{n-j}},   rho' = rho^{a^j}.

    For n >= j+1 every phase e^{2 pi i m a^{n-j}} is 1, which collapses the
    tail to F(rho^{a^j}); the reduced argument is rho^{a^j}, not rho (the
    two differ by exactly the double-counted polynomial terms).  Phases are
    reduced with exact integer arithmetic mod a^j before exponentiation.
    """
    if a < 2 or j < 0 or m < 0:
        raise ValueError("rational_angle_regroup requires a >= 2, m >= 0, j >= 0")
    if not 0 <= rho < 1:
        raise ValueError(f"rational_angle_regroup requires rho in [0,1), got {rho}")
    if j == 0:
        return 0.0 + 0.0j, rho
    aj = a ** j
    poly = 0.0 + 0.0j
    for n in range(1, j + 1):
        phase_num = (m * a ** n) % aj
        poly += rho ** (a ** n) * cmath.exp(2j * math.pi * phase_num / aj)
    return poly, rho ** aj
