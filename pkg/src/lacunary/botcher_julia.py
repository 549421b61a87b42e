"""Boettcher conjugacy series for the quadratic map and its Julia curve.

Purpose
-------
The logistic-form iteration x_{n+1} = lam x_n (1 - x_n) is linearised on
its escape basin by a conjugacy psi with

    psi(lam, z) = lam z + sum_{k>=1} lam^{k+1} z psi_k(z),
    psi(0) = 0,  psi'(0) = lam,  psi(z)^2 = lam psi(z^2) (1 + psi(z)).

The coefficient polynomials psi_k are produced by the halving operator

    (T f)(z) = (1/2) sum_{k>=0} 2^{-k} f(z^{2^k}),     T 1 = 1,

through the recurrence (psi_0 = 1)

    psi_k = T( z sum_{j=0}^{k-1} psi_j(z^2) psi_{k-1-j}(z)
               - sum_{j=1}^{k-1} psi_j(z) psi_{k-j}(z) ),

and are binary-lacunary: every power appearing in psi_k has at most k
ones in its binary expansion.  All coefficients are exact rationals with
power-of-two denominators and modulus at most 1.

The boundary of the escape basin (the Julia set of the map) is the image
of the unit circle under z |-> -1/psi(lam, z).  This module samples that
curve from the series and cross-checks it against an independent
escape-time grid classification of the plane.

Conventions
-----------
* psi_1 = T z = z/2 + z^2/4 + z^4/8 + ..., fixed by coefficient matching
  in the functional equation (2 psi_1(z) - psi_1(z^2) = z).
* Truncation: polynomial arithmetic drops terms above ``degree_cap``;
  the count of dropped product terms is recorded on the series.  The
  inherent tail of each T-tower past the cap is silent.
* The escape-time comparison is one-sided (curve -> cloud): the grid
  cloud may contain extra components; the curve must land on it.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from ._special import popcount

__all__ = [
    "SparsePolynomial",
    "BotcherSeries",
    "PsiValue",
    "EscapeCloud",
    "operator_T",
    "psi_series",
    "psi_eval",
    "functional_residual",
    "julia_curve",
    "escape_time_oracle",
    "curve_to_cloud_distance",
    "self_similarity_check",
    "series_to_json",
    "series_from_json",
    "write_points_csv",
]

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


# ----------------------------------------------------------------------
# sparse polynomials with exact rational coefficients
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SparsePolynomial:
    """Polynomial sum_i coeffs[i] * z**powers[i], truncated at degree_cap.

    ``powers`` is strictly increasing, all entries are >= 0 and
    <= ``degree_cap``; coefficients are nonzero exact rationals.
    """

    powers: Tuple[int, ...]
    coeffs: Tuple[Fraction, ...]
    degree_cap: int

    def __post_init__(self) -> None:
        if self.degree_cap < 0:
            raise ValueError("degree_cap must be nonnegative")
        if len(self.powers) != len(self.coeffs):
            raise ValueError("powers and coeffs must have equal length")
        prev = -1
        for p, c in zip(self.powers, self.coeffs):
            if p <= prev:
                raise ValueError("powers must be strictly increasing")
            if p > self.degree_cap:
                raise ValueError(f"power {p} exceeds degree_cap {self.degree_cap}")
            if c == 0:
                raise ValueError("zero coefficients must not be stored")
            prev = p

    @staticmethod
    def from_terms(terms: Mapping[int, Fraction], degree_cap: int) -> "SparsePolynomial":
        """Build from a power -> coefficient mapping, dropping zeros."""
        items = sorted((p, Fraction(c)) for p, c in terms.items() if c != 0)
        return SparsePolynomial(
            powers=tuple(p for p, _ in items),
            coeffs=tuple(c for _, c in items),
            degree_cap=degree_cap,
        )

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(zip(self.powers, self.coeffs))

    def __len__(self) -> int:
        return len(self.powers)

    def degree(self) -> int:
        return self.powers[-1] if self.powers else 0

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=_ZERO)

    def coefficient(self, power: int) -> Fraction:
        try:
            return self.coeffs[self.powers.index(power)]
        except ValueError:
            return _ZERO

    def evaluate(self, z: complex) -> complex:
        """Evaluate at a scalar point (coefficients converted to float)."""
        return sum((float(c) * z ** p for p, c in zip(self.powers, self.coeffs)),
                   complex(0.0))

    def substitute_square(self) -> "SparsePolynomial":
        """p(z) -> p(z^2), truncated at the same degree_cap."""
        terms = {2 * p: c for p, c in zip(self.powers, self.coeffs)
                 if 2 * p <= self.degree_cap}
        return SparsePolynomial.from_terms(terms, self.degree_cap)

    def _binary(self, other: "SparsePolynomial", sign: int) -> "SparsePolynomial":
        if self.degree_cap != other.degree_cap:
            raise ValueError("degree caps differ")
        out = self.as_dict()
        for p, c in zip(other.powers, other.coeffs):
            out[p] = out.get(p, _ZERO) + sign * c
        return SparsePolynomial.from_terms(out, self.degree_cap)

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self._binary(other, +1)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self._binary(other, -1)

    def __rmul__(self, scalar) -> "SparsePolynomial":
        s = Fraction(scalar)
        terms = {p: s * c for p, c in zip(self.powers, self.coeffs)}
        return SparsePolynomial.from_terms(terms, self.degree_cap)


# dict-based kernels used by the recurrence (power -> Fraction)

def _dict_mul(a: Dict[int, Fraction], b: Dict[int, Fraction], cap: int,
              dropped: List[int]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for p, c in a.items():
        for q, d in b.items():
            r = p + q
            if r > cap:
                dropped[0] += 1
                continue
            s = out.get(r, _ZERO) + c * d
            if s == 0:
                out.pop(r, None)
            else:
                out[r] = s
    return out


def _dict_add(a: Dict[int, Fraction], b: Dict[int, Fraction],
              sign: int = 1) -> Dict[int, Fraction]:
    out = dict(a)
    for p, c in b.items():
        s = out.get(p, _ZERO) + sign * c
        if s == 0:
            out.pop(p, None)
        else:
            out[p] = s
    return out


def _dict_squash(a: Dict[int, Fraction], cap: int,
                 dropped: List[int]) -> Dict[int, Fraction]:
    """p(z) -> p(z^2) on raw dicts."""
    out: Dict[int, Fraction] = {}
    for p, c in a.items():
        if 2 * p > cap:
            dropped[0] += 1
        else:
            out[2 * p] = c
    return out


def _dict_scale_z(a: Dict[int, Fraction], cap: int,
                  dropped: List[int]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for p, c in a.items():
        if p + 1 > cap:
            dropped[0] += 1
        else:
            out[p + 1] = c
    return out


def _dict_T(a: Dict[int, Fraction], cap: int) -> Dict[int, Fraction]:
    """(T f)(z) = (1/2) sum_{k>=0} 2^{-k} f(z^{2^k}); T 1 = 1.

    Each input term c z^q with q >= 1 contributes c 2^{-k-1} z^{q 2^k}
    for every k with q 2^k <= cap (the tower tail past the cap is the
    documented silent truncation); a constant maps to itself.
    """
    out: Dict[int, Fraction] = {}
    for q, c in a.items():
        if q == 0:
            s = out.get(0, _ZERO) + c
            if s == 0:
                out.pop(0, None)
            else:
                out[0] = s
            continue
        p = q
        w = _HALF
        while p <= cap:
            s = out.get(p, _ZERO) + c * w
            if s == 0:
                out.pop(p, None)
            else:
                out[p] = s
            p *= 2
            w /= 2
    return out


def operator_T(p: SparsePolynomial) -> SparsePolynomial:
    """Apply the halving operator T exactly; truncation at the cap is silent."""
    return SparsePolynomial.from_terms(_dict_T(p.as_dict(), p.degree_cap),
                                       p.degree_cap)


# ----------------------------------------------------------------------
# the psi_k recurrence
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BotcherSeries:
    """Truncated conjugacy series: psi(lam, z) ~ sum_{k=0}^K lam^{k+1} z psi_k(z).

    ``psi[0]`` is the constant 1; ``dropped_terms`` counts product terms
    discarded at ``degree_cap`` while building the recurrence.
    """

    lambda_order: int
    degree_cap: int
    psi: Tuple[SparsePolynomial, ...]
    dropped_terms: int = 0

    def sizes(self) -> Tuple[int, ...]:
        """Number of stored terms in each psi_k."""
        return tuple(len(p) for p in self.psi)

    def validate(self) -> None:
        """Check the structural invariants; raise ArithmeticError on failure.

        * psi_0 is the constant 1;
        * binary lacunarity: every power in psi_k has popcount <= k;
        * every coefficient has modulus <= 1.
        """
        p0 = self.psi[0]
        if p0.powers != (0,) or p0.coeffs != (Fraction(1),):
            raise ArithmeticError("psi_0 must be the constant 1")
        for k, pk in enumerate(self.psi):
            if k == 0:
                continue
            for p in pk.powers:
                if popcount(p) > k:
                    raise ArithmeticError(
                        f"binary lacunarity violated: power {p} in psi_{k}")
            if pk.max_abs_coeff() > 1:
                raise ArithmeticError(
                    f"coefficient bound violated in psi_{k}: "
                    f"{pk.max_abs_coeff()}")


def psi_series(K: int, D: int | None = None) -> BotcherSeries:
    """Compute psi_0..psi_K by the halving-operator recurrence.

    ``D`` is the polynomial degree cap; the default D = 2^(K+2) keeps the
    lowest new lacunary powers of every psi_k (they grow like 2^k, so a
    much smaller cap silently empties the high-order polynomials).
    Binary lacunarity is checked after every step; the returned series
    records how many product terms were dropped at the cap.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if D is None:
        D = 2 ** (K + 2)
    if D < 1:
        raise ValueError("degree cap must be >= 1")
    dropped = [0]
    psis: List[Dict[int, Fraction]] = [{0: Fraction(1)}]
    for k in range(1, K + 1):
        conv: Dict[int, Fraction] = {}
        for j in range(k):
            conv = _dict_add(
                conv,
                _dict_mul(_dict_squash(psis[j], D, dropped), psis[k - 1 - j],
                          D, dropped))
        rhs = _dict_scale_z(conv, D, dropped)
        for j in range(1, k):
            rhs = _dict_add(rhs, _dict_mul(psis[j], psis[k - j], D, dropped),
                            sign=-1)
        pk = _dict_T(rhs, D)
        for p in pk:
            if popcount(p) > k:
                raise ArithmeticError(
                    f"binary lacunarity violated: power {p} in psi_{k}")
        psis.append(pk)
    return BotcherSeries(
        lambda_order=K,
        degree_cap=D,
        psi=tuple(SparsePolynomial.from_terms(d, D) for d in psis),
        dropped_terms=dropped[0],
    )


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PsiValue:
    """psi(lam, z) from the truncated series, with the geometric tail bound

    |lam|^(K+2) * A / (1 - |lam|),   A = |lam| / (1 - |lam|),

    on the dropped lambda-orders.
    """

    value: complex
    tail_bound: float


def _check_domain(lam: complex, z: complex | None = None) -> float:
    al = abs(lam)
    if al >= 1.0:
        raise ValueError(f"|lambda| must be < 1 (got {al:.6g})")
    if z is not None and abs(z) > 1.0 + 1e-12:
        raise ValueError(f"|z| must be <= 1 (got {abs(z):.6g})")
    return al


def _tail_bound(lam: complex, K: int) -> float:
    al = abs(lam)
    if al == 0.0:
        return 0.0
    A = al / (1.0 - al)
    return al ** (K + 2) * A / (1.0 - al)


def psi_eval(series: BotcherSeries, lam: complex, z: complex) -> PsiValue:
    """Evaluate psi(lam, z) = sum_{k=0}^K lam^(k+1) z psi_k(z).

    Requires |lam| < 1 and |z| <= 1; the reported tail bound covers the
    lambda-orders beyond K (not the silent degree-cap truncation, which
    is far smaller for |z| bounded away from 1 and zero at z = 0).
    """
    _check_domain(lam, z)
    acc = complex(0.0)
    lam_pow = complex(1.0)
    for pk in series.psi:
        lam_pow *= lam
        acc += lam_pow * z * pk.evaluate(z)
    return PsiValue(value=acc, tail_bound=_tail_bound(lam, series.lambda_order))


def _psi_eval_array(series: BotcherSeries, lam: complex,
                    zs: np.ndarray) -> np.ndarray:
    """Vectorised psi over an array of points (|lam| < 1 assumed checked)."""
    zs = np.asarray(zs, dtype=complex)
    out = np.zeros_like(zs)
    arrays = [
        (np.asarray(pk.powers, dtype=np.int64),
         np.asarray([float(c) for c in pk.coeffs]))
        for pk in series.psi
    ]
    block = 1024
    for lo in range(0, zs.size, block):
        zb = zs[lo:lo + block]
        tot = np.zeros_like(zb)
        lam_pow = complex(1.0)
        for q, c in arrays:
            lam_pow *= lam
            tot += lam_pow * zb * ((zb[:, None] ** q[None, :]) @ c)
        out[lo:lo + block] = tot
    return out


def functional_residual(series: BotcherSeries, lam: complex, z: complex) -> float:
    """|psi(z)^2 - lam psi(z^2) (1 + psi(z))| at the given point.

    Zero for the exact conjugacy; for the truncated series it is
    dominated by the lambda tail, so it scales like |lam|^(K+2).
    """
    pz = psi_eval(series, lam, z).value
    pz2 = psi_eval(series, lam, z * z).value
    return abs(pz * pz - lam * pz2 * (1.0 + pz))


# ----------------------------------------------------------------------
# the Julia curve and the escape-time oracle
# ----------------------------------------------------------------------

def julia_curve(series: BotcherSeries, lam: complex,
                samples: int) -> np.ndarray:
    """Sample the boundary curve t |-> -1/psi(lam, e^{it}).

    Returns an (samples, 2) array of (x, y) points at t = 2*pi*j/samples.
    If psi nearly vanishes on the circle (truncation too short for this
    |lambda|), raises ArithmeticError naming the offending t.
    """
    if samples < 0:
        raise ValueError("samples must be >= 0")
    if samples == 0:
        return np.zeros((0, 2))
    _check_domain(lam)
    t = 2.0 * math.pi * np.arange(samples) / samples
    zs = np.exp(1j * t)
    psi = _psi_eval_array(series, lam, zs)
    floor = max(10.0 * _tail_bound(lam, series.lambda_order), 1e-12)
    amin = float(np.abs(psi).min())
    if amin < floor:
        i = int(np.abs(psi).argmin())
        raise ArithmeticError(
            f"psi nearly vanishes on the circle: |psi| = {amin:.3e} at "
            f"t = {t[i]:.6f}; increase the series order or reduce |lambda|")
    H = 1.0 / psi
    return np.column_stack((-H.real, -H.imag))


@dataclass(frozen=True)
class EscapeCloud:
    """Boundary cells of the escape-time classification.

    ``points`` holds the centers of grid cells adjacent to a cell of the
    opposite escape status; ``cell_size`` is the grid pitch and
    ``half_width`` the half-extent of the (square, origin-centered) box.
    """

    points: np.ndarray
    cell_size: float
    half_width: float
    grid_resolution: int


def escape_time_oracle(lam: complex, grid_resolution: int = 512,
                       max_iter: int = 200, escape_radius: float = 100.0,
                       *, series: BotcherSeries | None = None,
                       box_half_width: float | None = None,
                       curve_samples: int = 1024) -> EscapeCloud:
    """Escape-time boundary cloud for x_{n+1} = lam x_n (1 - x_n).

    Classifies a square grid of points by whether the orbit exceeds
    ``escape_radius`` within ``max_iter`` steps, and returns the centers
    of cells on the escaping/bounded interface.  The box is auto-sized to
    1.5x the extent of the series curve unless ``box_half_width`` is
    given; ``series`` (default: psi_series(8)) is only used for sizing.
    """
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be >= 2")
    if max_iter < 1 or escape_radius <= 0.0:
        raise ValueError("max_iter must be >= 1 and escape_radius > 0")
    if box_half_width is None:
        if series is None:
            series = psi_series(8)
        curve = julia_curve(series, lam, curve_samples)
        box_half_width = 1.5 * float(np.abs(curve).max())
    if box_half_width <= 0.0:
        raise ValueError("box_half_width must be positive")
    res = grid_resolution
    cell = 2.0 * box_half_width / res
    centers = -box_half_width + (np.arange(res) + 0.5) * cell
    x = (centers[None, :] + 1j * centers[:, None]).astype(complex)
    escaped = np.zeros(x.shape, dtype=bool)
    for _ in range(max_iter):
        x = lam * x * (1.0 - x)
        escaped |= np.abs(x) > escape_radius
        x[escaped] = 0.0
    boundary = np.zeros_like(escaped)
    boundary[:-1, :] |= escaped[:-1, :] ^ escaped[1:, :]
    boundary[1:, :] |= escaped[1:, :] ^ escaped[:-1, :]
    boundary[:, :-1] |= escaped[:, :-1] ^ escaped[:, 1:]
    boundary[:, 1:] |= escaped[:, 1:] ^ escaped[:, :-1]
    rows, cols = np.nonzero(boundary)
    points = np.column_stack((centers[cols], centers[rows]))
    return EscapeCloud(points=points, cell_size=cell,
                       half_width=box_half_width, grid_resolution=res)


def curve_to_cloud_distance(curve_points: np.ndarray,
                            cloud_points: np.ndarray) -> float:
    """Largest distance from a curve point to its nearest cloud point.

    One-sided by design: the cloud may contain components the curve does
    not visit.  Raises ValueError on an empty cloud.
    """
    curve = np.asarray(curve_points, dtype=float).reshape(-1, 2)
    cloud = np.asarray(cloud_points, dtype=float).reshape(-1, 2)
    if cloud.shape[0] == 0:
        raise ValueError("escape cloud is empty")
    if curve.shape[0] == 0:
        return 0.0
    worst = 0.0
    block = 2048
    for lo in range(0, curve.shape[0], block):
        cb = curve[lo:lo + block]
        d2 = ((cb[:, None, 0] - cloud[None, :, 0]) ** 2
              + (cb[:, None, 1] - cloud[None, :, 1]) ** 2)
        worst = max(worst, float(np.sqrt(d2.min(axis=1)).max()))
    return worst


# ----------------------------------------------------------------------
# self-similarity of psi_1 at dyadic angles
# ----------------------------------------------------------------------

def _psi1_exact(z: complex) -> complex:
    """psi_1(z) = sum_{k>=0} 2^{-k-1} z^{2^k}, summed to machine tail (|z| < 1)."""
    if abs(z) >= 1.0:
        raise ValueError("psi_1 evaluation requires |z| < 1")
    total = complex(0.0)
    w = complex(z)
    coeff = 0.5
    for _ in range(500):
        total += coeff * w
        if coeff * abs(w) < 1e-40:
            break
        w *= w
        coeff *= 0.5
    return total


def self_similarity_check(rho: float, m: int, n: int,
                          printed_form: bool = False) -> float:
    """Residual of the dyadic-angle self-similarity identity of psi_1.

    The implemented identity follows from iterating
    psi_1(z) = z/2 + psi_1(z^2)/2 exactly n times at z = rho e^{2 pi i m/2^n}:

        psi_1(rho e^{2 pi i m/2^n})
          = sum_{k=1}^{n} 2^{-k} rho^{2^{k-1}} e^{2 pi i m 2^{k-1-n}}
            + 2^{-n} psi_1(rho^{2^n}),

    and the returned value is |LHS - RHS| (< 1e-12 up to rounding).  With
    ``printed_form=True`` the right side is replaced by the variant

        sum_{k=1}^{n-1} 2^{-k} rho^{2^k} e^{2 pi i m 2^{k-n}}
          + rho^{2^n - 2} 2^{-(n-1)} psi_1(rho),

    whose residual is generally not small; both are reported so the two
    displays can be compared rather than silently merged.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = _psi1_exact(rho * cmath.exp(2j * math.pi * m / 2 ** n))
    if printed_form:
        rhs = complex(0.0)
        for k in range(1, n):
            rhs += (2.0 ** -k) * rho ** (2 ** k) \
                * cmath.exp(2j * math.pi * m * 2.0 ** (k - n))
        rhs += rho ** (2 ** n - 2) * 2.0 ** (-(n - 1)) * _psi1_exact(rho)
    else:
        rhs = complex(0.0)
        for k in range(1, n + 1):
            rhs += (2.0 ** -k) * rho ** (2 ** (k - 1)) \
                * cmath.exp(2j * math.pi * m * 2.0 ** (k - 1 - n))
        rhs += (2.0 ** -n) * _psi1_exact(rho ** (2 ** n))
    return abs(lhs - rhs)


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

def series_to_json(series: BotcherSeries) -> str:
    """Serialize as {K, D, psi: [{powers, coeffs_num, coeffs_log2_den}]}.

    Every coefficient denominator is a power of two, stored as its log2.
    """
    psi_obj = []
    for pk in series.psi:
        nums: List[int] = []
        log2_dens: List[int] = []
        for c in pk.coeffs:
            den = c.denominator
            if den & (den - 1):
                raise ValueError(f"denominator {den} is not a power of two")
            nums.append(c.numerator)
            log2_dens.append(den.bit_length() - 1)
        psi_obj.append({
            "powers": list(pk.powers),
            "coeffs_num": nums,
            "coeffs_log2_den": log2_dens,
        })
    return json.dumps({
        "K": series.lambda_order,
        "D": series.degree_cap,
        "psi": psi_obj,
    })


def series_from_json(text: str) -> BotcherSeries:
    """Inverse of series_to_json (the dropped-term count is not stored)."""
    obj = json.loads(text)
    cap = int(obj["D"])
    psis = []
    for entry in obj["psi"]:
        terms = {
            int(p): Fraction(int(num), 2 ** int(ld))
            for p, num, ld in zip(entry["powers"], entry["coeffs_num"],
                                  entry["coeffs_log2_den"])
        }
        psis.append(SparsePolynomial.from_terms(terms, cap))
    return BotcherSeries(lambda_order=int(obj["K"]), degree_cap=cap,
                         psi=tuple(psis))


def write_points_csv(path: str, points: Iterable[Sequence[float]]) -> None:
    """Write planar points as CSV with header ``x,y`` (15 significant digits)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("x,y\n")
        for pt in points:
            fh.write(f"{pt[0]:.15g},{pt[1]:.15g}\n")
