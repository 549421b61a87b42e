"""Growth functions g(k) defining the exponents of a lacunary series.

Purpose
-------
A lacunary Dirichlet series is f(z) = sum_k c_k exp(-z g(k)).  Everything in
this library is parametrized by the growth function g, which must increase
strictly and super-linearly (its derivative tends to infinity).  Three kinds
are supported:

* ``Power(b)``     — g(k) = k^b, b > 1 (the k^2, k^3, k^{3/2} family);
* ``Geometric(a)`` — g(k) = a^k, a > 1 (un-normalized by default so that the
  functional equation f(z) - f(az) = e^{-z} holds exactly);
* ``Custom``       — user-supplied callables for g, g', g^{-1}.

Conventions
-----------
``offset`` is subtracted from the raw kind value, so a normalized geometric
growth (g(0) = 0) is obtained with offset = 1.  ``start_index`` records the
first summation index; closed forms for power growth carry the "-1/2" of a
k >= 1 sum, while the geometric functional equation needs k >= 0, so the
defaults differ by kind (Power -> 1, Geometric -> 0).  Callers that need the
other convention add or remove the k = 0 term explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

__all__ = ["GrowthFunction", "g_eval", "g_derivative", "g_inverse"]

_KINDS = ("power", "geometric", "custom")


@dataclass(frozen=True)
class GrowthFunction:
    """A strictly increasing exponent function g with derivative and inverse.

    Construct through the factories :meth:`power`, :meth:`geometric`, or
    :meth:`custom`; the raw constructor is considered internal.
    """

    kind: str
    b: float = 0.0
    a: float = 0.0
    offset: float = 0.0
    start_index: int = 0
    eval_fn: Optional[Callable[[float], float]] = field(default=None, repr=False)
    derivative_fn: Optional[Callable[[float], float]] = field(default=None, repr=False)
    inverse_fn: Optional[Callable[[float], float]] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown growth kind {self.kind!r}")
        if self.kind == "power" and not self.b > 1:
            raise ValueError(f"power growth requires b > 1, got b={self.b}")
        if self.kind == "geometric" and not self.a > 1:
            raise ValueError(f"geometric growth requires a > 1, got a={self.a}")
        if self.kind == "custom":
            if self.eval_fn is None or self.derivative_fn is None:
                raise ValueError("custom growth requires eval and derivative callables")
            self._sample_monotonicity_check()

    # -- factories ---------------------------------------------------------

    @staticmethod
    def power(b: float, start_index: int = 1, offset: float = 0.0) -> "GrowthFunction":
        """g(k) = k^b - offset, defaulting to the k >= 1 summation convention."""
        return GrowthFunction(kind="power", b=float(b), offset=offset, start_index=start_index)

    @staticmethod
    def geometric(a: float, start_index: int = 0, normalized: bool = False) -> "GrowthFunction":
        """g(k) = a^k (minus 1 when ``normalized``), k >= 0 convention.

        The un-normalized default satisfies f(z) - f(az) = e^{-z} exactly.
        """
        return GrowthFunction(
            kind="geometric", a=float(a), offset=1.0 if normalized else 0.0, start_index=start_index
        )

    @staticmethod
    def custom(
        eval_fn: Callable[[float], float],
        derivative_fn: Callable[[float], float],
        inverse_fn: Optional[Callable[[float], float]] = None,
        start_index: int = 0,
        offset: float = 0.0,
    ) -> "GrowthFunction":
        return GrowthFunction(
            kind="custom",
            offset=offset,
            start_index=start_index,
            eval_fn=eval_fn,
            derivative_fn=derivative_fn,
            inverse_fn=inverse_fn,
        )

    # -- checks ------------------------------------------------------------

    def _sample_monotonicity_check(self) -> None:
        """Sampled strict-increase check for custom growth (cheap smoke test)."""
        lo = float(self.start_index)
        prev = self.eval_fn(lo)
        for k in range(1, 12):
            cur = self.eval_fn(lo + k)
            if not cur > prev:
                raise ValueError("custom growth is not strictly increasing on sampled points")
            prev = cur


def g_eval(g: GrowthFunction, k: float) -> float:
    """g(k) minus the normalization offset.  Strictly increasing in k >= 0."""
    if k < 0:
        raise ValueError(f"g_eval requires k >= 0, got {k}")
    if g.kind == "power":
        return k ** g.b - g.offset
    if g.kind == "geometric":
        return g.a ** k - g.offset
    return g.eval_fn(k) - g.offset


def g_derivative(g: GrowthFunction, k: float) -> float:
    """dg/dk at k (offset-independent)."""
    if k < 0:
        raise ValueError(f"g_derivative requires k >= 0, got {k}")
    if g.kind == "power":
        return g.b * k ** (g.b - 1.0)
    if g.kind == "geometric":
        return math.log(g.a) * g.a ** k
    return g.derivative_fn(k)


def g_inverse(g: GrowthFunction, u: float) -> float:
    """The k with g_eval(g, k) = u, to 1e-12 relative.

    Closed forms for the power/geometric kinds; bracketing bisection with a
    Newton polish for custom growth (monotonicity makes this reliable).
    """
    if u < 0:
        raise ValueError(f"g_inverse requires u >= 0, got {u}")
    raw = u + g.offset
    if g.kind == "power":
        return raw ** (1.0 / g.b)
    if g.kind == "geometric":
        if raw <= 0:
            raise ValueError(f"geometric inverse needs u + offset > 0, got {raw}")
        return math.log(raw) / math.log(g.a)
    if g.inverse_fn is not None:
        return g.inverse_fn(u)
    return _bisect_inverse(g, u)


def _bisect_inverse(g: GrowthFunction, u: float) -> float:
    lo = 0.0
    hi = 1.0
    doublings = 0
    while g_eval(g, hi) < u:
        hi *= 2.0
        doublings += 1
        if doublings > 200:
            raise RuntimeError("g_inverse bracket expansion failed; growth not increasing?")
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        if g_eval(g, mid) < u:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    # Newton polish (5 steps); monotone + smooth between brackets.
    for _ in range(5):
        d = g_derivative(g, x)
        if d <= 0:
            break
        step = (g_eval(g, x) - u) / d
        x -= step
        if x < 0:
            x = 0.0
    return x
