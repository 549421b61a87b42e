"""Direct summation of f(z) = sum_k c_k exp(-z g(k)) for Re z > 0.

Purpose
-------
The universal oracle.  Every closed form, asymptotic representation, Borel
resummation, and boundary profile in this library is ultimately tested
against the value produced here, so this module favors rigor over speed:

* terms are accumulated blockwise with numpy's pairwise summation inside a
  block and Neumaier-compensated addition across blocks, keeping round-off
  far below the requested tolerance even for ~10^7-term sums;
* truncation stops only when BOTH the last term modulus and a rigorous
  integral tail bound fall below tol/2.  For strictly increasing g with
  nondecreasing derivative,

      sum_{k>N} e^{-x g(k)} <= int_N^inf e^{-x g(s)} ds
                            <= e^{-x g(N)} / (x g'(N)),

  which is the bound reported in ``EvalResult.tail_bound``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .growth import GrowthFunction, g_derivative, g_eval

__all__ = ["EvalResult", "direct_sum", "grid_eval", "TERM_CAP"]

TERM_CAP = 10 ** 8


@dataclass(frozen=True)
class EvalResult:
    """A complex series value with truncation metadata.

    ``tail_bound`` is a rigorous bound on the modulus of the discarded tail;
    on success it is below the tolerance that was requested.
    """

    value: complex
    terms_used: int
    tail_bound: float


def _g_block(g: GrowthFunction, ks: np.ndarray) -> np.ndarray:
    if g.kind == "power":
        return ks ** g.b - g.offset
    if g.kind == "geometric":
        return g.a ** ks - g.offset
    return np.array([g_eval(g, float(k)) for k in ks])


class _Neumaier:
    """Compensated scalar accumulator (Neumaier variant of Kahan summation)."""

    __slots__ = ("s", "c")

    def __init__(self) -> None:
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    def total(self) -> float:
        return self.s + self.c


def direct_sum(
    g: GrowthFunction,
    z: complex,
    tol: float = 1e-12,
    coeff: Optional[Callable[[int], complex]] = None,
    term_cap: int = TERM_CAP,
) -> EvalResult:
    """Evaluate sum_{k >= start_index} c(k) exp(-z g(k)) to within ``tol``.

    ``coeff`` defaults to c(k) = 1.  If supplied, |c(k)| must be polynomially
    bounded (caller-asserted); the tail bound is then scaled by twice the
    largest |c| seen in the final block, which is rigorous for nonincreasing
    |c| and a documented heuristic otherwise.
    """
    z = complex(z)
    x = z.real
    if not x > 0:
        raise ValueError(f"direct_sum requires Re z > 0, got z={z}")
    if not tol > 0:
        raise ValueError(f"direct_sum requires tol > 0, got {tol}")

    acc_re = _Neumaier()
    acc_im = _Neumaier()
    k = g.start_index
    terms_used = 0
    block = 64
    tail_bound = math.inf

    while True:
        ks = np.arange(k, k + block, dtype=float)
        gk = _g_block(g, ks)
        terms = np.exp(-z * gk)
        if coeff is not None:
            cvals = np.array([complex(coeff(int(kk))) for kk in ks])
            terms = terms * cvals
            max_c_block = float(np.max(np.abs(cvals))) if len(cvals) else 1.0
        else:
            max_c_block = 1.0
        acc_re.add(float(np.sum(terms.real)))
        acc_im.add(float(np.sum(terms.imag)))
        terms_used += block
        k += block

        last_k = float(ks[-1])
        last_term = abs(terms[-1])
        deriv = g_derivative(g, last_k)
        if deriv > 0:
            unit_tail = math.exp(-x * float(gk[-1])) / (x * deriv) if x * float(gk[-1]) < 700 else 0.0
        else:
            unit_tail = math.inf
        tail_bound = unit_tail if coeff is None else 2.0 * max_c_block * unit_tail

        if tail_bound < tol / 2 and last_term < tol / 2:
            break
        if terms_used >= min(term_cap, TERM_CAP):
            raise RuntimeError(
                f"direct_sum exceeded the term cap ({terms_used} terms): "
                f"Re z = {x} is too small for tol = {tol}"
            )
        if block < 65536:
            block *= 2

    return EvalResult(
        value=complex(acc_re.total(), acc_im.total()),
        terms_used=terms_used,
        tail_bound=tail_bound,
    )


def _thread_cap() -> int:
    env = os.environ.get("LACUNARY_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return os.cpu_count() or 1


def grid_eval(
    g: GrowthFunction,
    points: Sequence[complex],
    tol: float = 1e-12,
) -> list[EvalResult]:
    """Elementwise ``direct_sum`` over a list of points (order preserved).

    Points are validated up front so a bad entry is reported by index before
    any work happens; evaluation may use a thread pool (capped by the
    LACUNARY_THREADS environment variable) but results are deterministic.
    """
    pts = [complex(p) for p in points]
    for i, p in enumerate(pts):
        if not p.real > 0:
            raise ValueError(f"grid_eval point {i} has Re z <= 0: {p}")
    if not pts:
        return []
    workers = min(len(pts), _thread_cap())
    if workers > 1 and len(pts) >= 16:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(lambda p: direct_sum(g, p, tol), pts))
    return [direct_sum(g, p, tol) for p in pts]
