#!/usr/bin/env python3
"""Emit the desk-scale CSV datasets behind the standard plots.

Writes into --outdir (default ./figure_data):

  profile_b3_1_9.csv     x, re, im, abs, scaled_abs  - boundary approach at
                         y = 2 pi/9 for g(k) = k^3, with x^{1/3}-scaled modulus
  julia_curve_0p3.csv    x, y                        - conjugacy-series boundary
                         curve for lambda = 0.3
  julia_cloud_0p3.csv    x, y                        - escape-time boundary
                         cells on the 512^2 grid
  measure_scan.csv       x, ratio, offdiag_ratio     - quarter-window L2 ratio
                         and first off-diagonal bound for g(k) = k^2
  qplot.csv              x, Q                        - 1/q at reduced p/q

Usage:  python3 scripts/make_figure_data.py [--outdir DIR] [--resolution N]
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

sys.path.insert(0, "src")

from lacunary import (GrowthFunction, WindowSpec, diagonal_term,  # noqa: E402
                      direct_sum, escape_time_oracle, julia_curve,
                      offdiagonal_bound, psi_series, standard_Q, window_l2,
                      write_points_csv)


def write_rows(path: str, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.15g}" for v in row) + "\n")
    print(f"wrote {path}")


def profile_scan(outdir: str) -> None:
    g = GrowthFunction.power(3)
    y = 2 * math.pi / 9
    rows = []
    for x in np.geomspace(1e-1, 1e-4, 25):
        v = direct_sum(g, complex(x, y)).value
        rows.append((x, v.real, v.imag, abs(v), x ** (1 / 3) * abs(v)))
    write_rows(os.path.join(outdir, "profile_b3_1_9.csv"),
               "x,re,im,abs,scaled_abs", rows)


def julia_data(outdir: str, resolution: int) -> None:
    series = psi_series(8)
    lam = 0.3
    curve = julia_curve(series, lam, 4096)
    path = os.path.join(outdir, "julia_curve_0p3.csv")
    write_points_csv(path, curve)
    print(f"wrote {path}")
    cloud = escape_time_oracle(lam, grid_resolution=resolution, series=series)
    path = os.path.join(outdir, "julia_cloud_0p3.csv")
    write_points_csv(path, cloud.points)
    print(f"wrote {path}")


def measure_scan(outdir: str) -> None:
    g = GrowthFunction.power(2)
    w = WindowSpec(0.0, 0.25)
    rows = []
    for x in np.geomspace(0.5, 0.02, 15):
        ratio = window_l2(g, float(x), w) / (w.length * diagonal_term(g, float(x)))
        rows.append((float(x), ratio, offdiagonal_bound(g, float(x), 1)))
    write_rows(os.path.join(outdir, "measure_scan.csv"),
               "x,ratio,offdiag_ratio", rows)


def qplot(outdir: str, qmax: int = 100) -> None:
    points = sorted({Fraction(p, q) for q in range(1, qmax + 1)
                     for p in range(0, q + 1)})
    rows = [(float(f), standard_Q(float(f), qmax)) for f in points]
    write_rows(os.path.join(outdir, "qplot.csv"), "x,Q", rows)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="figure_data")
    ap.add_argument("--resolution", type=int, default=512,
                    help="escape-time grid resolution")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    profile_scan(args.outdir)
    julia_data(args.outdir, args.resolution)
    measure_scan(args.outdir)
    qplot(args.outdir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
