"""Command-line front end: every module as a subcommand emitting JSON/CSV.

One binary, subcommand dispatch, flags only:

    eval         direct summation of f(z) = sum e^{-z g(k)}
    asympt       Laplace-integral + fractional-part decomposition
    theta        b = 2 modular identity vs direct summation
    geometric    geometric-base closed form vs direct summation
    transseries  formal transseries data as JSON
    borel        Borel/Laplace resummation of the transseries
    profile      scaled boundary profiles x^(1/d) f(x + iy)
    duality      three-halves/cubic duality residual at a rational point
    measure      windowed L^2 mass ratio scan
    julia        conjugacy series, Julia curve, escape-time cloud
    qplot        the standard rational-indicator function as point data

Conventions: complex numbers are written ``a+bi`` / ``a-bi``; all numeric
output carries 15 significant digits; identical argv produce byte-identical
output files.  Exit status: 0 on success, 2 on argument/validation errors,
1 on numeric/computation failure.  Every subcommand accepts ``--selftest``
to run that module's example values instead of a computation.  The env var
LACUNARY_THREADS caps worker threads (default: hardware count).
"""

from __future__ import annotations

import cmath
import functools
import json
import math
import sys
from fractions import Fraction

import click
import numpy as np

from ._special import complex_gamma
from .asymptotics import decompose, laplace_integral
from .boundary_profile import (RationalPoint, duality_residual, gauss_profile,
                               profile_limit, standard_Q, three_halves_profile,
                               three_halves_target)
from .botcher_julia import (escape_time_oracle, functional_residual,
                            julia_curve, operator_T, psi_series,
                            self_similarity_check, series_to_json,
                            write_points_csv)
from .closed_forms import (geometric_rep_eval, make_geometric_rep,
                           theta_identity_eval)
from .formal_series import assemble_transseries, borel_eval, transseries_to_json
from .growth import GrowthFunction
from .measure_blowup import (WindowSpec, offdiagonal_bound, measure_ratio_scan,
                             window_l2, window_l2_exact)
from .series_eval import direct_sum

__all__ = ["run", "main", "cli"]


# ----------------------------------------------------------------------
# argument parsing helpers
# ----------------------------------------------------------------------

class ComplexParam(click.ParamType):
    """Complex numbers written as a+bi / a-bi (also plain reals)."""

    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        text = str(value).strip().replace(" ", "")
        try:
            return complex(text.replace("i", "j"))
        except ValueError:
            self.fail(f"{value!r} is not a complex number (write a+bi)",
                      param, ctx)


COMPLEX = ComplexParam()


class FractionParam(click.ParamType):
    """Exponents written as 3, 3/2, or 1.5."""

    name = "fraction"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)


FRACTION = FractionParam()


def _parse_growth(text: str, start: int | None) -> GrowthFunction:
    parts = text.split(":")
    if len(parts) != 2:
        raise click.UsageError(
            f"growth spec {text!r} must look like power:3 or geometric:2")
    kind, value = parts[0].strip().lower(), parts[1].strip()
    try:
        num = float(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"growth parameter {value!r} is not a number")
    try:
        if kind == "power":
            return (GrowthFunction.power(num) if start is None
                    else GrowthFunction.power(num, start_index=start))
        if kind == "geometric":
            return (GrowthFunction.geometric(num) if start is None
                    else GrowthFunction.geometric(num, start_index=start))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    raise click.UsageError(f"unknown growth kind {kind!r} (power|geometric)")


def _r(x: float) -> float:
    """Round to 15 significant digits for deterministic output."""
    return float(f"{x:.15g}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _emit_json(obj: dict, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", out)


def _emit_csv(header: str, rows, out: str | None) -> None:
    lines = [header] + [",".join(f"{v:.15g}" for v in row) for row in rows]
    _emit("\n".join(lines) + "\n", out)


def _guarded(func):
    """Map computation failures to exit 1, domain errors to exit 2."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except ValueError as exc:
            raise click.UsageError(str(exc))
        except (ArithmeticError, RuntimeError, OverflowError) as exc:
            raise click.ClickException(f"computation failed: {exc}")

    return wrapper


def _check(ok: bool, label: str) -> None:
    status = "PASS" if ok else "FAIL"
    click.echo(f"selftest {status}: {label}")
    if not ok:
        raise click.ClickException(f"selftest failed: {label}")


# ----------------------------------------------------------------------
# the command group
# ----------------------------------------------------------------------

@click.group()
def cli() -> None:
    """Lacunary Dirichlet series toolkit."""


@cli.command("eval")
@click.option("--growth", "growth_spec", default=None,
              help="Growth family, e.g. power:3 or geometric:2.")
@click.option("--z", "z", type=COMPLEX, default=None, help="Evaluation point.")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--start", type=int, default=None,
              help="Override the family's default start index.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_eval(growth_spec, z, tol, start, out, selftest) -> None:
    """Direct summation of f(z) = sum_k e^{-z g(k)}."""
    if selftest:
        g = GrowthFunction.power(2)
        v = direct_sum(g, 1.0).value
        _check(abs(v - 0.386318602413326) < 1e-12,
               f"power:2 at z=1 -> {v.real:.15g}")
        gg = GrowthFunction.geometric(2)
        z0 = 0.3 + 0.2j
        res = abs(direct_sum(gg, z0).value - direct_sum(gg, 2 * z0).value
                  - cmath.exp(-z0))
        _check(res < 1e-10, f"geometric:2 functional equation residual {res:.3g}")
        return
    if growth_spec is None or z is None:
        raise click.UsageError("--growth and --z are required")
    g = _parse_growth(growth_spec, start)
    r = direct_sum(g, z, tol=tol)
    _emit_json({"value_re": _r(r.value.real), "value_im": _r(r.value.imag),
                "terms": r.terms_used, "tail_bound": _r(r.tail_bound)}, out)


@cli.command("asympt")
@click.option("--growth", "growth_spec", default=None)
@click.option("--z", type=COMPLEX, default=None)
@click.option("--start", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_asympt(growth_spec, z, start, out, selftest) -> None:
    """Laplace-integral + fractional-part decomposition of f."""
    if selftest:
        g = GrowthFunction.power(2)
        z0 = 0.2 + 0.1j
        d = decompose(g, z0)
        f = direct_sum(g, z0).value
        res = abs(d.integral_term + d.remainder - f)
        _check(res < 1e-9, f"power:2 decomposition residual {res:.3g} at z={z0}")
        lead = laplace_integral(g, 1e-4)
        target = complex_gamma(1.5) * 1e-4 ** -0.5
        _check(abs(lead - target) / abs(target) < 1e-10,
               "leading term Gamma(1+1/2) z^(-1/2)")
        return
    if growth_spec is None or z is None:
        raise click.UsageError("--growth and --z are required")
    g = _parse_growth(growth_spec, start)
    d = decompose(g, z)
    f = direct_sum(g, z).value
    _emit_json({
        "integral_re": _r(d.integral_term.real),
        "integral_im": _r(d.integral_term.imag),
        "half_term": _r(d.half_term),
        "remainder_re": _r(d.remainder.real),
        "remainder_im": _r(d.remainder.imag),
        "direct_re": _r(f.real), "direct_im": _r(f.imag),
        "residual": _r(abs(d.integral_term + d.remainder - f)),
    }, out)


@cli.command("theta")
@click.option("--z", type=COMPLEX, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_theta(z, out, selftest) -> None:
    """Square-growth modular identity vs direct summation."""
    g = GrowthFunction.power(2)
    if selftest:
        for z0 in (0.3 + 0j, 0.05 + 0.4j):
            res = abs(theta_identity_eval(z0) - direct_sum(g, z0).value)
            _check(res < 1e-12, f"identity residual {res:.3g} at z={z0}")
        return
    if z is None:
        raise click.UsageError("--z is required")
    ident = theta_identity_eval(z)
    direct = direct_sum(g, z).value
    _emit_json({
        "identity_re": _r(ident.real), "identity_im": _r(ident.imag),
        "direct_re": _r(direct.real), "direct_im": _r(direct.imag),
        "residual": _r(abs(ident - direct)),
    }, out)


@cli.command("geometric")
@click.option("--a", type=float, default=2.0, show_default=True)
@click.option("--z", type=COMPLEX, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_geometric(a, z, out, selftest) -> None:
    """Geometric-base closed form (log + entire + Fourier) vs direct sum."""
    if selftest:
        rep = make_geometric_rep(2.0)
        g = GrowthFunction.geometric(2.0)
        for z0 in (0.7 + 0j, 0.2 + 0.1j):
            res = abs(geometric_rep_eval(rep, z0) - direct_sum(g, z0).value)
            _check(res < 1e-8, f"a=2 closed form residual {res:.3g} at z={z0}")
        return
    if z is None:
        raise click.UsageError("--z is required")
    if a <= 1.0:
        raise click.UsageError("--a must be > 1")
    rep = make_geometric_rep(a)
    g = GrowthFunction.geometric(a)
    v = geometric_rep_eval(rep, z)
    direct = direct_sum(g, z).value
    _emit_json({
        "rep_re": _r(v.real), "rep_im": _r(v.imag),
        "direct_re": _r(direct.real), "direct_im": _r(direct.imag),
        "residual": _r(abs(v - direct)),
    }, out)


@cli.command("transseries")
@click.option("--b", type=FRACTION, default=Fraction(3), show_default=True,
              help="Growth exponent (3 or 3/2).")
@click.option("--sector", type=click.Choice(["-1", "1"]), default="-1",
              show_default=True, help="Sign of arg z labeling the sector.")
@click.option("--blocks", "K", type=int, default=6, show_default=True)
@click.option("--powers", "J", type=int, default=6, show_default=True)
@click.option("--block-terms", type=int, default=4, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_transseries(b, K, J, sector, block_terms, out, selftest) -> None:
    """Exponential-block transseries data as JSON."""
    if selftest:
        rep = assemble_transseries(3, -1, 2, 2)
        lead = rep.blocks[0].block_series.coefficients[0]
        target = (1j * math.pi / 6) ** 0.25
        _check(abs(lead - target) < 1e-12,
               f"b=3 leading block coefficient (pi i/6)^(1/4), err "
               f"{abs(lead - target):.3g}")
        rep2 = assemble_transseries(Fraction(3, 2), -1, 2, 2)
        lead2 = rep2.blocks[0].block_series.coefficients[0]
        target2 = 4 * math.sqrt(2) * 1j ** -0.5 * math.pi / 3
        _check(abs(lead2 - target2) < 1e-12,
               f"b=3/2 leading block coefficient, err {abs(lead2 - target2):.3g}")
        return
    rep = assemble_transseries(b, int(sector), K, J, block_terms=block_terms)
    _emit(transseries_to_json(rep) + "\n", out)


@cli.command("borel")
@click.option("--b", type=FRACTION, default=Fraction(3), show_default=True)
@click.option("--z", type=COMPLEX, default=None)
@click.option("--blocks", "K", type=int, default=12, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--theta", type=float, default=None,
              help="Laplace ray angle (default: per-exponent choice).")
@click.option("--check/--no-check", default=True, show_default=True,
              help="Also evaluate the direct sum and report the gap.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_borel(b, z, K, tol, theta, check, out, selftest) -> None:
    """Borel/Laplace resummation of the transseries vs direct summation."""
    if selftest:
        for bb, ztest, bound in ((Fraction(3), 0.5, 1e-8),
                                 (Fraction(3, 2), 0.5, 1e-6)):
            bf = float(bb)
            full = (complex_gamma(1 + 1 / bf) * ztest ** (-1 / bf) - 0.5
                    + borel_eval(bb, ztest, K=10))
            direct = direct_sum(GrowthFunction.power(bf), ztest).value
            rel = abs(full - direct) / abs(direct)
            _check(rel < bound, f"b={bb} resummation vs direct, rel {rel:.3g}")
        return
    if z is None:
        raise click.UsageError("--z is required")
    bf = float(b)
    corr = borel_eval(b, z, K=K, tol=tol, theta=theta)
    full = complex_gamma(1 + 1 / bf) * z ** (-1 / bf) - 0.5 + corr
    result = {
        "value_re": _r(full.real), "value_im": _r(full.imag),
        "correction_re": _r(corr.real), "correction_im": _r(corr.imag),
    }
    if check:
        direct = direct_sum(GrowthFunction.power(bf), z).value
        result["direct_re"] = _r(direct.real)
        result["direct_im"] = _r(direct.imag)
        result["rel_err"] = _r(abs(full - direct) / abs(direct))
    _emit_json(result, out)


@cli.command("profile")
@click.option("--b", type=FRACTION, default=Fraction(3), show_default=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--n", type=int, default=9, show_default=True)
@click.option("--x-hi", type=float, default=1e-2, show_default=True)
@click.option("--x-lo", type=float, default=1e-4, show_default=True)
@click.option("--points", type=int, default=5, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="CSV path for the scan (x, re, im, abs, scaled_abs).")
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_profile(b, m, n, x_hi, x_lo, points, out, selftest) -> None:
    """Scaled boundary profile x^(1/d) f(x + iy) at the rational point m/n."""
    if selftest:
        v = gauss_profile(3, RationalPoint(1, 9))
        _check(abs(v - 0.8440296287459853) < 1e-12,
               f"cubic exponential sum at 1/9 -> {v.real:.15g}")
        _check(abs(gauss_profile(3, RationalPoint(1, 2))) < 1e-15,
               "cubic exponential sum vanishes at 1/2")
        _check(abs(gauss_profile(2, RationalPoint(1, 4)) - (1 - 1j) / 2) < 1e-15,
               "square exponential sum at 1/4 is (1-i)/2")
        est = profile_limit(GrowthFunction.power(2), 2, math.pi / 2,
                            [1e-2, 1e-3, 1e-4])
        target = complex_gamma(1.5) * (1 - 1j) / 2
        rel = abs(est.extrapolated_value - target) / abs(target)
        _check(rel < 0.02, f"square profile at 1/4 vs closed form, rel {rel:.3g}")
        return
    if x_hi <= x_lo or x_lo <= 0 or points < 3:
        raise click.UsageError("need x_hi > x_lo > 0 and at least 3 points")
    p = RationalPoint(m, n)
    grid = list(np.geomspace(x_hi, x_lo, points))
    if b == Fraction(3, 2):
        est = three_halves_profile(p, grid)
        g = GrowthFunction.power(1.5)
        y = -(4 * math.pi / (3 * math.sqrt(3))) * math.sqrt(p.n / p.m)
        target = three_halves_target(p)
    else:
        if b.denominator != 1 or b.numerator < 2:
            raise click.UsageError("--b must be an integer >= 2 or 3/2")
        g = GrowthFunction.power(float(b))
        y = 2 * math.pi * p.m / p.n
        est = profile_limit(g, b, y, grid)
        target = complex_gamma(1 + 1 / float(b)) * gauss_profile(int(b), p)
    if out:
        inv_d = 1.0 / float(est.exponent_d)
        rows = []
        for x in grid:
            f = direct_sum(g, x + 1j * y).value
            rows.append((x, f.real, f.imag, abs(f), x ** inv_d * abs(f)))
        _emit_csv("x,re,im,abs,scaled_abs", rows, out)
    lim = est.extrapolated_value
    _emit_json({
        "limit_re": _r(lim.real), "limit_im": _r(lim.imag),
        "target_re": _r(target.real), "target_im": _r(target.imag),
        "convergence_indicator": _r(est.convergence_indicator),
    }, None)


@cli.command("duality")
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--n", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_duality(m, n, out, selftest) -> None:
    """Three-halves/cubic duality residual at the rational point m/n."""
    if selftest:
        for mm, nn in ((1, 2), (1, 3), (2, 3), (1, 4), (3, 5)):
            res = duality_residual(RationalPoint(mm, nn))
            _check(res < 1e-12, f"duality residual {res:.3g} at {mm}/{nn}")
        return
    res = duality_residual(RationalPoint(m, n))
    _emit_json({"m": m, "n": n, "residual": _r(res)}, out)


@cli.command("measure")
@click.option("--growth", "growth_spec", default="power:2", show_default=True)
@click.option("--beta0", type=float, default=0.0, show_default=True)
@click.option("--beta1", type=float, default=0.25, show_default=True)
@click.option("--x-grid", default="0.2,0.1,0.05,0.02", show_default=True,
              help="Comma-separated decreasing x values.")
@click.option("--start", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="CSV path (x, ratio, offdiag_ratio).")
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_measure(growth_spec, beta0, beta1, x_grid, start, out, selftest) -> None:
    """Windowed L^2 mass of f on Re z = x against the diagonal blow-up."""
    if selftest:
        g = GrowthFunction.power(2)
        w = WindowSpec(0.0, 0.25)
        quad = window_l2(g, 0.3, w)
        exact = window_l2_exact(g, 0.3, w)
        rel = abs(quad - exact) / exact
        _check(rel < 1e-6, f"quadrature vs pair-formula oracle, rel {rel:.3g}")
        wa, wb = WindowSpec(0.0, 0.1), WindowSpec(0.1, 0.25)
        add = abs(window_l2(g, 0.3, wa) + window_l2(g, 0.3, wb) - quad) / quad
        _check(add < 1e-5, f"window additivity, rel {add:.3g}")
        return
    g = _parse_growth(growth_spec, start)
    try:
        xs = [float(t) for t in x_grid.split(",") if t.strip()]
    except ValueError:
        raise click.UsageError(f"bad --x-grid {x_grid!r}")
    w = WindowSpec(beta0, beta1)
    ratios = measure_ratio_scan(g, w, xs)
    rows = [(x, ratio, offdiagonal_bound(g, x, 1))
            for x, ratio in zip(xs, ratios)]
    _emit_csv("x,ratio,offdiag_ratio", rows, out)


@cli.command("julia")
@click.option("--lambda", "lam", type=COMPLEX, default=None,
              help="Map parameter, |lambda| < 1.")
@click.option("--order", "K", type=int, default=8, show_default=True)
@click.option("--samples", type=int, default=4096, show_default=True)
@click.option("--mode", type=click.Choice(["curve", "cloud", "series"]),
              default="curve", show_default=True)
@click.option("--resolution", type=int, default=512, show_default=True)
@click.option("--max-iter", type=int, default=200, show_default=True)
@click.option("--radius", type=float, default=100.0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_julia(lam, K, samples, mode, resolution, max_iter, radius, out,
              selftest) -> None:
    """Boundary curve of the escape basin of x -> lambda x (1-x)."""
    if selftest:
        ser = psi_series(4, 64)
        _check(ser.sizes() == (1, 7, 21, 39, 52),
               f"series term counts at order 4, cap 64: {ser.sizes()}")
        ser.validate()
        _check(True, "lacunarity and coefficient bounds")
        from fractions import Fraction as F
        from .botcher_julia import SparsePolynomial
        p = SparsePolynomial.from_terms({3: F(2, 8), 7: F(-1, 2)}, 64)
        tp = operator_T(p)
        back = F(2) * tp - tp.substitute_square()
        _check(back.as_dict() == p.as_dict(), "halving-operator inverse identity")
        res = functional_residual(ser, 0.1, 0.5 + 0.2j)
        _check(res < 1e-6, f"functional residual {res:.3g} at lambda=0.1")
        ss = self_similarity_check(0.9, 1, 2)
        _check(ss < 1e-12, f"dyadic self-similarity residual {ss:.3g}")
        return
    if lam is None:
        raise click.UsageError("--lambda is required")
    if mode == "series":
        _emit(series_to_json(psi_series(K)) + "\n", out)
        return
    ser = psi_series(K)
    if mode == "curve":
        pts = julia_curve(ser, lam, samples)
    else:
        cloud = escape_time_oracle(lam, resolution, max_iter, radius,
                                   series=ser, curve_samples=max(samples, 256))
        pts = cloud.points
    if out:
        write_points_csv(out, pts)
    else:
        _emit_csv("x,y", pts, None)


@cli.command("qplot")
@click.option("--qmax", type=int, default=100, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--selftest", is_flag=True)
@_guarded
def cmd_qplot(qmax, out, selftest) -> None:
    """The standard function: 1/q at reduced rationals p/q, 0 elsewhere."""
    if selftest:
        _check(standard_Q(0.5, 100) == 0.5, "Q(1/2) = 1/2")
        _check(standard_Q(1 / 3, 100) == 1 / 3, "Q(1/3) = 1/3")
        _check(standard_Q(math.sqrt(2) - 1, 100) == 0.0, "Q(irrational) = 0")
        return
    if qmax < 1:
        raise click.UsageError("--qmax must be >= 1")
    points = sorted({Fraction(p, q) for q in range(1, qmax + 1)
                     for p in range(0, q + 1)})
    rows = [(float(f), 1.0 / f.denominator) for f in points]
    _emit_csv("x,Q", rows, out)


def run(argv=None) -> int:
    """Programmatic entry point; returns the process exit code."""
    try:
        cli.main(args=argv, prog_name="lacunary", standalone_mode=False)
        return 0
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
