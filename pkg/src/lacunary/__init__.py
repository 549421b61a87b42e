"""Numerical toolkit for lacunary Dirichlet series near their natural boundary.

The central object is f(z) = sum_k e^{-z g(k)} for super-linearly growing
exponents g (powers k^b and geometric bases a^k), analytic on Re z > 0 with
the imaginary axis as natural boundary.  The subpackages provide:

* ``growth`` / ``series_eval`` — growth families and compensated direct
  summation with rigorous tail bounds;
* ``asymptotics`` — Laplace-integral + fractional-part decomposition and
  the z -> 0 leading order Gamma(1+1/b) z^(-1/b) - 1/2;
* ``closed_forms`` — the square-growth theta identity and the exact
  geometric-base representation (log term + entire series + Fourier series);
* ``formal_series`` — Puiseux arithmetic, branch expansions at the Borel
  singularities, exponential-block transseries, and Borel/Laplace
  resummation with contour-deformed ray quadrature;
* ``boundary_profile`` — scaled profiles x^(1/d) f(x+iy) at rational
  boundary points, exponential-sum constants, Richardson extrapolation,
  and the cubic/three-halves duality;
* ``measure_blowup`` — windowed L^2 mass on vertical lines against the
  diagonal blow-up rate;
* ``botcher_julia`` — the conjugacy series of the quadratic map, its
  binary-lacunary coefficient polynomials, the Fourier-series Julia curve,
  and an escape-time cross-check;
* ``cli`` — one binary exposing each module as a subcommand.
"""

from .growth import GrowthFunction
from .series_eval import EvalResult, direct_sum, grid_eval
from .asymptotics import (AsymptoticDecomposition, decompose,
                          fractional_remainder, growth_constant,
                          laplace_integral, measure_rate)
from .closed_forms import (GeometricRep, geometric_c0, geometric_checkG,
                           geometric_fourier_coeff, geometric_rep_eval,
                           geometric_zeta_variant_residual, make_geometric_rep,
                           power_lacunary_eval, rational_angle_regroup,
                           theta_identity_eval)
from .formal_series import (PuiseuxSeries, Singularities, TransseriesBlock,
                            TransseriesRep, assemble_transseries,
                            asymptotic_coeffs, borel_eval, branch_expansion,
                            invert_phase, saddle_term_quadrature,
                            singularities, transseries_to_json)
from .boundary_profile import (ProfileEstimate, RationalPoint, critical_curve,
                               duality_residual, exp_sum, gauss_profile,
                               profile_limit, rational_blowup, standard_Q,
                               three_halves_profile, three_halves_target,
                               weighted_limit)
from .measure_blowup import (WindowSpec, diagonal_term, measure_ratio_scan,
                             offdiagonal_bound, window_l2, window_l2_exact)
from .botcher_julia import (BotcherSeries, EscapeCloud, PsiValue,
                            SparsePolynomial, curve_to_cloud_distance,
                            escape_time_oracle, functional_residual,
                            julia_curve, operator_T, psi_eval, psi_series,
                            self_similarity_check, series_from_json,
                            series_to_json, write_points_csv)

__version__ = "0.1.0"

__all__ = [
    "GrowthFunction", "EvalResult", "direct_sum", "grid_eval",
    "AsymptoticDecomposition", "decompose", "fractional_remainder",
    "growth_constant", "laplace_integral", "measure_rate",
    "GeometricRep", "geometric_c0", "geometric_checkG",
    "geometric_fourier_coeff", "geometric_rep_eval",
    "geometric_zeta_variant_residual", "make_geometric_rep",
    "power_lacunary_eval", "rational_angle_regroup", "theta_identity_eval",
    "PuiseuxSeries", "Singularities", "TransseriesBlock", "TransseriesRep",
    "assemble_transseries", "asymptotic_coeffs", "borel_eval",
    "branch_expansion", "invert_phase", "saddle_term_quadrature",
    "singularities", "transseries_to_json",
    "ProfileEstimate", "RationalPoint", "critical_curve", "duality_residual",
    "exp_sum", "gauss_profile", "profile_limit", "rational_blowup",
    "standard_Q", "three_halves_profile", "three_halves_target",
    "weighted_limit",
    "WindowSpec", "diagonal_term", "measure_ratio_scan", "offdiagonal_bound",
    "window_l2", "window_l2_exact",
    "BotcherSeries", "EscapeCloud", "PsiValue", "SparsePolynomial",
    "curve_to_cloud_distance", "escape_time_oracle", "functional_residual",
    "julia_curve", "operator_T", "psi_eval", "psi_series",
    "self_similarity_check", "series_from_json", "series_to_json",
    "write_points_csv",
    "__version__",
]
