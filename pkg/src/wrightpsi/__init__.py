"""Arbitrary-precision evaluation of the Wright function 1Psi1.

``1Psi1(z) = sum_r Gamma(alpha r + a) / Gamma(beta r + b) z^r / r!``, its
algebraic and exponential asymptotic expansions, the exponentially improved
expansion on the negative real axis for ``alpha = beta``, and the exact
coefficient machinery behind them.
"""

from .coeffs import (
    CoefficientSet,
    GCoeffs,
    B_coefficients,
    c1_closed_form,
    c_coefficients,
    coverup_closed_forms,
    g_even_generate,
    g_even_table,
    leading_A0_A1,
    termination_index,
)
from .errors import InvalidInput, RegimeError, WrightError
from .evaluate import (
    EvalResult,
    Route,
    eval_E,
    eval_H,
    eval_series,
    eval_stokes_kappa1,
    eval_theorem1,
    optimal_truncation,
    wright_polynomial,
)
from .numkernel import PrecisionCtx, gamma, gamma_star, rgamma
from .oracle import kummer_series, mb_quadrature
from .params import DerivedParams, WrightParams, derive_params

__all__ = [
    "WrightParams",
    "DerivedParams",
    "derive_params",
    "PrecisionCtx",
    "gamma",
    "rgamma",
    "gamma_star",
    "CoefficientSet",
    "GCoeffs",
    "leading_A0_A1",
    "c1_closed_form",
    "c_coefficients",
    "coverup_closed_forms",
    "termination_index",
    "g_even_table",
    "g_even_generate",
    "B_coefficients",
    "EvalResult",
    "Route",
    "eval_series",
    "eval_H",
    "eval_E",
    "optimal_truncation",
    "eval_theorem1",
    "eval_stokes_kappa1",
    "wright_polynomial",
    "mb_quadrature",
    "kummer_series",
    "WrightError",
    "InvalidInput",
    "RegimeError",
]

__version__ = "0.1.0"
