"""clothofit: G1 Hermite interpolation with a single clothoid segment.

Fit a clothoid (Euler spiral) through two poses by reducing the problem
to one scalar root find, backed by an accurate evaluator for Fresnel
integrals, their momenta, and the generalized quadratic-phase integrals
they combine into.

Typical use::

    from clothofit import HermiteData, build_clothoid

    fit = build_clothoid(HermiteData(0, 0, 0.3, 4, 1, -0.5))
    x, y = fit.curve.point_at(0.5 * fit.curve.L)
"""

from .clothoid import ClothoidCurve
from .errors import (
    ConvergenceError,
    DegenerateInputError,
    ExcludedAngleError,
    FitError,
    InternalConsistencyError,
    SingularDerivativeError,
)
from .fresnel import FresnelMomenta, fresnel, fresnel_momenta
from .fitter import (
    DEFAULT_GUESS_COEFFICIENTS,
    FitConfig,
    FitResult,
    GuessCoefficients,
    HermiteData,
    ReducedProblem,
    a_max_bound,
    build_clothoid,
    g_eval,
    g_prime,
    h_eval,
    initial_guess,
    normalize_angle,
    reduce_problem,
    solve_A,
)
from .gfresnel import (
    DEFAULT_EVAL_CONFIG,
    EvalConfig,
    LargeParamDecomposition,
    eval_xy,
    eval_xy_a_large,
    eval_xy_a_small,
    eval_xy_a_zero,
    r_lommel,
)

__version__ = "0.1.0"

__all__ = [
    "ClothoidCurve",
    "ConvergenceError",
    "DegenerateInputError",
    "DEFAULT_EVAL_CONFIG",
    "DEFAULT_GUESS_COEFFICIENTS",
    "EvalConfig",
    "ExcludedAngleError",
    "FitConfig",
    "FitError",
    "FitResult",
    "FresnelMomenta",
    "GuessCoefficients",
    "HermiteData",
    "InternalConsistencyError",
    "LargeParamDecomposition",
    "ReducedProblem",
    "SingularDerivativeError",
    "a_max_bound",
    "build_clothoid",
    "eval_xy",
    "eval_xy_a_large",
    "eval_xy_a_small",
    "eval_xy_a_zero",
    "fresnel",
    "fresnel_momenta",
    "g_eval",
    "g_prime",
    "h_eval",
    "initial_guess",
    "normalize_angle",
    "r_lommel",
    "reduce_problem",
    "solve_A",
]
