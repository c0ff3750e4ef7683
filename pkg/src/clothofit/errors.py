"""Exception types raised by the fitting pipeline.

The CLI maps these onto distinct exit codes, so keep the hierarchy flat
and stable: DegenerateInputError (3), ExcludedAngleError (4),
ConvergenceError and its SingularDerivativeError subclass (5).
"""

__all__ = [
    "FitError",
    "DegenerateInputError",
    "ExcludedAngleError",
    "ConvergenceError",
    "SingularDerivativeError",
    "InternalConsistencyError",
]


class FitError(Exception):
    """Base class for all fitting failures."""


class DegenerateInputError(FitError):
    """Coincident endpoints: the chord has zero length."""


class ExcludedAngleError(FitError):
    """Angle pair at an excluded corner (phi0 = -phi1 = +/-pi).

    There the interpolant length grows without bound and no finite
    solution exists.
    """


class ConvergenceError(FitError):
    """Root finding did not reach the requested tolerance.

    Carries the last iterate so callers can inspect how far the solve got.
    """

    def __init__(self, message, A=None, iterations=None, residual=None):
        super().__init__(message)
        self.A = A
        self.iterations = iterations
        self.residual = residual


class SingularDerivativeError(ConvergenceError):
    """Newton hit a vanishing derivative and bisection found no sign change."""


class InternalConsistencyError(FitError):
    """A converged root violated an analytic guarantee (h(A) <= 0).

    This indicates a spurious root rather than bad user input.
    """
