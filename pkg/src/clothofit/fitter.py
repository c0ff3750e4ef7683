"""Single-segment clothoid fit through two poses (G1 Hermite data).

The three scalar conditions (end position and end tangent) collapse to a
scalar root find.  With r, varphi the chord length and angle, and
phi0 = theta0 - varphi, phi1 = theta1 - varphi (normalized), the unknown
A = kappa_prime L^2 / 2 solves

    g(A) := Y_0(2A, delta - A, phi0) = 0,     delta = phi1 - phi0,

after which L = r / X_0(2A, delta - A, phi0), kappa = (delta - A)/L and
kappa_prime = 2A/L^2.  Newton with a fitted polynomial initial guess
converges in a handful of iterations for every angle pair; the relevant
root is unique inside [-A_max, A_max] given by `a_max_bound`, which backs
a bisection fallback that never triggers in normal use.
"""

import math
from dataclasses import dataclass, field

from .clothoid import ClothoidCurve
from .errors import (
    ConvergenceError,
    DegenerateInputError,
    ExcludedAngleError,
    InternalConsistencyError,
    SingularDerivativeError,
)
from .gfresnel import DEFAULT_EVAL_CONFIG, EvalConfig, eval_xy

__all__ = [
    "HermiteData",
    "ReducedProblem",
    "GuessCoefficients",
    "FitConfig",
    "FitResult",
    "DEFAULT_GUESS_COEFFICIENTS",
    "GUESS_VARIANTS",
    "normalize_angle",
    "reduce_problem",
    "g_eval",
    "g_prime",
    "h_eval",
    "initial_guess",
    "a_max_bound",
    "solve_A",
    "build_clothoid",
]

# Angular tolerance for rejecting the corners phi0 = -phi1 = +/-pi, where
# the segment length diverges.
_EXCLUDED_CORNER_TOL = 1e-12

# Below this the Newton correction is indistinguishable from rounding
# noise in g, so a polishing step cannot help.
_RESIDUAL_FLOOR = 1e-15

# |g'| below this is treated as a vanishing derivative.
_DERIVATIVE_FLOOR = 1e-30


@dataclass(frozen=True)
class HermiteData:
    """Two endpoints with tangent angles: the fitting input."""

    x0: float
    y0: float
    theta0: float
    x1: float
    y1: float
    theta1: float

    def __post_init__(self):
        for name in ("x0", "y0", "theta0", "x1", "y1", "theta1"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError("HermiteData: %s must be finite" % name)


@dataclass(frozen=True)
class ReducedProblem:
    """Chord-frame form of the fitting input.

    r, varphi are the chord length and angle; phi0, phi1 the tangent
    angles relative to the chord, normalized into [-pi, pi];
    delta = phi1 - phi0 the total turning.
    """

    r: float
    varphi: float
    phi0: float
    phi1: float
    delta: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise ValueError("ReducedProblem: r must be positive")
        if abs(self.phi0) > math.pi or abs(self.phi1) > math.pi:
            raise ValueError("ReducedProblem: phi0, phi1 must lie in [-pi, pi]")
        if self.delta != self.phi1 - self.phi0:
            raise ValueError("ReducedProblem: delta must equal phi1 - phi0")


@dataclass(frozen=True)
class GuessCoefficients:
    """Least-squares coefficients of the cubic and quintic guess surfaces."""

    c: tuple = (3.070645, 0.947923, -0.673029)
    d: tuple = (2.989696, 0.71622, -0.458969, -0.502821, 0.26106, -0.045854)


DEFAULT_GUESS_COEFFICIENTS = GuessCoefficients()

GUESS_VARIANTS = ("linear", "cubic", "quintic")


@dataclass(frozen=True)
class FitConfig:
    """Solver settings: Newton stop |g(A)| <= tol, iteration cap, guess."""

    tol: float = 1e-12
    max_iter: int = 100
    guess_variant: str = "quintic"
    eval: EvalConfig = field(default_factory=EvalConfig)

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError("FitConfig: tol must be positive")
        if not (isinstance(self.max_iter, int) and self.max_iter >= 1):
            raise ValueError("FitConfig: max_iter must be an int >= 1")
        if self.guess_variant not in GUESS_VARIANTS:
            raise ValueError(
                "FitConfig: guess_variant must be one of %s" % (GUESS_VARIANTS,)
            )


DEFAULT_FIT_CONFIG = FitConfig()


@dataclass(frozen=True)
class FitResult:
    """Fitted curve plus solver diagnostics.

    A = kappa_prime L^2 / 2 is the root found, B = delta - A = kappa L.
    """

    curve: ClothoidCurve
    A: float
    B: float
    iterations: int
    residual_g: float
    endpoint_error: float


def normalize_angle(phi: float) -> float:
    """Shift phi by multiples of 2 pi into [-pi, pi].

    The boundary values map to themselves: pi stays pi, -pi stays -pi.
    """
    if not math.isfinite(phi):
        raise ValueError("normalize_angle: angle must be finite, got %r" % (phi,))
    if abs(phi) > 4.0 * math.pi:
        # exact remainder first; the loops below then take at most one step
        phi = math.fmod(phi, 2.0 * math.pi)
    while phi > math.pi:
        phi -= 2.0 * math.pi
    while phi < -math.pi:
        phi += 2.0 * math.pi
    return phi


def reduce_problem(data: HermiteData) -> ReducedProblem:
    """Rewrite the Hermite data in the chord frame."""
    dx = data.x1 - data.x0
    dy = data.y1 - data.y0
    r = math.hypot(dx, dy)
    if r == 0.0:
        raise DegenerateInputError("coincident endpoints: chord length is zero")
    varphi = math.atan2(dy, dx)
    phi0 = normalize_angle(data.theta0 - varphi)
    phi1 = normalize_angle(data.theta1 - varphi)
    return ReducedProblem(r=r, varphi=varphi, phi0=phi0, phi1=phi1, delta=phi1 - phi0)


def g_eval(A: float, rp: ReducedProblem, cfg: EvalConfig = DEFAULT_EVAL_CONFIG) -> float:
    """Transverse closure defect g(A) = Y_0(2A, delta - A, phi0)."""
    return eval_xy(2.0 * A, rp.delta - A, rp.phi0, 1, cfg)[1][0]


def g_prime(A: float, rp: ReducedProblem, cfg: EvalConfig = DEFAULT_EVAL_CONFIG) -> float:
    """dg/dA = X_2 - X_1 at (2A, delta - A, phi0).

    Differentiating the phase A tau^2 + (delta - A) tau + phi0 in A
    brings down tau^2 - tau, hence the second minus first momentum.
    """
    X, _ = eval_xy(2.0 * A, rp.delta - A, rp.phi0, 3, cfg)
    return X[2] - X[1]


def h_eval(A: float, rp: ReducedProblem, cfg: EvalConfig = DEFAULT_EVAL_CONFIG) -> float:
    """Chord-aligned projection h(A) = X_0(2A, delta - A, phi0).

    At the relevant root of g, h is strictly positive, so L = r / h is a
    valid positive length.
    """
    return eval_xy(2.0 * A, rp.delta - A, rp.phi0, 1, cfg)[0][0]


def initial_guess(phi0: float, phi1: float, variant: str = "quintic",
                  coeffs: GuessCoefficients = DEFAULT_GUESS_COEFFICIENTS) -> float:
    """Starting value for the Newton solve.

    'linear' is 3 (phi0 + phi1), from linearizing g.  'cubic' and
    'quintic' are least-squares fits of the root surface in the scaled
    angles phi/pi; the quintic lands within Newton's quadratic basin
    essentially everywhere.
    """
    if variant == "linear":
        return 3.0 * (phi0 + phi1)
    f0 = phi0 / math.pi
    f1 = phi1 / math.pi
    if variant == "cubic":
        c1, c2, c3 = coeffs.c
        return (phi0 + phi1) * (c1 + c2 * f0 * f1 + c3 * (f0 * f0 + f1 * f1))
    if variant == "quintic":
        d1, d2, d3, d4, d5, d6 = coeffs.d
        prod = f0 * f1
        sq = f0 * f0 + f1 * f1
        return (phi0 + phi1) * (
            d1 + prod * (d2 + d3 * prod) + sq * (d4 + d5 * prod)
            + d6 * (f0 ** 4 + f1 ** 4)
        )
    raise ValueError("initial_guess: unknown variant %r" % (variant,))


def _is_excluded_corner(phi0, phi1, tol=_EXCLUDED_CORNER_TOL):
    near_pos = abs(phi0 - math.pi) <= tol and abs(phi1 + math.pi) <= tol
    near_neg = abs(phi0 + math.pi) <= tol and abs(phi1 - math.pi) <= tol
    return near_pos or near_neg


def a_max_bound(phi0: float, phi1: float) -> float:
    """Half-width of the interval that brackets the relevant root of g.

    A_max = |delta| + 2 theta_max (1 + sqrt(1 + |delta|/theta_max)) with

        theta_max = max(0, pi/2 + sign(phi1) phi0, pi/2 + sign(phi0) phi1).

    Taking the larger of the two signed combinations covers all four
    angle orderings (the reductions that swap or mirror the endpoints
    exchange the roles of phi0 and phi1).  theta_max = 0 degenerates to
    A_max = |delta|.  The corners phi0 = -phi1 = +/-pi are rejected.
    """
    if _is_excluded_corner(phi0, phi1):
        raise ExcludedAngleError(
            "angle pair (%.17g, %.17g) is at an excluded corner" % (phi0, phi1)
        )
    delta = abs(phi1 - phi0)
    sg0 = math.copysign(1.0, phi0) if phi0 != 0.0 else 0.0
    sg1 = math.copysign(1.0, phi1) if phi1 != 0.0 else 0.0
    theta_max = max(0.0, 0.5 * math.pi + sg1 * phi0, 0.5 * math.pi + sg0 * phi1)
    if theta_max == 0.0:
        return delta
    return delta + 2.0 * theta_max * (1.0 + math.sqrt(1.0 + delta / theta_max))


def _bisect_root(rp, cfg, a_lo, a_hi, seed):
    """Bisection on the sign-changing subinterval of [a_lo, a_hi] nearest seed."""
    n_scan = 256
    step = (a_hi - a_lo) / n_scan
    best = None
    prev_a = a_lo
    prev_g = g_eval(prev_a, rp, cfg.eval)
    for i in range(1, n_scan + 1):
        cur_a = a_lo + i * step
        cur_g = g_eval(cur_a, rp, cfg.eval)
        if prev_g == 0.0:
            return prev_a, 0
        if prev_g * cur_g < 0.0:
            mid = 0.5 * (prev_a + cur_a)
            if best is None or abs(mid - seed) < abs(0.5 * (best[0] + best[1]) - seed):
                best = (prev_a, cur_a, prev_g)
        prev_a, prev_g = cur_a, cur_g
    if best is None:
        raise SingularDerivativeError(
            "derivative vanished and no sign change found in the root bracket",
            A=seed,
        )
    lo, hi, g_lo = best
    steps = 0
    while hi - lo > 1e-15 * max(1.0, abs(lo) + abs(hi)):
        mid = 0.5 * (lo + hi)
        g_mid = g_eval(mid, rp, cfg.eval)
        if abs(g_mid) <= cfg.tol:
            return mid, steps
        if g_lo * g_mid < 0.0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
        steps += 1
    return 0.5 * (lo + hi), steps


def _solve(rp, cfg):
    """Newton iteration on g; returns (A, iterations, |g(A)| at exit)."""
    A = initial_guess(rp.phi0, rp.phi1, cfg.guess_variant)
    a_max = a_max_bound(rp.phi0, rp.phi1)
    escape = 2.0 * max(a_max, 1.0)
    ecfg = cfg.eval
    delta = rp.delta
    phi0 = rp.phi0
    iterations = 0
    while True:
        X, Y = eval_xy(2.0 * A, delta - A, phi0, 3, ecfg)
        g = Y[0]
        gp = X[2] - X[1]
        if abs(g) <= cfg.tol:
            break
        if iterations >= cfg.max_iter:
            raise ConvergenceError(
                "Newton did not reach |g| <= %g in %d iterations" % (cfg.tol, cfg.max_iter),
                A=A, iterations=iterations, residual=abs(g),
            )
        if abs(gp) < _DERIVATIVE_FLOOR:
            A, extra = _bisect_root(rp, cfg, -a_max, a_max, A)
            iterations += extra
            g = g_eval(A, rp, ecfg)
            gp = g_prime(A, rp, ecfg)
            if abs(g) <= cfg.tol:
                break
            continue
        A_next = A - g / gp
        if abs(A_next) > escape:
            A, extra = _bisect_root(rp, cfg, -a_max, a_max, A)
            iterations += extra + 1
            continue
        A = A_next
        iterations += 1
    # One polishing step: |g| <= tol bounds the transverse defect only
    # relative to L, so quadratic convergence is pushed to the noise
    # floor to keep absolute endpoint errors at machine level.
    if abs(g) > _RESIDUAL_FLOOR and gp != 0.0:
        A_ref = A - g / gp
        g_ref = g_eval(A_ref, rp, ecfg)
        if abs(g_ref) < abs(g):
            A = A_ref
            g = g_ref
            iterations += 1
    return A, iterations, abs(g)


def solve_A(rp: ReducedProblem, cfg: FitConfig = DEFAULT_FIT_CONFIG):
    """Root of g(A) = 0 for a reduced problem; returns (A, iterations)."""
    A, iterations, _ = _solve(rp, cfg)
    return A, iterations


def build_clothoid(data: HermiteData, cfg: FitConfig = DEFAULT_FIT_CONFIG) -> FitResult:
    """Fit one clothoid segment through the Hermite data.

    Parameters
    ----------
    data : HermiteData
        Start and end poses.  Endpoints must not coincide, and the
        chord-relative angles must not sit on an excluded corner.
    cfg : FitConfig
        Newton tolerance, iteration cap, guess variant, evaluator config.

    Returns
    -------
    FitResult
        Curve (start pose, kappa, kappa_prime, L > 0) and diagnostics.
        Lines and circles fall out of the same computation with
        kappa_prime = 0; no case split is involved.
    """
    rp = reduce_problem(data)
    if _is_excluded_corner(rp.phi0, rp.phi1):
        raise ExcludedAngleError(
            "tangent angles opposite and parallel to the chord: "
            "no finite-length interpolant exists"
        )
    A, iterations, residual = _solve(rp, cfg)
    h = h_eval(A, rp, cfg.eval)
    if h <= 0.0:
        raise InternalConsistencyError(
            "X_0 <= 0 at the computed root (A=%.17g): spurious solution" % A
        )
    L = rp.r / h
    kappa = (rp.delta - A) / L
    kappa_prime = 2.0 * A / (L * L)
    curve = ClothoidCurve(
        x0=data.x0, y0=data.y0, theta0=data.theta0,
        kappa=kappa, kappa_prime=kappa_prime, L=L,
    )
    return FitResult(
        curve=curve,
        A=A,
        B=rp.delta - A,
        iterations=iterations,
        residual_g=residual,
        endpoint_error=curve.endpoint_residual(data, cfg.eval),
    )
