import math

import numpy as np
import pytest

from clothofit import (
    ConvergenceError,
    DegenerateInputError,
    ExcludedAngleError,
    FitConfig,
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

from oracles import bisection_root, xy_reference

C1, C2, C3 = 3.070645, 0.947923, -0.673029


def make_rp(phi0, phi1):
    return ReducedProblem(r=1.0, varphi=0.0, phi0=phi0, phi1=phi1, delta=phi1 - phi0)


# ------------------------------------------------------------ normalize

def test_normalize_angle_examples():
    assert normalize_angle(0.0) == 0.0
    assert normalize_angle(1.5 * math.pi) == pytest.approx(-0.5 * math.pi, abs=1e-15)
    assert normalize_angle(-3.0 * math.pi) == pytest.approx(-math.pi, abs=1e-15)
    # boundary convention: +/-pi are fixed points
    assert normalize_angle(math.pi) == math.pi
    assert normalize_angle(-math.pi) == -math.pi
    with pytest.raises(ValueError):
        normalize_angle(math.inf)


# ------------------------------------------------------------ reduction

def test_reduce_straight_chord():
    rp = reduce_problem(HermiteData(0.0, 0.0, 0.0, 1.0, 0.0, 0.0))
    assert rp.r == 1.0
    assert rp.varphi == 0.0
    assert rp.phi0 == 0.0 and rp.phi1 == 0.0 and rp.delta == 0.0


def test_reduce_reference_case():
    rp = reduce_problem(
        HermiteData(5.0, 4.0, math.pi / 3.0, 5.0, 6.0, 7.0 * math.pi / 6.0))
    assert rp.r == pytest.approx(2.0, rel=1e-15)
    assert rp.varphi == pytest.approx(0.5 * math.pi, rel=1e-15)
    assert rp.phi0 == pytest.approx(-math.pi / 6.0, abs=1e-15)
    assert rp.phi1 == pytest.approx(2.0 * math.pi / 3.0, abs=1e-15)
    assert rp.delta == rp.phi1 - rp.phi0


def test_reduce_coincident_endpoints():
    with pytest.raises(DegenerateInputError):
        reduce_problem(HermiteData(1.0, 1.0, 0.3, 1.0, 1.0, 0.7))


def test_hermite_data_validation():
    with pytest.raises(ValueError):
        HermiteData(0.0, 0.0, math.nan, 1.0, 0.0, 0.0)


def test_reduced_problem_invariants():
    with pytest.raises(ValueError):
        ReducedProblem(r=0.0, varphi=0.0, phi0=0.0, phi1=0.0, delta=0.0)
    with pytest.raises(ValueError):
        ReducedProblem(r=1.0, varphi=0.0, phi0=4.0, phi1=0.0, delta=-4.0)
    with pytest.raises(ValueError):
        ReducedProblem(r=1.0, varphi=0.0, phi0=0.1, phi1=0.2, delta=0.3)


# ------------------------------------------------------------ g, g', h

def test_g_vanishes_for_symmetric_angles():
    assert g_eval(0.0, make_rp(0.0, 0.0)) == 0.0
    for phi in (0.2, -0.7, 2.0):
        assert abs(g_eval(0.0, make_rp(-phi, phi))) < 1e-14


def test_g_against_quadrature():
    rp = make_rp(0.1, 0.3)
    _, yq = xy_reference(2.0, rp.delta - 1.0, 0.1, 0)
    assert g_eval(1.0, rp) == pytest.approx(yq, abs=1e-12)


def test_g_prime_at_origin():
    # derivative of the linearized defect (phi0 + phi1)/2 - A/6
    assert g_prime(0.0, make_rp(0.0, 0.0)) == pytest.approx(-1.0 / 6.0, rel=1e-14)


def test_g_prime_is_momentum_difference():
    rp = make_rp(-0.5, 0.5)
    x1, _ = xy_reference(0.0, rp.delta, rp.phi0, 1)
    x2, _ = xy_reference(0.0, rp.delta, rp.phi0, 2)
    assert g_prime(0.0, rp) == pytest.approx(x2 - x1, abs=1e-12)


def test_g_prime_matches_finite_differences():
    rng = np.random.default_rng(5)
    for _ in range(100):
        A = float(rng.uniform(-8.0, 8.0))
        phi0 = float(rng.uniform(-math.pi, math.pi))
        phi1 = float(rng.uniform(-math.pi, math.pi))
        rp = make_rp(phi0, phi1)
        h = 1e-6 * max(1.0, abs(A))
        fd = (g_eval(A + h, rp) - g_eval(A - h, rp)) / (2.0 * h)
        gp = g_prime(A, rp)
        assert abs(gp - fd) / max(1e-12, abs(fd)) < 1e-6


def test_h_examples():
    assert h_eval(0.0, make_rp(0.0, 0.0)) == 1.0
    assert h_eval(0.0, make_rp(-0.5 * math.pi, 0.5 * math.pi)) == pytest.approx(
        2.0 / math.pi, rel=1e-14)
    rp = make_rp(0.4, -1.1)
    xq, _ = xy_reference(1.6, rp.delta - 0.8, rp.phi0, 0)
    assert h_eval(0.8, rp) == pytest.approx(xq, abs=1e-12)


# ------------------------------------------------------------ guess

def test_initial_guess_values():
    assert initial_guess(0.0, 0.0, "linear") == 0.0
    assert initial_guess(0.1, 0.2, "linear") == pytest.approx(0.9, rel=1e-15)
    expected = math.pi * (C1 + C2 / 4.0 + C3 / 2.0)
    assert initial_guess(0.5 * math.pi, 0.5 * math.pi, "cubic") == pytest.approx(
        expected, rel=1e-15)
    with pytest.raises(ValueError):
        initial_guess(0.1, 0.1, "septic")


def test_guess_vanishes_on_antisymmetric_pairs():
    for variant in ("linear", "cubic", "quintic"):
        for phi in (0.3, 1.2, 3.0):
            assert initial_guess(-phi, phi, variant) == 0.0


# ------------------------------------------------------------ bracket

def test_a_max_examples():
    assert a_max_bound(0.0, math.pi) == pytest.approx(
        math.pi * (2.0 + math.sqrt(3.0)), rel=1e-15)
    assert a_max_bound(-0.5 * math.pi, 0.5 * math.pi) == pytest.approx(math.pi, rel=1e-15)
    with pytest.raises(ExcludedAngleError):
        a_max_bound(math.pi, -math.pi)
    with pytest.raises(ExcludedAngleError):
        a_max_bound(-math.pi, math.pi)


def test_returned_root_is_inside_bracket():
    rng = np.random.default_rng(13)
    for _ in range(300):
        phi0 = float(rng.uniform(-0.9999 * math.pi, 0.9999 * math.pi))
        phi1 = float(rng.uniform(-0.9999 * math.pi, 0.9999 * math.pi))
        A, _ = solve_A(make_rp(phi0, phi1))
        assert abs(A) <= a_max_bound(phi0, phi1) + 1e-9


# ------------------------------------------------------------ solve

def test_solve_trivial_line():
    A, iterations = solve_A(make_rp(0.0, 0.0))
    assert A == 0.0
    assert iterations <= 1


def test_solve_circle_pair():
    A, _ = solve_A(make_rp(-0.4, 0.4))
    assert abs(A) <= 1e-10


def test_solve_matches_bisection_oracle():
    rng = np.random.default_rng(17)
    cfg = FitConfig()
    for _ in range(40):
        phi0 = float(rng.uniform(-0.95 * math.pi, 0.95 * math.pi))
        phi1 = float(rng.uniform(-0.95 * math.pi, 0.95 * math.pi))
        rp = make_rp(phi0, phi1)
        A, _ = solve_A(rp, cfg)
        a_max = a_max_bound(phi0, phi1)
        seed = initial_guess(phi0, phi1, cfg.guess_variant)
        A_ref = bisection_root(lambda x: g_eval(x, rp), -a_max, a_max, seed)
        assert A == pytest.approx(A_ref, abs=1e-8)


def test_solve_reports_non_convergence():
    cfg = FitConfig(tol=1e-12, max_iter=1)
    rp = reduce_problem(
        HermiteData(5.0, 4.0, math.pi / 3.0, 5.0, 6.0, 7.0 * math.pi / 6.0))
    with pytest.raises(ConvergenceError) as info:
        solve_A(rp, cfg)
    assert info.value.iterations == 1
    assert info.value.residual > 1e-12
    assert math.isfinite(info.value.A)


def test_bisection_fallback_finds_the_newton_root():
    from clothofit.fitter import _bisect_root

    rp = make_rp(0.4, 1.2)
    cfg = FitConfig()
    a_max = a_max_bound(0.4, 1.2)
    seed = initial_guess(0.4, 1.2)
    A_bis, _ = _bisect_root(rp, cfg, -a_max, a_max, seed)
    A_newton, _ = solve_A(rp, cfg)
    assert A_bis == pytest.approx(A_newton, abs=1e-8)


def test_bisection_without_sign_change_raises():
    from clothofit import SingularDerivativeError
    from clothofit.fitter import _bisect_root

    rp = make_rp(0.4, 1.2)
    with pytest.raises(SingularDerivativeError):
        _bisect_root(rp, FitConfig(), 5.0, 5.0, 5.0)


# ------------------------------------------------------------ build

def test_build_straight_line():
    fit = build_clothoid(HermiteData(0.0, 0.0, 0.0, 1.0, 0.0, 0.0))
    assert fit.curve.kappa == 0.0
    assert fit.curve.kappa_prime == 0.0
    assert fit.curve.L == 1.0
    assert fit.endpoint_error == 0.0
    assert fit.B == fit.curve.kappa * fit.curve.L


def test_build_unit_semicircle():
    fit = build_clothoid(HermiteData(0.0, 0.0, 0.5 * math.pi, 2.0, 0.0, -0.5 * math.pi))
    assert fit.curve.L == pytest.approx(math.pi, rel=1e-14)
    assert fit.curve.kappa == pytest.approx(-1.0, rel=1e-14)
    assert abs(fit.curve.kappa_prime) < 1e-14
    assert fit.endpoint_error < 1e-13


def test_build_reference_case():
    fit = build_clothoid(
        HermiteData(5.0, 4.0, math.pi / 3.0, 5.0, 6.0, 7.0 * math.pi / 6.0))
    assert fit.iterations <= 5
    assert fit.endpoint_error <= 1e-12
    assert fit.residual_g <= 1e-12
    assert fit.curve.L > 0.0
    rp = reduce_problem(
        HermiteData(5.0, 4.0, math.pi / 3.0, 5.0, 6.0, 7.0 * math.pi / 6.0))
    assert fit.B == rp.delta - fit.A


def test_build_excluded_corner():
    with pytest.raises(ExcludedAngleError):
        build_clothoid(HermiteData(0.0, 0.0, math.pi, 1.0, 0.0, -math.pi))


def test_build_degenerate():
    with pytest.raises(DegenerateInputError):
        build_clothoid(HermiteData(2.0, 3.0, 0.1, 2.0, 3.0, 0.2))


# ------------------------------------------------------------ symmetry

def test_reversal_and_mirror_symmetries():
    # g(A) = -g_rev(-A) = -g_mir(-A), h(A) = h_rev(-A) = h_mir(-A), where
    # the reversed problem swaps endpoints (angles -phi1, -phi0) and the
    # mirrored problem flips across the chord (angles -phi0, -phi1)
    rng = np.random.default_rng(29)
    for _ in range(100):
        A = float(rng.uniform(-8.0, 8.0))
        phi0 = float(rng.uniform(-math.pi, math.pi))
        phi1 = float(rng.uniform(-math.pi, math.pi))
        delta = phi1 - phi0
        rp = make_rp(phi0, phi1)
        rev = ReducedProblem(r=1.0, varphi=0.0, phi0=-phi1, phi1=-phi1 + delta,
                             delta=delta)
        mir = ReducedProblem(r=1.0, varphi=0.0, phi0=-phi0, phi1=-phi0 - delta,
                             delta=-delta)
        assert g_eval(A, rp) == pytest.approx(-g_eval(-A, rev), abs=1e-12)
        assert g_eval(A, rp) == pytest.approx(-g_eval(-A, mir), abs=1e-12)
        assert h_eval(A, rp) == pytest.approx(h_eval(-A, rev), abs=1e-12)
        assert h_eval(A, rp) == pytest.approx(h_eval(-A, mir), abs=1e-12)


def test_endpoint_identity_random_data():
    rng = np.random.default_rng(31)
    for _ in range(150):
        x0, y0, x1, y1 = rng.uniform(-10.0, 10.0, 4)
        r = math.hypot(x1 - x0, y1 - y0)
        if r < 1e-3:
            continue
        t0, t1 = rng.uniform(-0.99 * math.pi, 0.99 * math.pi, 2)
        fit = build_clothoid(HermiteData(float(x0), float(y0), float(t0),
                                         float(x1), float(y1), float(t1)))
        assert fit.endpoint_error <= 1e-10 * r
        angle_gap = (fit.curve.angle_at(fit.curve.L) - t1) % (2.0 * math.pi)
        assert min(angle_gap, 2.0 * math.pi - angle_gap) <= 1e-10


def test_rigid_motion_equivariance():
    rng = np.random.default_rng(37)
    base = HermiteData(1.0, -2.0, 0.7, 4.0, 1.0, -1.1)
    ref = build_clothoid(base)
    for _ in range(25):
        alpha = float(rng.uniform(-math.pi, math.pi))
        tx, ty = rng.uniform(-5.0, 5.0, 2)
        ca, sa = math.cos(alpha), math.sin(alpha)

        def move(x, y):
            return ca * x - sa * y + tx, sa * x + ca * y + ty

        mx0, my0 = move(base.x0, base.y0)
        mx1, my1 = move(base.x1, base.y1)
        fit = build_clothoid(HermiteData(mx0, my0, base.theta0 + alpha,
                                         mx1, my1, base.theta1 + alpha))
        assert fit.curve.kappa == pytest.approx(ref.curve.kappa, abs=1e-10)
        assert fit.curve.kappa_prime == pytest.approx(ref.curve.kappa_prime, abs=1e-10)
        assert fit.curve.L == pytest.approx(ref.curve.L, abs=1e-10)
        assert fit.A == pytest.approx(ref.A, abs=1e-10)
        assert fit.iterations == ref.iterations


def test_scaling_covariance():
    base = HermiteData(1.0, -2.0, 0.7, 4.0, 1.0, -1.1)
    ref = build_clothoid(base)
    for lam in (0.25, 3.0, 40.0):
        fit = build_clothoid(HermiteData(base.x0 * lam, base.y0 * lam, base.theta0,
                                         base.x1 * lam, base.y1 * lam, base.theta1))
        assert fit.curve.L == pytest.approx(lam * ref.curve.L, rel=1e-10)
        assert fit.curve.kappa == pytest.approx(ref.curve.kappa / lam, rel=1e-10)
        assert fit.curve.kappa_prime == pytest.approx(
            ref.curve.kappa_prime / lam ** 2, rel=1e-10)
        assert fit.A == pytest.approx(ref.A, abs=1e-10)


def test_circles_and_lines_share_the_generic_path():
    # no case split: antisymmetric chord angles must come out with
    # kappa_prime ~ 0 through the ordinary solve
    rng = np.random.default_rng(41)
    for _ in range(50):
        phi = float(rng.uniform(-0.99 * math.pi, 0.99 * math.pi))
        r = float(rng.uniform(0.5, 20.0))
        fit = build_clothoid(HermiteData(0.0, 0.0, phi, r, 0.0, -phi))
        assert abs(fit.A) <= 1e-9
        assert abs(fit.curve.kappa_prime) * fit.curve.L ** 2 <= 1e-8
