"""Command line interface: fit, sample, svg, bench, grid-stats.

Exit codes: 0 success, 2 bad arguments, 3 degenerate input (coincident
endpoints), 4 excluded angle configuration, 5 non-convergence.
"""

import argparse
import json
import math
import sys
import time

from .errors import ConvergenceError, DegenerateInputError, ExcludedAngleError
from .fitter import (
    FitConfig,
    HermiteData,
    ReducedProblem,
    build_clothoid,
    solve_A,
)

__all__ = ["main"]

# Reference fit problems exercised by `bench`.  The first six cover
# generic arcs; the two parametric families drive the solver into the
# near-line and near-circle regimes where the series evaluator matters.
BENCH_TESTS = (
    ("test-1", (5.0, 4.0, math.pi / 3.0, 5.0, 6.0, 7.0 * math.pi / 6.0)),
    ("test-2", (3.0, 5.0, 2.14676, 6.0, 5.0, 2.86234)),
    ("test-3", (3.0, 6.0, 3.05433, 6.0, 6.0, 3.14159)),
    ("test-4", (3.0, 6.0, 0.08727, 6.0, 6.0, 3.05433)),
    ("test-5", (5.0, 4.0, 0.34907, 4.0, 5.0, 4.48550)),
    ("test-6", (4.0, 4.0, 0.52360, 5.0, 5.0, 4.66003)),
)


def bench_near_line_case(k):
    return (0.0, 0.0, 0.01 * 2.0 ** -k, 100.0, 0.0, -0.02 * 2.0 ** -k)


def bench_near_circle_case(k):
    return (0.0, -100.0, 0.00011 * 2.0 ** -k,
            -100.0, 0.0, 1.5 * math.pi - 0.0001 * 2.0 ** -k)


BENCH_MAX_ITER = {"arc": 5, "regime": 4}
BENCH_MAX_ERROR = 1e-12

GRID_ANGLE_LIMIT = 0.9999 * math.pi


def _add_fit_arguments(p):
    for name in ("x0", "y0", "theta0", "x1", "y1", "theta1"):
        p.add_argument("--" + name, type=float, required=True)
    _add_solver_arguments(p)


def _add_solver_arguments(p):
    p.add_argument("--tol", type=float, default=1e-12,
                   help="Newton stop on |g(A)| (default 1e-12)")
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--guess", choices=("linear", "cubic", "quintic"),
                   default="quintic", help="initial guess variant")


def _add_out_argument(p):
    p.add_argument("--out", metavar="PATH", default=None,
                   help="output file (default: stdout)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="clothofit",
        description="Fit a single clothoid segment through two poses "
                    "(positions plus tangent angles) and export the result.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="solve one fit and print a JSON record")
    _add_fit_arguments(p)
    _add_out_argument(p)

    p = sub.add_parser("sample", help="fit, then tabulate poses along the curve")
    _add_fit_arguments(p)
    p.add_argument("--n", type=int, default=100, help="number of rows (>= 2)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_out_argument(p)

    p = sub.add_parser("svg", help="fit, then render the curve as an SVG plot")
    _add_fit_arguments(p)
    p.add_argument("--n", type=int, default=100, help="polyline vertices (>= 2)")
    p.add_argument("--width", type=float, default=800.0)
    p.add_argument("--height", type=float, default=600.0)
    _add_out_argument(p)

    p = sub.add_parser("bench", help="run the built-in reference problems")
    p.add_argument("--full-grid", action="store_true",
                   help="additionally run the 1024x1024 iteration-count grid")
    _add_out_argument(p)

    p = sub.add_parser("grid-stats",
                       help="histogram of Newton iteration counts over an angle grid")
    p.add_argument("--grid-n", type=int, default=64, help="grid points per axis (>= 2)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--guess", choices=("linear", "cubic", "quintic"), default="quintic")
    _add_out_argument(p)

    return parser


def _fit_config(args):
    if not math.isfinite(args.tol):
        raise ValueError("--tol must be finite")
    return FitConfig(tol=args.tol, max_iter=args.max_iter, guess_variant=args.guess)


def _hermite_data(args):
    values = [getattr(args, n) for n in ("x0", "y0", "theta0", "x1", "y1", "theta1")]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("pose flags must be finite numbers")
    return HermiteData(*values)


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fit_record(result):
    return {
        "kappa": result.curve.kappa,
        "kappa_prime": result.curve.kappa_prime,
        "L": result.curve.L,
        "A": result.A,
        "iterations": result.iterations,
        "residual_g": result.residual_g,
        "endpoint_error": result.endpoint_error,
    }


def cmd_fit(args):
    result = build_clothoid(_hermite_data(args), _fit_config(args))
    _emit(json.dumps(_fit_record(result)) + "\n", args.out)
    return 0


def _sample_rows(args):
    if args.n < 2:
        raise ValueError("--n must be at least 2")
    result = build_clothoid(_hermite_data(args), _fit_config(args))
    curve = result.curve
    step = curve.L / (args.n - 1)
    rows = [(i * step,) + pose for i, pose in enumerate(curve.sample(args.n))]
    return curve, rows


def cmd_sample(args):
    _, rows = _sample_rows(args)
    if args.format == "csv":
        lines = ["s,x,y,theta,kappa"]
        lines += [",".join(repr(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        keys = ("s", "x", "y", "theta", "kappa")
        text = json.dumps([dict(zip(keys, row)) for row in rows]) + "\n"
    _emit(text, args.out)
    return 0


def cmd_svg(args):
    if args.width <= 0 or args.height <= 0:
        raise ValueError("--width and --height must be positive")
    _, rows = _sample_rows(args)
    xs = [r[1] for r in rows]
    ys = [r[2] for r in rows]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    margin = 0.05 * min(args.width, args.height)
    span_x = xmax - xmin
    span_y = ymax - ymin
    # uniform scale preserves the curve's aspect ratio
    avail_w = args.width - 2.0 * margin
    avail_h = args.height - 2.0 * margin
    candidates = []
    if span_x > 0.0:
        candidates.append(avail_w / span_x)
    if span_y > 0.0:
        candidates.append(avail_h / span_y)
    scale = min(candidates) if candidates else 1.0
    off_x = 0.5 * (args.width - span_x * scale)
    off_y = 0.5 * (args.height - span_y * scale)

    def to_px(x, y):
        px = off_x + (x - xmin) * scale
        py = args.height - (off_y + (y - ymin) * scale)
        return px, py

    points = " ".join("%.6f,%.6f" % to_px(x, y) for x, y in zip(xs, ys))
    start = to_px(xs[0], ys[0])
    end = to_px(xs[-1], ys[-1])
    text = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%.6f" height="%.6f" viewBox="0 0 %.6f %.6f">\n'
        '  <polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="%s"/>\n'
        '  <circle cx="%.6f" cy="%.6f" r="3" fill="#2ca02c"/>\n'
        '  <circle cx="%.6f" cy="%.6f" r="3" fill="#d62728"/>\n'
        "</svg>\n"
        % (args.width, args.height, args.width, args.height, points,
           start[0], start[1], end[0], end[1])
    )
    _emit(text, args.out)
    return 0


def _grid_histogram(grid_n, tol, guess_variant):
    cfg = FitConfig(tol=tol, guess_variant=guess_variant)
    lo, hi = -GRID_ANGLE_LIMIT, GRID_ANGLE_LIMIT
    span = hi - lo
    hist = {}
    for i in range(grid_n):
        phi0 = lo + span * i / (grid_n - 1)
        for j in range(grid_n):
            phi1 = lo + span * j / (grid_n - 1)
            rp = ReducedProblem(r=1.0, varphi=0.0, phi0=phi0, phi1=phi1,
                                delta=phi1 - phi0)
            _, iterations = solve_A(rp, cfg)
            hist[iterations] = hist.get(iterations, 0) + 1
    return hist


def _format_histogram(hist, grid_n, tol, guess_variant, elapsed):
    total = grid_n * grid_n
    lines = [
        "grid %dx%d, tol %g, guess %s" % (grid_n, grid_n, tol, guess_variant),
        "iterations  count  percent",
    ]
    for it in sorted(hist):
        lines.append("%10d  %5d  %6.2f%%" % (it, hist[it], 100.0 * hist[it] / total))
    lines.append("max_iterations %d" % max(hist))
    lines.append("elapsed_s %.3f" % elapsed)
    return "\n".join(lines) + "\n"


def cmd_grid_stats(args):
    if args.grid_n < 2:
        raise ValueError("--grid-n must be at least 2")
    if not (math.isfinite(args.tol) and args.tol > 0):
        raise ValueError("--tol must be a positive finite number")
    t0 = time.perf_counter()
    hist = _grid_histogram(args.grid_n, args.tol, args.guess)
    elapsed = time.perf_counter() - t0
    _emit(_format_histogram(hist, args.grid_n, args.tol, args.guess, elapsed), args.out)
    return 0


def cmd_bench(args):
    cfg = FitConfig()
    lines = ["case        iterations  endpoint_error  within_bounds"]
    all_ok = True
    cases = [(name, data, "arc") for name, data in BENCH_TESTS]
    cases += [("test-7-k%d" % k, bench_near_line_case(k), "regime") for k in range(1, 11)]
    cases += [("test-8-k%d" % k, bench_near_circle_case(k), "regime") for k in range(1, 11)]
    for name, data, kind in cases:
        result = build_clothoid(HermiteData(*data), cfg)
        ok = (result.iterations <= BENCH_MAX_ITER[kind]
              and result.endpoint_error <= BENCH_MAX_ERROR)
        all_ok = all_ok and ok
        lines.append("%-11s %10d  %14.3e  %s"
                     % (name, result.iterations, result.endpoint_error,
                        "yes" if ok else "NO"))
    lines.append("all_within_bounds %s" % ("yes" if all_ok else "NO"))
    text = "\n".join(lines) + "\n"
    if args.full_grid:
        t0 = time.perf_counter()
        hist = _grid_histogram(1024, 1e-10, "quintic")
        elapsed = time.perf_counter() - t0
        text += _format_histogram(hist, 1024, 1e-10, "quintic", elapsed)
    _emit(text, args.out)
    return 0


_COMMANDS = {
    "fit": cmd_fit,
    "sample": cmd_sample,
    "svg": cmd_svg,
    "bench": cmd_bench,
    "grid-stats": cmd_grid_stats,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DegenerateInputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except ExcludedAngleError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    except ConvergenceError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 5
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
