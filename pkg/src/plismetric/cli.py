"""Command-line front end.

Reports are tab-separated with numbers at 9 significant digits.  Wall time is
written to stderr so that stdout is byte-identical across runs.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path

import numpy as np

from . import suites
from .bodies import Ball, DimensionMismatch, MinkowskiSum, Polytope, Translate
from .io import MalformedBody, dump_body, load_body, load_points
from .metrics import SamplerSpec, has_exact_path, hausdorff, plis
from .selections import gauss_gradient_steiner, steiner_point, steiner_quadrature
from .strongconv import (
    ArcBody2D,
    ModulusProfile,
    PointsTooSpread,
    estimated_profile,
    modulus_estimate,
    quadratic_profile,
    rho_h_bound,
    strong_hull_2d,
)

EXIT_FAIL = 1
EXIT_MALFORMED = 2
EXIT_DIMENSION = 3
EXIT_NO_EXACT = 4
EXIT_TOO_SPREAD = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "PASS" if x else "FAIL"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x) + 0.0:.9g}"
    if isinstance(x, np.ndarray):
        return ",".join(fmt(float(v)) for v in x)
    return str(x)


def line(*cells) -> str:
    return "\t".join(fmt(c) for c in cells)


def digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return h.hexdigest()[:16]


def _header(args, paths) -> list[str]:
    rows = [line("# command", " ".join(args.argv))]
    if paths:
        rows.append(line("# inputs", digest(paths)))
    return rows


def _body(path):
    try:
        return load_body(path)
    except MalformedBody as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc


def cmd_dist(args) -> list[str]:
    A, B = _body(args.a), _body(args.b)
    if A.dim != B.dim:
        raise CliError(f"dimension mismatch: {A.dim} vs {B.dim}", EXIT_DIMENSION)
    metrics = ["hausdorff", "plis"] if args.metric == "both" else [args.metric]
    if args.exact:
        missing = [m for m in metrics if not has_exact_path(A, B, m)]
        if missing:
            raise CliError(f"no exact path for {', '.join(missing)}", EXIT_NO_EXACT)
    sampler = SamplerSpec(count=args.samples, seed=args.seed, refine_rounds=args.refine)
    out = _header(args, [args.a, args.b])
    out.append(line("metric", "value", "kind", "witness", "grid_gap"))
    for m in metrics:
        fn = hausdorff if m == "hausdorff" else plis
        try:
            res = fn(A, B, sampler)
        except DimensionMismatch as exc:
            raise CliError(str(exc), EXIT_DIMENSION) from exc
        out.append(line(m, res.value, res.kind, res.witness, res.grid_gap))
    return out


def _steiner_exact(body) -> bool:
    if isinstance(body, Polytope):
        return body.dim == 2
    if isinstance(body, (ArcBody2D, Ball)):
        return True
    if isinstance(body, Translate):
        return _steiner_exact(body.inner)
    if isinstance(body, MinkowskiSum):
        return _steiner_exact(body.left) and _steiner_exact(body.right)
    return False


def cmd_steiner(args) -> list[str]:
    body = _body(args.body)
    if args.method == "exact":
        if not _steiner_exact(body):
            raise CliError("no closed-form Steiner point for this body", EXIT_NO_EXACT)
        point = steiner_point(body)
    elif args.method == "quadrature":
        point = steiner_quadrature(body, args.samples, args.seed)
    else:
        point = gauss_gradient_steiner(body, args.samples, args.seed)
    return _header(args, [args.body]) + [line("method", "point"), line(args.method, point)]


def cmd_strhull(args) -> list[str]:
    try:
        pts, radii = load_points(args.points)
    except MalformedBody as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    try:
        hull = strong_hull_2d(pts, args.radius, radii)
    except PointsTooSpread as exc:
        raise CliError(str(exc), EXIT_TOO_SPREAD) from exc
    return _emit(args, [args.points], dump_body(hull), f"arcs\t{len(hull.arcs)}")


def _emit(args, paths, payload: str, summary: str) -> list[str]:
    """Write the payload to --output, or to stdout with the report header on stderr."""
    head = _header(args, paths)
    if args.output:
        Path(args.output).write_text(payload)
        return head + [summary, line("written", args.output)]
    for row in head:
        print(row, file=sys.stderr)
    sys.stdout.write(payload)
    return []


def _parse_grid(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",") if x.strip()])
    except ValueError as exc:
        raise CliError(f"bad --eps-grid: {exc}", EXIT_MALFORMED) from exc


def cmd_modulus(args) -> list[str]:
    body = _body(args.body)
    if body.dim != 2:
        raise CliError("modulus estimation needs a planar body", EXIT_DIMENSION)
    if args.eps_grid:
        grid = _parse_grid(args.eps_grid)
        try:
            vals = [modulus_estimate(body, e, args.pairs, args.seed) for e in grid]
        except ValueError as exc:
            raise CliError(str(exc), EXIT_MALFORMED) from exc
        payload = "eps,delta\n" + "".join(f"{e:.9g},{d:.9g}\n" for e, d in zip(grid, vals))
    else:
        profile = estimated_profile(body, args.n, args.pairs, args.seed)
        payload = "eps,delta\n" + "".join(
            f"{e:.9g},{d:.9g}\n" for e, d in zip(profile.eps_grid, profile.delta_values))
    return _emit(args, [args.body], payload, "rows\t" + str(payload.count("\n") - 1))


def cmd_bound(args) -> list[str]:
    paths = []
    if args.profile:
        paths.append(args.profile)
        try:
            profile = ModulusProfile.from_csv(Path(args.profile).read_text(), "file")
        except (OSError, ValueError, IndexError) as exc:
            raise CliError(f"bad profile: {exc}", EXIT_MALFORMED) from exc
    elif args.radius:
        profile = quadratic_profile(args.radius, args.diam)
    else:
        raise CliError("bound needs --profile or --radius", EXIT_MALFORMED)
    try:
        value = rho_h_bound(args.h, profile, args.diam)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    return _header(args, paths) + [line("h", "diam", "terminal_delta", "bound"),
                                   line(args.h, args.diam, profile.terminal, value)]


def cmd_repro(args) -> list[str]:
    if args.suite not in suites.SUITES:
        raise CliError(f"unknown suite {args.suite!r}; choose from {', '.join(suites.SUITES)}",
                       EXIT_MALFORMED)
    if args.suite == "smoothing":
        result, holder = suites.smoothing(seed=args.seed)
        if args.csv:
            Path(args.csv).write_text(holder.to_csv())
    else:
        result = suites.SUITES[args.suite](args.seed)
    out = _header(args, [])
    out.append(line("check", "measured", "threshold", "status"))
    out += [line(*row) for row in result.rows]
    out.append(line("suite", args.suite, "", result.passed))
    args.exit_code = 0 if result.passed else EXIT_FAIL
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plismetric",
                                 description="Face-wise and Hausdorff distances between convex bodies.")
    sub = ap.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", type=int, default=0)
        return p

    p = seeded(sub.add_parser("dist", help="Hausdorff and face-wise distances between two bodies"))
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--metric", choices=["hausdorff", "plis", "both"], default="both")
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--refine", type=int, default=30)
    p.add_argument("--exact", action="store_true", help="fail unless an exact path exists")
    p.set_defaults(func=cmd_dist)

    p = seeded(sub.add_parser("steiner", help="Steiner point of a body"))
    p.add_argument("body")
    p.add_argument("--method", choices=["exact", "quadrature", "gauss"], default="exact")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_steiner)

    p = sub.add_parser("strhull", help="R-strong hull of planar points")
    p.add_argument("points")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_strhull)

    p = seeded(sub.add_parser("modulus", help="estimated modulus of convexity as CSV"))
    p.add_argument("body")
    p.add_argument("--eps-grid", help="comma-separated eps values (default: log grid up to the diameter)")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--pairs", type=int, default=256)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("bound", help="upper bound on the face-wise distance from h and a modulus")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--diam", type=float, required=True)
    p.add_argument("--profile", help="CSV with eps,delta columns")
    p.add_argument("--radius", type=float, help="use delta(s) = s^2/(8R) instead of a profile")
    p.set_defaults(func=cmd_bound)

    p = seeded(sub.add_parser("repro", help="run a reproduction suite"))
    p.add_argument("suite", help=", ".join(suites.SUITES))
    p.add_argument("--csv", help="smoothing suite: write (log_h, log_d) pairs here")
    p.set_defaults(func=cmd_repro)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    args.exit_code = 0
    start = time.perf_counter()
    try:
        rows = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    for row in rows:
        print(row)
    print(f"wall_time\t{time.perf_counter() - start:.3f}s", file=sys.stderr)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
