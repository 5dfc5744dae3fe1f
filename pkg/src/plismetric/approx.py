"""Strongly convex smoothing of parametric maximization and the convergence demos.

Replacing each F(t) by its R-strong hull makes ``argmax over F_eps(t) of (p, x)``
single-valued and square-root continuous in the Hausdorff distance between the
original sets.  The demos at the end build the explicit families used to show
where Hausdorff and the face metric part ways.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .bodies import (
    ConvexBody,
    Polytope,
    angle_directions,
    as_polytope,
    diameter,
    ellipse,
    exposed_face,
    unit,
)
from .metrics import SamplerSpec, face_hausdorff, hausdorff, plis
from .strongconv import (
    ArcBody2D,
    arc_face,
    min_enclosing_ball,
    strong_hull_2d,
    strong_hull_of_body,
)

FAMILY_SAMPLES = 512
MIN_PAIRS = 8
LOG_FLOOR = 1e-10


class DegenerateFamily(ValueError):
    """Too few parameter pairs with positive distances for a regression."""


def _planar_points(body: ConvexBody, count: int = FAMILY_SAMPLES) -> np.ndarray:
    poly = as_polytope(body)
    if poly is not None:
        return poly.vertices
    pts, _ = body.select_many(angle_directions(2 * np.pi * np.arange(count) / count))
    return pts


@dataclass
class ParametricFamily:
    """A map t in [0, 1] -> planar convex body, evaluated lazily and memoized."""

    evaluator: Callable[[float], ConvexBody]
    bound_r: float
    diam_lower: float = 0.0
    grid: np.ndarray = field(default_factory=lambda: np.linspace(0.0, 1.0, 32))
    radius: float | None = None  # set on smoothed families

    def __post_init__(self):
        if self.bound_r <= 0:
            raise ValueError("bound_r must be positive")
        if self.diam_lower < 0:
            raise ValueError("diam_lower must be nonnegative")
        self.grid = np.asarray(self.grid, dtype=float)
        self._cached = lru_cache(maxsize=None)(self.evaluator)

    def __call__(self, t: float) -> ConvexBody:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"parameter t={t} outside [0, 1]")
        return self._cached(float(t))

    def check(self, tol: float = 1e-9) -> None:
        """Verify the enclosing-ball and diameter assumptions on the grid."""
        for t in self.grid:
            body = self(t)
            _, r = min_enclosing_ball(_planar_points(body))
            if r > self.bound_r * (1 + tol):
                raise ValueError(f"F({t:.6g}) needs radius {r:.9g} > bound_r={self.bound_r:.9g}")
            if diameter(body) < self.diam_lower - tol:
                raise ValueError(f"diam F({t:.6g}) below diam_lower={self.diam_lower:.9g}")


def smoothing_radius(r: float, eps: float) -> float:
    return max(r * r / eps, r + 1.0)


def smooth_approx(family: ParametricFamily, eps: float, samples: int = FAMILY_SAMPLES) -> ParametricFamily:
    """The family t -> D_R(F(t)) with R = max(r^2/eps, r + 1)."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    R = smoothing_radius(family.bound_r, eps)
    assert R >= family.bound_r + 1.0

    def hull(t: float) -> ArcBody2D:
        return strong_hull_of_body(family(t), R, samples)

    return ParametricFamily(hull, family.bound_r, family.diam_lower, family.grid, radius=R)


def argmax_selection(smoothed: ParametricFamily, t: float, p) -> np.ndarray:
    """The unique maximizer of (p, x) over F_eps(t)."""
    body = smoothed(t)
    if not isinstance(body, ArcBody2D):
        raise TypeError("argmax_selection needs a smoothed family")
    return arc_face(body, p).points[0]


def proof_constant(r: float, R: float) -> float:
    return max(math.sqrt((R + r) / (R - r)), 1.0 + r * r / (R * (R - r)))


def holder_bound(h: float, r: float, R: float, d: float) -> float:
    """Upper bound on the selection displacement for input Hausdorff distance h."""
    C = proof_constant(r, R)
    delta_terminal = R - math.sqrt(R * R - d * d / 4.0)
    linear = (1.0 + 2.0 * r / delta_terminal) * h if delta_terminal > 0 else math.inf
    return max(C * h + math.sqrt(8.0 * R * C * h), linear)


@dataclass(frozen=True)
class HolderReport:
    exponent: float
    constant: float
    pairs_used: int
    residual: float
    violations: int
    max_bound_ratio: float
    log_h: tuple = ()
    log_d: tuple = ()

    def to_csv(self) -> str:
        rows = ["log_h,log_d"] + [f"{a:.9g},{b:.9g}" for a, b in zip(self.log_h, self.log_d)]
        return "\n".join(rows) + "\n"


def _sample_pairs(n: int, n_pairs: int, seed: int, anchor: int | None):
    if anchor is not None:
        return [(anchor, j) for j in range(n) if j != anchor]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if n_pairs < len(pairs):
        pick = np.random.default_rng(seed).choice(len(pairs), size=n_pairs, replace=False)
        pairs = [pairs[k] for k in sorted(pick)]
    return pairs


def holder_estimate(family: ParametricFamily, eps: float, p, n_pairs: int = 200,
                    seed: int = 0, anchor: float | None = None) -> HolderReport:
    """Log-log regression of selection displacement against Hausdorff distance.

    Pairs are drawn at random from the grid, or, with ``anchor``, all pair the
    anchor parameter with every other grid point (the pointwise exponent there).
    Every pair is also checked against :func:`holder_bound`.
    """
    smoothed = smooth_approx(family, eps)
    R = smoothed.radius
    p = unit(p)
    grid = family.grid
    a_idx = None
    if anchor is not None:
        a_idx = int(np.argmin(np.abs(grid - anchor)))
    hs, ds = [], []
    violations, worst = 0, 0.0
    for i, j in _sample_pairs(len(grid), n_pairs, seed, a_idx):
        t1, t2 = grid[i], grid[j]
        h = hausdorff(family(t1), family(t2)).value
        d = float(np.linalg.norm(argmax_selection(smoothed, t1, p) - argmax_selection(smoothed, t2, p)))
        if h > 0:
            bound = holder_bound(h, family.bound_r, R, family.diam_lower)
            worst = max(worst, d / bound)
            violations += d > bound + 1e-12
        if h > LOG_FLOOR and d > LOG_FLOOR:
            hs.append(h)
            ds.append(d)
    if len(hs) < MIN_PAIRS:
        raise DegenerateFamily(f"only {len(hs)} pairs with positive distances")
    x, y = np.log(hs), np.log(ds)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return HolderReport(float(slope), float(math.exp(intercept)), len(hs), resid,
                        int(violations), float(worst), tuple(x), tuple(y))


# ---------------------------------------------------------------------------
# families


def disk_polygon(center, radius: float, count: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(count) / count
    return np.asarray(center, dtype=float) + radius * angle_directions(theta)


def sharpness_family(R: float = 10.0, base_radius: float = 0.8, count: int = 1024,
                     s_max: float = 0.5, s_min: float = 0.02, n_grid: int = 32) -> ParametricFamily:
    """A sampled disk plus a bump point that leaves its top sideways.

    At t = 0 the bump is the top of the disk.  For t > 0 the bump sits at
    lateral offset s = t * s_max, a height of order s^2 above the disk, and is
    the top point of the R-hull: the selection moves by about s while the sets
    move by about s^2.  Use ``anchor=0`` in :func:`holder_estimate`.
    """
    gap = R - base_radius
    disk = disk_polygon((0.0, -base_radius), base_radius, count)

    def evaluate(t: float) -> Polytope:
        s = t * s_max
        bump = np.array([s, 1.5 * (gap - math.sqrt(gap * gap - s * s))])
        return Polytope(np.vstack([disk, bump]))

    grid = np.concatenate([[0.0], np.geomspace(s_min / s_max, 1.0, n_grid - 1)])
    return ParametricFamily(evaluate, bound_r=1.0, diam_lower=2 * base_radius, grid=grid)


def translation_family(body: ConvexBody, v, bound_r: float, n_grid: int = 32) -> ParametricFamily:
    v = np.asarray(v, dtype=float)
    poly = as_polytope(body)
    pts = poly.vertices if poly is not None else _planar_points(body)
    return ParametricFamily(lambda t: Polytope(pts + t * v), bound_r,
                            diameter(Polytope(pts)), np.linspace(0.0, 1.0, n_grid))


# ---------------------------------------------------------------------------
# demos


@dataclass(frozen=True)
class DemoReport:
    name: str
    columns: tuple
    rows: tuple
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def ellipse_face_point(k: float, p) -> np.ndarray:
    """Exposed point of {x1^2 + k^2 x2^2 <= 1} in direction p."""
    p = np.asarray(p, dtype=float)
    q = np.array([p[0], p[1] / k])
    return np.array([q[0], q[1] / k]) / np.linalg.norm(q)


def ellipse_divergence_demo(k_max: int = 64, c: float = 0.5) -> DemoReport:
    """Ellipses collapse onto a segment in h while staying rho-separated."""
    if k_max < 4:
        raise ValueError("k_max must be at least 4")
    segment = Polytope([[-1.0, 0.0], [1.0, 0.0]])
    rows = []
    for k in range(2, k_max + 1, 2):
        h = hausdorff(ellipse(k), segment).value
        p = np.array([c / k, math.sqrt(1.0 - (c / k) ** 2)])
        gap = float(np.linalg.norm(ellipse_face_point(k, p) - ellipse_face_point(2 * k, p)))
        rows.append((k, h, 1.0 / k, gap))
    hs = [r[1] for r in rows]
    checks = {
        "h_equals_inverse_k": all(abs(r[1] - r[2]) <= 1e-6 for r in rows),
        "h_decreasing": all(a > b for a, b in zip(hs, hs[1:])),
        "rho_lower_bound_ge_0.2": min(r[3] for r in rows) >= 0.2,
    }
    return DemoReport("ellipses", ("k", "hausdorff", "one_over_k", "rho_lower"), tuple(rows), checks)


def _quartic_curve_radius(phi: float) -> float:
    s8 = math.sin(phi) ** 8
    if s8 == 0.0:
        return 1.0
    return brentq(lambda t: t * t + s8 * t ** 8 - 1.0, 0.0, 1.0, xtol=1e-15)


def sup_gap_cones(m: int = 360):
    """Cones over the unit circle at (1, 0) and over a flattened curve, sharing apex (0,0,1)."""
    phi = 2 * np.pi * np.arange(m) / m
    apex = np.array([[0.0, 0.0, 1.0]])
    circle = np.column_stack([1 + np.cos(phi), np.sin(phi), np.zeros(m)])
    rad = np.array([_quartic_curve_radius(f) for f in phi])
    curve = np.column_stack([1 + rad * np.cos(phi), rad * np.sin(phi), np.zeros(m)])
    return Polytope(np.vstack([circle, apex])), Polytope(np.vstack([curve, apex])), phi


def sup_gap_demo(m: int = 360, start_deg: float = 45.0, stop_deg: float = 12.0) -> DemoReport:
    """Face distances along directions whose faces on the first cone are apex-to-rim segments.

    The directions approach (1, 0, 2)/sqrt(5), where the limiting value sqrt(5) is
    never attained.  The sequence stops at ``stop_deg`` from the limit: closer in,
    the x2^8 flattening is below the face tolerance of the discretized curve.
    """
    if m < 36:
        raise ValueError("m must be at least 36")
    A, B, phi = sup_gap_cones(m)
    apex = np.array([0.0, 0.0, 1.0])
    target = math.sqrt(5.0)
    step = 360.0 / m
    js = [j for j in range(m) if stop_deg - 1e-9 <= (m - j) * step <= start_deg + 1e-9]
    rows = []
    for j in js:
        f = phi[j]
        a = np.array([1 + math.cos(f), math.sin(f), 0.0])
        tangent = np.array([-math.sin(f), math.cos(f), 0.0])
        n = np.cross(tangent, a - apex)
        n = -n if n[0] < 0 else n
        p = unit(n)
        value = face_hausdorff(exposed_face(A, p), exposed_face(B, p))
        rows.append((math.degrees(f) - 360.0, value, float(np.linalg.norm(p - np.array([1, 0, 2]) / target))))
    vals = [r[1] for r in rows]
    checks = {
        "increasing": all(b > a for a, b in zip(vals, vals[1:])),
        "below_sqrt5": all(v < target for v in vals),
        "final_within_0.05": abs(vals[-1] - target) <= 0.05,
    }
    return DemoReport("example-2.1", ("phi_deg", "face_hausdorff", "dist_to_limit_direction"),
                      tuple(rows), checks)


def cauchy_demo(n_steps: int = 6, R: float = 2.0, sampler: SamplerSpec | None = None) -> DemoReport:
    """Lenses over {0, (1 + 1/k, 0)} form a rho-Cauchy sequence converging to the limit lens."""
    if n_steps < 3:
        raise ValueError("n_steps must be at least 3")
    sampler = sampler or SamplerSpec(count=8192)

    def lens(x: float) -> ArcBody2D:
        return strong_hull_2d([[0.0, 0.0], [x, 0.0]], R)

    seq = [lens(1.0 + 1.0 / k) for k in range(1, n_steps + 1)]
    limit = lens(1.0)
    to_limit = [plis(A, limit, sampler).value for A in seq]
    rows = []
    cauchy_ok = True
    for i in range(n_steps):
        for j in range(i + 1, n_steps):
            d = plis(seq[i], seq[j], sampler).value
            cauchy_ok &= d <= to_limit[i] + to_limit[j] + 1e-9
            rows.append((i + 1, j + 1, d, to_limit[i], to_limit[j]))
    checks = {
        "limit_distances_decreasing": all(b < a for a, b in zip(to_limit, to_limit[1:])),
        "pairwise_bounded_by_tails": bool(cauchy_ok),
        "last_below_first_over_k": to_limit[-1] <= to_limit[0] * 2.0 / n_steps,
    }
    return DemoReport("cauchy", ("k", "m", "rho_km", "rho_k_limit", "rho_m_limit"), tuple(rows), checks)


__all__ = [
    "DegenerateFamily",
    "DemoReport",
    "HolderReport",
    "ParametricFamily",
    "argmax_selection",
    "cauchy_demo",
    "disk_polygon",
    "ellipse_divergence_demo",
    "ellipse_face_point",
    "holder_bound",
    "holder_estimate",
    "proof_constant",
    "sharpness_family",
    "smooth_approx",
    "smoothing_radius",
    "sup_gap_cones",
    "sup_gap_demo",
    "translation_family",
]
