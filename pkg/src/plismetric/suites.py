"""Reproduction experiments behind ``plismetric repro``.

Each suite returns a :class:`SuiteResult` whose rows are
``(check, measured, threshold, passed)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import (
    argmax_selection,
    ellipse_divergence_demo,
    holder_estimate,
    sharpness_family,
    smooth_approx,
    sup_gap_demo,
)
from .bodies import contains, diameter, exposed_face, random_polygon
from .metrics import SamplerSpec, hausdorff, plis
from .selections import steiner_exact_polygon
from .strongconv import quadratic_profile, rho_h_bound, sharp_bound_pair

STEINER_HAUSDORFF_CONSTANT = 4.0 / math.pi


@dataclass(frozen=True)
class SuiteResult:
    name: str
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r[3] for r in self.rows)


def example_27(R: float = 1.0, eps_values=(0.01, 0.05, 0.1)) -> SuiteResult:
    rows = []
    sampler = SamplerSpec(count=1 << 16)
    for eps in eps_values:
        A, B = sharp_bound_pair(R, eps)
        h = hausdorff(A, B, sampler).value
        rho = plis(A, B, sampler).value
        floor = math.sqrt(2 * R * eps - eps * eps)
        diam = diameter(A)
        bound = rho_h_bound(h, quadratic_profile(R + eps, diam), diam)
        rows += [
            (f"h(eps={eps:g})", h, eps, abs(h - eps) <= 1e-6),
            (f"rho(eps={eps:g}) >= sqrt(2R eps - eps^2)", rho, floor, rho >= floor - 1e-6),
            (f"bound(eps={eps:g}) >= rho", bound, rho, bound >= rho),
        ]
    return SuiteResult("example-2.7", tuple(rows))


def ellipses(k_max: int = 64) -> SuiteResult:
    demo = ellipse_divergence_demo(k_max)
    worst_h = max(abs(r[1] - r[2]) for r in demo.rows)
    min_rho = min(r[3] for r in demo.rows)
    rows = (
        ("max |h(A_k, segment) - 1/k|", worst_h, 1e-6, worst_h <= 1e-6),
        ("h decreasing in k", float(demo.checks["h_decreasing"]), 1.0, demo.checks["h_decreasing"]),
        ("min rho(A_k, A_2k) lower bound", min_rho, 0.2, min_rho >= 0.2),
    )
    return SuiteResult("ellipses", rows)


def example_21(m: int = 360) -> SuiteResult:
    demo = sup_gap_demo(m)
    vals = [r[1] for r in demo.rows]
    target = math.sqrt(5.0)
    rows = (
        ("values increasing", float(demo.checks["increasing"]), 1.0, demo.checks["increasing"]),
        ("max value < sqrt(5)", max(vals), target, max(vals) < target),
        ("sqrt(5) - final value", target - vals[-1], 0.05, target - vals[-1] <= 0.05),
    )
    return SuiteResult("example-2.1", rows)


def steiner_lipschitz(n_pairs: int = 500, seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed)
    rho_viol = h_viol = member_viol = 0
    worst_rho = worst_h = -math.inf
    for _ in range(n_pairs):
        A, B = random_polygon(rng), random_polygon(rng)
        sa, sb = steiner_exact_polygon(A), steiner_exact_polygon(B)
        d = float(np.linalg.norm(sa - sb))
        rho = plis(A, B).value
        h = hausdorff(A, B).value
        worst_rho = max(worst_rho, d - rho)
        worst_h = max(worst_h, d - STEINER_HAUSDORFF_CONSTANT * h)
        rho_viol += d > rho + 1e-9
        h_viol += d > STEINER_HAUSDORFF_CONSTANT * h + 1e-9
        member_viol += (not contains(A, sa)) + (not contains(B, sb))
    rows = (
        ("violations of |s(A)-s(B)| <= rho + 1e-9", rho_viol, 0, rho_viol == 0),
        ("violations of |s(A)-s(B)| <= (4/pi) h + 1e-9", h_viol, 0, h_viol == 0),
        ("Steiner points outside their body", member_viol, 0, member_viol == 0),
        ("max |s(A)-s(B)| - rho", worst_rho, 0.0, worst_rho <= 1e-9),
        ("max |s(A)-s(B)| - (4/pi) h", worst_h, 0.0, worst_h <= 1e-9),
    )
    return SuiteResult("steiner-lipschitz", rows)


def smoothing(eps: float = 0.1, seed: int = 0, n_pairs: int = 60,
              n_dirs: int = 64) -> tuple[SuiteResult, object]:
    """Containment, closeness, uniqueness and the square-root rate of the smoothed argmax."""
    family = sharpness_family()
    family.check()
    smoothed = smooth_approx(family, eps)
    R = smoothed.radius
    r = family.bound_r
    expected_R = max(r * r / eps, r + 1.0)
    worst_h, outside, nonsingle = 0.0, 0, 0
    dirs = np.column_stack([np.cos(np.linspace(0, 2 * np.pi, n_dirs, endpoint=False)),
                            np.sin(np.linspace(0, 2 * np.pi, n_dirs, endpoint=False))])
    for t in family.grid:
        F, S = family(t), smoothed(t)
        outside += sum(not contains(S, v) for v in F.vertices)
        worst_h = max(worst_h, hausdorff(F, S).value)
        nonsingle += sum(not exposed_face(S, p).is_singleton for p in dirs)
        argmax_selection(smoothed, t, (0.0, 1.0))
    anchored = holder_estimate(family, eps, (0.0, 1.0), anchor=0.0)
    spread = holder_estimate(family, eps, (0.0, 1.0), n_pairs=n_pairs, seed=seed)
    violations = anchored.violations + spread.violations
    rows = (
        ("smoothing radius R", R, expected_R, R == expected_R),
        ("vertices of F(t) outside F_eps(t)", outside, 0, outside == 0),
        ("max h(F(t), F_eps(t))", worst_h, eps, worst_h <= eps),
        ("non-singleton argmax faces", nonsingle, 0, nonsingle == 0),
        ("Holder exponent at t=0", anchored.exponent, 0.5, 0.45 <= anchored.exponent <= 0.6),
        ("proof-constant violations", violations, 0, violations == 0),
    )
    return SuiteResult("smoothing", rows), anchored


SUITES = {
    "example-2.7": lambda seed: example_27(),
    "ellipses": lambda seed: ellipses(),
    "example-2.1": lambda seed: example_21(),
    "steiner-lipschitz": lambda seed: steiner_lipschitz(seed=seed),
    "smoothing": lambda seed: smoothing(seed=seed)[0],
}
