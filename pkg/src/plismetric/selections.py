"""Steiner point and the (lambda, p) selections built from it.

The Steiner point is ``(1/v1) * integral over the unit sphere of s(p, A) p``.
Planar polygons and arc bodies have a piecewise-trigonometric support
function along the circle, so their integral is evaluated in closed form
arc by arc.  Other bodies use quadrature, either on the sphere or (Gauss-type
form) by averaging support gradients over the unit ball.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .bodies import (
    Ball,
    ConvexBody,
    MinkowskiSum,
    Polytope,
    Translate,
    angle_directions,
    exposed_face,
)
from .metrics import sample_directions, sobol_points
from .strongconv import ArcBody2D


class NonSingletonFace(ValueError):
    pass


def _fsum_rows(X: np.ndarray) -> np.ndarray:
    return np.array([math.fsum(col) for col in X.T])


def _arc_integral(c, r, a, b) -> np.ndarray:
    """Integral over theta in [a, b] of ((c, u) + r) u with u = (cos, sin)."""
    cc = 0.5 * (b - a) + 0.25 * (math.sin(2 * b) - math.sin(2 * a))
    ss = 0.5 * (b - a) - 0.25 * (math.sin(2 * b) - math.sin(2 * a))
    sc = -0.25 * (math.cos(2 * b) - math.cos(2 * a))
    return np.array([
        c[0] * cc + c[1] * sc + r * (math.sin(b) - math.sin(a)),
        c[0] * sc + c[1] * ss - r * (math.cos(b) - math.cos(a)),
    ])


def steiner_exact_polygon(P: Polytope) -> np.ndarray:
    """Steiner point of a planar polygon, integrated exactly over its normal fan."""
    if not isinstance(P, Polytope) or P.dim != 2:
        raise ValueError("steiner_exact_polygon needs a planar polytope")
    V = P.vertices
    if len(V) == 1:
        return V[0].copy()
    alpha = P.edge_normal_angles
    # vertex i is exposed between the normals of edges i-1 and i
    lo = np.roll(alpha, 1)
    lo[0] -= 2 * math.pi
    terms = np.array([_arc_integral(v, 0.0, a, b) for v, a, b in zip(V, lo, alpha)])
    return _fsum_rows(terms) / math.pi


def steiner_exact_arcbody(A: ArcBody2D) -> np.ndarray:
    terms = np.array([_arc_integral(c, r, a, b)
                      for c, r, a, b in zip(A.centers, A.radii, A.starts, A.ends)])
    return _fsum_rows(terms) / math.pi


def steiner_quadrature(body: ConvexBody, N: int = 100_000, seed: int = 0) -> np.ndarray:
    """Sphere quadrature of the Steiner integral.

    Uses an equispaced angle grid in the plane and seeded quasi-uniform
    directions above; the sphere area is ``n * v1`` so the estimate is
    ``n * mean(s(p) p)``.
    """
    if N < 8:
        raise ValueError("need at least 8 quadrature nodes")
    n = body.dim
    if n == 2:
        P = angle_directions(2 * math.pi * np.arange(N) / N)
    else:
        P = sample_directions(n, N, seed, "quasi-uniform-sphere")
    s = body.support_many(P)
    return n * _fsum_rows(s[:, None] * P) / len(P)


def _ball_points(n: int, N: int, seed: int) -> np.ndarray:
    u = sobol_points(n, N, np.random.default_rng(seed))
    if n == 2:
        r = np.sqrt(u[:, 0])
        return r[:, None] * angle_directions(2 * math.pi * u[:, 1])
    g = norm.ppf(np.clip(u, 1e-12, 1 - 1e-12))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    radius = np.random.default_rng(seed + 1).random(N) ** (1.0 / n)
    return radius[:, None] * g


def gauss_gradient_steiner(body: ConvexBody, N: int = 100_000, seed: int = 0) -> np.ndarray:
    """Steiner point as the average of support gradients over the unit ball."""
    P = _ball_points(body.dim, N, seed)
    P = P[np.linalg.norm(P, axis=1) > 0]
    grads, _ = body.select_many(P)
    return _fsum_rows(grads) / len(grads)


def steiner_point(body: ConvexBody, N: int = 100_000, seed: int = 0) -> np.ndarray:
    """Steiner point: exact where a closed form exists, quadrature otherwise."""
    if isinstance(body, Polytope) and body.dim == 2:
        return steiner_exact_polygon(body)
    if isinstance(body, ArcBody2D):
        return steiner_exact_arcbody(body)
    if isinstance(body, Ball):
        return body.center.copy()
    if isinstance(body, Translate):
        return steiner_point(body.inner, N, seed) + body.offset
    if isinstance(body, MinkowskiSum):
        return steiner_point(body.left, N, seed) + steiner_point(body.right, N, seed)
    return steiner_quadrature(body, N, seed)


@dataclass(frozen=True)
class SelectionParams:
    lam: float
    p: tuple

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must lie in [0, 1]")
        p = np.asarray(self.p, dtype=float)
        if abs(np.linalg.norm(p) - 1.0) > 1e-12:
            raise ValueError("p must be a unit vector")
        object.__setattr__(self, "p", tuple(p.tolist()))


def selection_value(body: ConvexBody, params: SelectionParams, N: int = 100_000) -> np.ndarray:
    """lambda * a(p) + (1 - lambda) * steiner(body) for bodies with a singleton face at p."""
    face = exposed_face(body, params.p)
    if not face.is_singleton:
        raise NonSingletonFace(f"face at p is {face!r}")
    return params.lam * face.points[0] + (1.0 - params.lam) * steiner_point(body, N)


__all__ = [
    "NonSingletonFace",
    "SelectionParams",
    "gauss_gradient_steiner",
    "selection_value",
    "steiner_exact_arcbody",
    "steiner_exact_polygon",
    "steiner_point",
    "steiner_quadrature",
]
