"""Strongly convex planar bodies: ball intersections, R-hulls and moduli.

An :class:`ArcBody2D` is a planar convex body whose boundary is a closed chain
of circular arcs.  Each arc is stored by the interval of outward normal
angles it carries, so the support function is piecewise
``(p, center) + radius`` and the exposed face in direction ``p`` is always the
single point ``center + radius * p``.  Corners are arcs of radius zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .bodies import (
    Ball,
    ConvexBody,
    FacePoint,
    angle_directions,
    as_ball,
    as_polytope,
    convex_hull_2d,
    diameter,
    probe_directions,
    unit,
)

TWO_PI = 2.0 * math.pi
CHAIN_TOL = 1e-9
MEB_TOL = 1e-12


class EmptyIntersection(ValueError):
    pass


class PointsTooSpread(ValueError):
    pass


class MalformedArcBody(ValueError):
    pass


@dataclass(frozen=True)
class Arc2D:
    center: tuple
    radius: float
    angle_start: float
    angle_end: float

    @property
    def width(self) -> float:
        return self.angle_end - self.angle_start

    def point_at(self, theta: float) -> np.ndarray:
        return np.asarray(self.center) + self.radius * np.array([math.cos(theta), math.sin(theta)])


class ArcBody2D(ConvexBody):
    """Planar body bounded by circular arcs with radii at most ``radius``.

    ``arcs`` must partition the circle of normal directions in
    counter-clockwise order, and consecutive arcs must meet in a point.
    """

    dim = 2

    def __init__(self, arcs, radius: float):
        arcs = list(arcs)
        if not arcs:
            raise MalformedArcBody("arc body needs at least one arc")
        self.radius = float(radius)
        if not self.radius > 0:
            raise MalformedArcBody("arc body radius must be positive")
        centers = np.array([a.center for a in arcs], dtype=float)
        radii = np.array([a.radius for a in arcs], dtype=float)
        starts = np.array([a.angle_start for a in arcs], dtype=float)
        ends = np.array([a.angle_end for a in arcs], dtype=float)
        if np.any(radii < 0) or np.any(radii > self.radius * (1 + 1e-12)):
            raise MalformedArcBody("arc radii must lie in [0, radius]")
        if np.any(ends - starts < 0) or np.any(ends - starts > TWO_PI + 1e-12):
            raise MalformedArcBody("arc normal interval width out of range")
        shift = math.floor(starts[0] / TWO_PI) * TWO_PI
        starts, ends = starts - shift, ends - shift
        for i in range(len(arcs)):
            j = (i + 1) % len(arcs)
            target = starts[j] + (TWO_PI if j == 0 else 0.0)
            if abs(ends[i] - target) > 1e-9:
                raise MalformedArcBody("gap or overlap in normal intervals")
            pe = centers[i] + radii[i] * np.array([math.cos(ends[i]), math.sin(ends[i])])
            ps = centers[j] + radii[j] * np.array([math.cos(target), math.sin(target)])
            scale = 1.0 + float(np.abs(pe).max())
            if np.linalg.norm(pe - ps) > CHAIN_TOL * scale * 10:
                raise MalformedArcBody("consecutive arcs do not meet")
        self.centers = centers
        self.radii = radii
        self.starts = starts
        self.ends = ends
        self.arcs = [Arc2D(tuple(c), float(r), float(a), float(b))
                     for c, r, a, b in zip(centers, radii, starts, ends)]

    def __repr__(self):
        return f"ArcBody2D({len(self.arcs)} arcs, R={self.radius})"

    @property
    def is_point(self) -> bool:
        return len(self.arcs) == 1 and self.radii[0] == 0.0

    def arc_index(self, theta) -> np.ndarray:
        t = self.starts[0] + np.mod(np.asarray(theta, dtype=float) - self.starts[0], TWO_PI)
        return np.clip(np.searchsorted(self.starts, t, side="right") - 1, 0, len(self.starts) - 1)

    def support_many(self, P):
        P = np.asarray(P, dtype=float)
        k = self.arc_index(np.arctan2(P[:, 1], P[:, 0]))
        return np.einsum("ij,ij->i", P, self.centers[k]) + self.radii[k] * np.linalg.norm(P, axis=1)

    def select_many(self, P, tol=None):
        P = np.asarray(P, dtype=float)
        k = self.arc_index(np.arctan2(P[:, 1], P[:, 0]))
        U = P / np.linalg.norm(P, axis=1, keepdims=True)
        return self.centers[k] + self.radii[k, None] * U, np.ones(len(P), dtype=bool)

    def face(self, q, tol=None):
        q = unit(q)
        k = int(self.arc_index(math.atan2(q[1], q[0])))
        return FacePoint(self.centers[k] + self.radii[k] * q)

    def contains_point(self, x, tol):
        # max over each arc of (u, x - c) - r, in closed form
        y = x - self.centers
        ny = np.linalg.norm(y, axis=1)
        phi = np.arctan2(y[:, 1], y[:, 0])
        inside = np.mod(phi - self.starts, TWO_PI) <= (self.ends - self.starts)
        best = np.where(inside, ny, np.maximum(ny * np.cos(phi - self.starts),
                                               ny * np.cos(phi - self.ends)))
        return bool(np.all(best - self.radii <= tol))

    def vertices(self) -> np.ndarray:
        """Arc start points in boundary order (corners included)."""
        return self.centers + self.radii[:, None] * angle_directions(self.starts)

    def boundary_points(self, count: int = 1024) -> np.ndarray:
        theta = self.starts[0] + TWO_PI * np.arange(count) / count
        pts, _ = self.select_many(angle_directions(theta))
        return np.vstack([pts, self.vertices()])


def point_body(x, radius: float = 1.0) -> ArcBody2D:
    x = tuple(float(v) for v in x)
    return ArcBody2D([Arc2D(x, 0.0, 0.0, TWO_PI)], radius)


def disk_body(center, r: float, radius: float | None = None) -> ArcBody2D:
    c = tuple(float(v) for v in center)
    return ArcBody2D([Arc2D(c, float(r), 0.0, TWO_PI)], radius or max(r, 1e-300))


def arc_support(body: ArcBody2D, p) -> float:
    p = np.asarray(p, dtype=float)
    return float(body.support_many(p[None, :])[0])


def arc_face(body: ArcBody2D, p) -> FacePoint:
    return body.face(p)


def arc_minkowski_sum(A: ArcBody2D, B) -> ArcBody2D:
    """Exact Minkowski sum of arc bodies (or an arc body and a ball)."""
    if isinstance(B, Ball):
        B = disk_body(B.center, B.radius)
    breaks = np.unique(np.mod(np.concatenate([A.starts, B.starts]), TWO_PI))
    nxt = np.roll(breaks, -1)
    nxt[-1] += TWO_PI
    mids = 0.5 * (breaks + nxt)
    ia, ib = A.arc_index(mids), B.arc_index(mids)
    arcs = [Arc2D(tuple(A.centers[i] + B.centers[j]), float(A.radii[i] + B.radii[j]), float(s), float(e))
            for i, j, s, e in zip(ia, ib, breaks, nxt)]
    return ArcBody2D(_merge_arcs(arcs), A.radius + B.radius)


def _merge_arcs(arcs):
    out = [arcs[0]]
    for a in arcs[1:]:
        last = out[-1]
        if last.radius == a.radius and np.allclose(last.center, a.center, atol=1e-15, rtol=0):
            out[-1] = Arc2D(last.center, last.radius, last.angle_start, a.angle_end)
        else:
            out.append(a)
    if len(out) > 1:
        first, last = out[0], out[-1]
        if first.radius == last.radius and np.allclose(first.center, last.center, atol=1e-15, rtol=0):
            out[0] = Arc2D(last.center, last.radius, last.angle_start - TWO_PI, first.angle_end)
            out.pop()
    return out


# ---------------------------------------------------------------------------
# ball intersections


def _wrap(x):
    return np.mod(x + math.pi, TWO_PI) - math.pi


def _intersect_interval_sets(S, T):
    out = []
    for a1, b1 in S:
        for a2, b2 in T:
            for k in (-1, 0, 1):
                lo, hi = max(a1, a2 + k * TWO_PI), min(b1, b2 + k * TWO_PI)
                if hi > lo:
                    out.append((lo, hi))
    return out


def _surviving_arcs_general(centers, radii):
    """Per-circle arcs of the boundary of the disk intersection (any radii)."""
    m = len(centers)
    result = []
    for i in range(m):
        S = [(0.0, TWO_PI)]
        for j in range(m):
            if j == i:
                continue
            d = centers[j] - centers[i]
            D = float(np.linalg.norm(d))
            ri, rj = radii[i], radii[j]
            if D + ri <= rj:
                continue
            if D > ri + rj + 1e-12 * (1 + D):
                raise EmptyIntersection("two disks are disjoint")
            if D + rj <= ri:
                S = []
                break
            kappa = (ri * ri + D * D - rj * rj) / (2.0 * ri * D)
            w = math.acos(min(1.0, max(-1.0, kappa)))
            phi = math.atan2(d[1], d[0])
            S = _intersect_interval_sets(S, [(phi - w, phi + w)])
            if not S:
                break
        for lo, hi in S:
            result.append((i, lo, hi))
    return result


def _surviving_arcs_equal(centers, rho):
    """Vectorised version for disks of one common radius."""
    m = len(centers)
    if m == 1:
        return [(0, 0.0, TWO_PI)]
    d = centers[None, :, :] - centers[:, None, :]
    D = np.linalg.norm(d, axis=2)
    if D.max() > 2.0 * rho * (1 + 1e-12):
        raise EmptyIntersection("centres farther apart than twice the radius")
    phi = np.arctan2(d[..., 1], d[..., 0])
    w = np.arccos(np.clip(D / (2.0 * rho), -1.0, 1.0))
    result = []
    for i in range(m):
        mask = np.arange(m) != i
        ph, ww = phi[i, mask], w[i, mask]
        ref = ph[0]
        rel = _wrap(ph - ref)
        lo, hi = np.max(rel - ww), np.min(rel + ww)
        if hi > lo:
            result.append((i, ref + lo, ref + hi))
    return result


def _disk_intersection(centers, radii, body_radius: float) -> ArcBody2D:
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    radii = np.asarray(radii, dtype=float).reshape(-1)
    if len(centers) == 0:
        raise ValueError("need at least one disk")
    # identical disks contribute once
    key = np.round(np.column_stack([centers, radii]), 14)
    _, first = np.unique(key, axis=0, return_index=True)
    first = np.sort(first)
    centers, radii = centers[first], radii[first]
    if np.all(radii == radii[0]):
        raw = _surviving_arcs_equal(centers, radii[0])
    else:
        raw = _surviving_arcs_general(centers, radii)
    tol = 1e-13
    raw = [(i, lo, hi) for i, lo, hi in raw if hi - lo > tol]
    if not raw:
        raise EmptyIntersection("disk intersection is empty or a single point")
    if len(raw) == 1 and raw[0][2] - raw[0][1] >= TWO_PI - tol:
        i = raw[0][0]
        return ArcBody2D([Arc2D(tuple(centers[i]), float(radii[i]), 0.0, TWO_PI)], body_radius)
    raw = sorted(((i, lo % TWO_PI, lo % TWO_PI + (hi - lo)) for i, lo, hi in raw), key=lambda t: t[1])
    arcs = []
    for k, (i, lo, hi) in enumerate(raw):
        arcs.append(Arc2D(tuple(centers[i]), float(radii[i]), lo, hi))
        j, lo2, _ = raw[(k + 1) % len(raw)]
        if k + 1 == len(raw):
            lo2 += TWO_PI
        if lo2 - hi > tol:
            corner = centers[i] + radii[i] * np.array([math.cos(hi), math.sin(hi)])
            arcs.append(Arc2D(tuple(corner), 0.0, hi, lo2))
        else:
            # a gap or overlap of a few ulps: snap this arc to the next start
            arcs[-1] = Arc2D(tuple(centers[i]), float(radii[i]), lo, lo2)
    return ArcBody2D(arcs, body_radius)


def ball_intersection_2d(centers, R: float) -> ArcBody2D:
    """The intersection of the closed disks of radius ``R`` at ``centers``."""
    if R <= 0:
        raise ValueError("radius must be positive")
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    return _disk_intersection(centers, np.full(len(centers), float(R)), float(R))


# ---------------------------------------------------------------------------
# minimal enclosing ball


def _circumcircle(a, b, c):
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if abs(d) < 1e-300:
        pts = np.array([a, b, c])
        i, j = max(((0, 1), (0, 2), (1, 2)), key=lambda ij: np.linalg.norm(pts[ij[0]] - pts[ij[1]]))
        ctr = 0.5 * (pts[i] + pts[j])
        return ctr, float(np.linalg.norm(pts[i] - ctr))
    aa, bb, cc = a @ a, b @ b, c @ c
    ux = (aa * (b[1] - c[1]) + bb * (c[1] - a[1]) + cc * (a[1] - b[1])) / d
    uy = (aa * (c[0] - b[0]) + bb * (a[0] - c[0]) + cc * (b[0] - a[0])) / d
    ctr = np.array([ux, uy])
    return ctr, float(max(np.linalg.norm(a - ctr), np.linalg.norm(b - ctr), np.linalg.norm(c - ctr)))


def min_enclosing_ball(points, seed: int = 0):
    """Smallest enclosing circle of planar points (incremental Welzl)."""
    P = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    P = P[np.random.default_rng(seed).permutation(len(P))]

    def out(x, c, r):
        return np.linalg.norm(x - c) > r * (1 + 1e-14) + 1e-15

    c, r = P[0].copy(), 0.0
    for i in range(1, len(P)):
        if out(P[i], c, r):
            c, r = P[i].copy(), 0.0
            for j in range(i):
                if out(P[j], c, r):
                    c = 0.5 * (P[i] + P[j])
                    r = float(np.linalg.norm(P[i] - c))
                    for k in range(j):
                        if out(P[k], c, r):
                            c, r = _circumcircle(P[i], P[j], P[k])
    return c, r


# ---------------------------------------------------------------------------
# strong hulls


def strong_hull_2d(points, R: float, radii=None) -> ArcBody2D:
    """D_R of a finite union of points (and optionally disks of radius < R).

    The admissible centres C (centres of R-disks containing the input) form a
    disk intersection; the hull is the intersection of the R-disks centred in
    C.  In the plane its boundary arcs sit over the corners of C and its
    corners over the arcs of C, with normal intervals turned by pi.
    """
    if R <= 0:
        raise ValueError("radius must be positive")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("need at least one point")
    if radii is None:
        pts = convex_hull_2d(pts)
        radii = np.zeros(len(pts))
        _, meb = min_enclosing_ball(pts)
        if meb > R * (1 + MEB_TOL):
            raise PointsTooSpread(f"minimal enclosing radius {meb:.9g} exceeds R={R:.9g}")
        if len(pts) == 1:
            return point_body(pts[0], R)
    radii = np.asarray(radii, dtype=float).reshape(-1)
    if np.any(radii < 0) or np.any(radii >= R):
        raise ValueError("input disk radii must lie in [0, R)")
    try:
        C = _disk_intersection(pts, R - radii, R)
    except EmptyIntersection as exc:
        raise PointsTooSpread(str(exc)) from exc
    arcs = [Arc2D(a.center, float(R - a.radius), a.angle_start + math.pi, a.angle_end + math.pi)
            for a in C.arcs]
    if len(arcs) == 1:
        a = arcs[0]
        return ArcBody2D([Arc2D(a.center, a.radius, 0.0, TWO_PI)], R)
    return ArcBody2D(_rotate_to_normal_order(arcs), R)


def _rotate_to_normal_order(arcs):
    out = []
    for a in arcs:
        s = a.angle_start % TWO_PI
        out.append(Arc2D(a.center, a.radius, s, s + a.width))
    out.sort(key=lambda a: a.angle_start)
    return out


def strong_hull_of_body(body: ConvexBody, R: float, samples: int = 512) -> ArcBody2D:
    """D_R of a planar body: exact for polygons, balls and R'-arc bodies with R' <= R;
    otherwise the hull of ``samples`` exposed points."""
    if isinstance(body, ArcBody2D) and body.radius <= R:
        return body
    ball = as_ball(body)
    if ball is not None and ball.radius <= R:
        return disk_body(ball.center, ball.radius, R) if ball.radius > 0 else point_body(ball.center, R)
    poly = as_polytope(body)
    if poly is not None:
        return strong_hull_2d(poly.vertices, R)
    theta = TWO_PI * np.arange(samples) / samples
    pts, _ = body.select_many(angle_directions(theta))
    return strong_hull_2d(pts, R)


def sharp_bound_pair(R: float, eps: float):
    """The planar pair with h = eps whose top faces sit sqrt(2 R eps - eps^2) apart.

    A = D_R(B_eps(0) u {a}) + B_R(0) and B = D_R(B_eps(a) u {0}) + B_R(0) with
    a = (sqrt(2 R eps - eps^2), 0).
    """
    if not 0 < eps < R:
        raise ValueError("need 0 < eps < R")
    a = np.array([math.sqrt(2 * R * eps - eps * eps), 0.0])
    o = np.zeros(2)
    big = Ball(o, R)
    A = arc_minkowski_sum(strong_hull_2d([o, a], R, radii=[eps, 0.0]), big)
    B = arc_minkowski_sum(strong_hull_2d([a, o], R, radii=[eps, 0.0]), big)
    return A, B


# ---------------------------------------------------------------------------
# moduli of convexity


def modulus_ball_bound(R: float, eps: float) -> float:
    """R * delta_H(eps / R) = R - sqrt(R^2 - eps^2 / 4)."""
    if R <= 0:
        raise ValueError("radius must be positive")
    if not 0.0 <= eps <= 2.0 * R:
        raise ValueError("eps must lie in [0, 2R]")
    return R - math.sqrt(max(R * R - eps * eps / 4.0, 0.0))


@dataclass(frozen=True)
class ModulusProfile:
    eps_grid: np.ndarray
    delta_values: np.ndarray
    source: str = "closed_form"

    def __post_init__(self):
        e = np.asarray(self.eps_grid, dtype=float)
        d = np.asarray(self.delta_values, dtype=float)
        if e.size == 0 or e.shape != d.shape:
            raise ValueError("empty or ragged modulus profile")
        if np.any(np.diff(e) <= 0) or e[0] <= 0:
            raise ValueError("eps grid must be positive and increasing")
        if np.any(np.diff(d) < -1e-15):
            raise ValueError("modulus profile must be nondecreasing")
        if np.any(d < 0):
            raise ValueError("modulus values must be nonnegative")
        object.__setattr__(self, "eps_grid", e)
        object.__setattr__(self, "delta_values", d)

    @property
    def terminal(self) -> float:
        return float(self.delta_values[-1])

    def _loglog(self) -> bool:
        return bool(np.all(self.delta_values > 0))

    def value(self, t: float) -> float:
        e, d = self.eps_grid, self.delta_values
        if t <= 0:
            return 0.0
        if t >= e[-1]:
            return float(d[-1])
        if not self._loglog():
            return float(np.interp(t, np.concatenate([[0.0], e]), np.concatenate([[0.0], d])))
        le, ld = np.log(e), np.log(d)
        if t < e[0]:
            slope = (ld[1] - ld[0]) / (le[1] - le[0]) if len(e) > 1 else 2.0
            return float(np.exp(ld[0] + slope * (math.log(t) - le[0])))
        return float(np.exp(np.interp(math.log(t), le, ld)))

    def inverse(self, h: float) -> float:
        """Smallest eps with delta(eps) >= h, by bisection on the interpolant."""
        if h <= 0:
            return 0.0
        if h >= self.terminal:
            return float(self.eps_grid[-1])
        lo = float(self.eps_grid[0])
        while self.value(lo) > h:
            lo *= 0.5
        return float(brentq(lambda t: self.value(t) - h, lo, float(self.eps_grid[-1]),
                            xtol=1e-15, rtol=1e-14))

    def to_csv(self) -> str:
        lines = ["eps,delta"]
        lines += [f"{e:.17g},{d:.17g}" for e, d in zip(self.eps_grid, self.delta_values)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, source: str = "closed_form") -> "ModulusProfile":
        rows = [r.strip() for r in text.strip().splitlines() if r.strip()]
        if rows and not rows[0][0].isdigit() and rows[0][0] not in "-.":
            rows = rows[1:]
        vals = np.array([[float(x) for x in r.split(",")[:2]] for r in rows]) if rows else np.empty((0, 2))
        return cls(vals[:, 0], vals[:, 1], source)


def eps_grid(diam: float, n: int = 64) -> np.ndarray:
    """Log-spaced grid ending at diam * (1 - 1e-6)."""
    return np.geomspace(diam * 1e-3, diam * (1 - 1e-6), n)


def profile_from_function(f, diam: float, n: int = 64, source: str = "closed_form") -> ModulusProfile:
    g = eps_grid(diam, n)
    return ModulusProfile(g, np.array([f(t) for t in g]), source)


def ball_bound_profile(R: float, diam: float | None = None, n: int = 64) -> ModulusProfile:
    diam = 2.0 * R if diam is None else diam
    return profile_from_function(lambda t: modulus_ball_bound(R, min(t, 2 * R)), diam, n)


def quadratic_profile(R: float, diam: float, n: int = 64) -> ModulusProfile:
    """delta(s) = s^2 / (8 R), the lower bound for intersections of R-balls."""
    return profile_from_function(lambda t: t * t / (8.0 * R), diam, n)


def _boundary_polyline(body: ConvexBody, count: int = 8192) -> np.ndarray:
    poly = as_polytope(body)
    if poly is not None:
        return poly.vertices
    theta = TWO_PI * np.arange(count) / count
    pts, _ = body.select_many(angle_directions(theta))
    return pts


def _extra_normals(body: ConvexBody) -> np.ndarray:
    poly = as_polytope(body)
    if poly is not None and len(poly.vertices) > 1:
        return angle_directions(poly.edge_normal_angles)
    return np.empty((0, 2))


def modulus_estimate(body: ConvexBody, eps: float, n_pairs: int = 256, seed: int = 0,
                     n_dirs: int = 4096) -> float:
    """Sample estimate of the modulus of convexity at ``eps`` (planar bodies).

    Boundary point pairs at distance ``eps`` are found by walking the boundary
    polyline; the depth of each chord midpoint is ``min_p s(p) - (p, m)`` over a
    dense direction set.  The reported minimum over pairs approaches the true
    modulus from above.
    """
    if body.dim != 2:
        raise ValueError("modulus estimation is planar")
    diam = diameter(body)
    if not 0 < eps < diam:
        raise ValueError(f"eps must lie in (0, diam) = (0, {diam:.9g})")
    V = _boundary_polyline(body)
    m = len(V)
    seg = np.linalg.norm(np.roll(V, -1, axis=0) - V, axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    L = cum[-1]
    rng = np.random.default_rng(seed)
    starts = (np.arange(n_pairs) + rng.random(n_pairs)) * L / n_pairs

    def point_at(s):
        s = s % L
        i = min(int(np.searchsorted(cum, s, side="right") - 1), m - 1)
        t = (s - cum[i]) / seg[i] if seg[i] > 0 else 0.0
        return V[i] + t * (V[(i + 1) % m] - V[i]), i

    mids = []
    idx = np.arange(1, m + 1)
    for s0 in starts:
        x1, i0 = point_at(s0)
        order = (i0 + idx) % m
        dist = np.linalg.norm(V[order] - x1, axis=1)
        hit = np.flatnonzero(dist >= eps)
        if len(hit) == 0:
            continue
        k = hit[0]
        a = x1 if k == 0 else V[order[k - 1]]
        b = V[order[k]]
        # solve |a + t (b - a) - x1| = eps for t in [0, 1]
        d, f = b - a, a - x1
        qa, qb, qc = d @ d, 2 * d @ f, f @ f - eps * eps
        disc = max(qb * qb - 4 * qa * qc, 0.0)
        t = (-qb + math.sqrt(disc)) / (2 * qa) if qa > 0 else 0.0
        x2 = a + min(max(t, 0.0), 1.0) * d
        mids.append(0.5 * (x1 + x2))
    if not mids:
        raise ValueError("no chord of the requested length found")
    mids = np.array(mids)
    P = np.vstack([probe_directions(2, n_dirs), _extra_normals(body)])
    s = body.support_many(P)
    depth = (s[None, :] - mids @ P.T).min(axis=1)
    return float(max(depth.min(), 0.0))


def estimated_profile(body: ConvexBody, n: int = 64, n_pairs: int = 256, seed: int = 0) -> ModulusProfile:
    diam = diameter(body)
    g = eps_grid(diam, n)
    vals = np.array([modulus_estimate(body, t, n_pairs, seed) for t in g])
    return ModulusProfile(g, np.maximum.accumulate(vals), "estimated")


def rho_h_bound(h: float, profile: ModulusProfile | None, diam: float) -> float:
    """Upper bound on rho(A, B) from h(A, B) and the modulus of A.

    ``h + delta^-1(h)`` below the terminal modulus value, ``h (1 + diam / Delta)``
    at or above it, and ``h`` itself for a singleton ``A``.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    if diam == 0:
        return float(h)
    if profile is None:
        raise ValueError("empty modulus profile")
    delta = profile.terminal
    if delta <= 0:
        raise ValueError("profile is not uniformly convex")
    if h < delta:
        return float(h + profile.inverse(h))
    return float(h * (1.0 + diam / delta))


__all__ = [
    "Arc2D",
    "ArcBody2D",
    "EmptyIntersection",
    "MalformedArcBody",
    "ModulusProfile",
    "PointsTooSpread",
    "arc_face",
    "arc_minkowski_sum",
    "arc_support",
    "ball_bound_profile",
    "ball_intersection_2d",
    "estimated_profile",
    "min_enclosing_ball",
    "modulus_ball_bound",
    "modulus_estimate",
    "quadratic_profile",
    "rho_h_bound",
    "sharp_bound_pair",
    "strong_hull_2d",
    "strong_hull_of_body",
]
