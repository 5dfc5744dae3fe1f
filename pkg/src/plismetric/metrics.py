"""Hausdorff and Plis/Demyanov distances between convex bodies.

Planar polygon pairs and ball pairs have exact paths.  Everything else goes
through a direction sweep followed by golden-section refinement around the
best direction; those results are genuine values of the sup-functional at
concrete directions and therefore lower bounds of the supremum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .bodies import (
    ANGLE_TOL,
    ConvexBody,
    DimensionMismatch,
    ExposedFace,
    Polytope,
    Translate,
    angle_directions,
    as_ball,
    as_polytope,
    exposed_face,
    face_from_points,
    point_segment_distance,
    unit,
)

EXACT = "exact"
LOWER_BOUND = "lower_bound"
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DistanceResult:
    value: float
    kind: str
    witness: np.ndarray
    grid_gap: float = 0.0
    skipped: int = 0

    @property
    def exact(self) -> bool:
        return self.kind == EXACT


@dataclass(frozen=True)
class SamplerSpec:
    """Direction sampling plan.

    ``scheme`` is ``"uniform-angle"`` in the plane and ``"quasi-uniform-sphere"``
    above; ``"auto"`` picks by dimension.
    """

    count: int = 4096
    seed: int = 0
    scheme: str = "auto"
    refine_rounds: int = 30
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.count < 4:
            raise ValueError("sampler needs at least 4 directions")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be nonnegative")

    def resolved_scheme(self, n: int) -> str:
        if self.scheme != "auto":
            return self.scheme
        return "uniform-angle" if n == 2 else "quasi-uniform-sphere"

    def directions(self, n: int) -> np.ndarray:
        key = ("dirs", n)
        if key not in self._cache:
            self._cache[key] = sample_directions(n, self.count, self.seed, self.resolved_scheme(n))
        return self._cache[key]

    def grid_gap(self, n: int) -> float:
        """Largest angular distance from any direction to the sample set."""
        key = ("gap", n)
        if key not in self._cache:
            if self.resolved_scheme(n) == "uniform-angle" and n == 2:
                gap = math.pi / self.count
            else:
                dirs = self.directions(n)
                probe = sample_directions(n, 4 * len(dirs), self.seed + 7919, "random")
                chord, _ = cKDTree(dirs).query(probe)
                gap = float(2.0 * np.arcsin(min(1.0, chord.max() / 2.0)))
            self._cache[key] = gap
        return self._cache[key]


def sobol_points(n: int, count: int, rng) -> np.ndarray:
    """First ``count`` points of a scrambled Sobol block of power-of-two size."""
    from scipy.stats import qmc

    m = max(int(np.ceil(np.log2(max(count, 2)))), 1)
    return qmc.Sobol(d=n, scramble=True, seed=rng).random_base2(m)[:count]


def sample_directions(n: int, count: int, seed: int = 0, scheme: str = "auto") -> np.ndarray:
    """Unit directions: an equispaced angle grid in 2D, scrambled Sobol points
    pushed through the Gaussian quantile function otherwise."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2 and scheme in ("auto", "uniform-angle"):
        return angle_directions(2.0 * np.pi * np.arange(count) / count)
    rng = np.random.default_rng(seed)
    if scheme == "random":
        g = rng.standard_normal((count, n))
    else:
        from scipy.stats import norm

        u = sobol_points(n, count, rng)
        g = norm.ppf(np.clip(u, 1e-12, 1.0 - 1e-12))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _check_dims(A: ConvexBody, B: ConvexBody):
    if A.dim != B.dim:
        raise DimensionMismatch(f"bodies live in R^{A.dim} and R^{B.dim}")


# ---------------------------------------------------------------------------
# refinement


def _golden_max(f, lo: float, hi: float, rounds: int):
    """Golden-section search for a maximum; returns the best evaluated point."""
    best_x, best_v = None, -np.inf
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for x, v in ((c, fc), (d, fd)):
        if v > best_v:
            best_x, best_v = x, v
    for _ in range(rounds):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
            if fc > best_v:
                best_x, best_v = c, fc
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
            if fd > best_v:
                best_x, best_v = d, fd
    return best_x, best_v


def refine_direction(f, p0: np.ndarray, v0: float, gap: float, rounds: int):
    """Locally improve ``f`` around ``p0`` along great circles.

    In the plane this is a golden-section search on the angle in
    ``[theta0 - 2 gap, theta0 + 2 gap]``; in R^n one search per tangent axis.
    """
    best_p, best_v = p0, v0
    if rounds == 0 or gap <= 0:
        return best_p, best_v
    n = len(p0)
    if n == 2:
        th0 = math.atan2(p0[1], p0[0])
        x, v = _golden_max(lambda t: f(np.array([math.cos(t), math.sin(t)])),
                           th0 - 2 * gap, th0 + 2 * gap, rounds)
        if v > best_v:
            best_p, best_v = np.array([math.cos(x), math.sin(x)]), v
        return best_p, best_v
    for _ in range(2):
        basis = np.linalg.svd(best_p[None, :])[2][1:]
        for t in basis:
            base = best_p

            def along(phi, base=base, t=t):
                return f(math.cos(phi) * base + math.sin(phi) * t)

            x, v = _golden_max(along, -2 * gap, 2 * gap, rounds)
            if v > best_v:
                best_p, best_v = unit(math.cos(x) * base + math.sin(x) * t), v
    return best_p, best_v


# ---------------------------------------------------------------------------
# faces


def _dist_to_hull(x: np.ndarray, pts: np.ndarray) -> float:
    if len(pts) == 1:
        return float(np.linalg.norm(x - pts[0]))
    if len(pts) == 2:
        return point_segment_distance(x, pts[0], pts[1])
    if pts.shape[1] == 2:
        return float(polygon_distances(x[None, :], Polytope(pts))[0])
    raise ValueError("face Hausdorff distance supports only points and segments beyond the plane")


def _as_face_points(F) -> np.ndarray:
    if isinstance(F, ExposedFace):
        pts = F.points
    else:
        pts = np.atleast_2d(np.asarray(F, dtype=float))
    if pts.shape[1] > 2 and len(pts) > 2:
        f = face_from_points(pts)
        if len(f.points) > 2:
            raise ValueError("face Hausdorff distance supports only points and segments beyond the plane")
        pts = f.points
    return pts


def face_hausdorff(F, G) -> float:
    """Exact Hausdorff distance between two faces (convex hulls of their points).

    The distance to a convex set is a convex function, so each directed part
    is maximised at a generating point of the other face.
    """
    P, Q = _as_face_points(F), _as_face_points(G)
    if P.shape[1] != Q.shape[1]:
        raise DimensionMismatch("faces live in different dimensions")
    return max(max(_dist_to_hull(x, Q) for x in P), max(_dist_to_hull(y, P) for y in Q))


# ---------------------------------------------------------------------------
# planar polygon helpers


def polygon_distances(X: np.ndarray, poly: Polytope) -> np.ndarray:
    """Euclidean distance from each row of ``X`` to a planar convex polygon."""
    V = poly.vertices
    X = np.atleast_2d(X)
    if len(V) == 1:
        return np.linalg.norm(X - V[0], axis=1)
    W = np.roll(V, -1, axis=0)
    if len(V) == 2:
        V, W = V[:1], W[:1]
    out = np.empty(len(X))
    E = W - V
    EE = np.einsum("ij,ij->i", E, E)
    step = max(1, 2_000_000 // len(V))
    inside_ok = len(poly.vertices) >= 3
    nrm = angle_directions(poly.edge_normal_angles) if inside_ok else None
    for s in range(0, len(X), step):
        x = X[s:s + step]
        D = x[:, None, :] - V[None, :, :]
        t = np.clip(np.einsum("kij,ij->ki", D, E) / EE, 0.0, 1.0)
        R = D - t[..., None] * E
        d = np.sqrt(np.einsum("kij,kij->ki", R, R)).min(axis=1)
        if inside_ok:
            inside = np.all(np.einsum("ij,kij->ki", nrm, D) <= 0.0, axis=1)
            d[inside] = 0.0
        out[s:s + step] = d
    return out


def _polygon_face_at(poly: Polytope, theta: float) -> np.ndarray:
    idx, tie = poly.vertex_index_for_angles(np.array([theta]))
    i = int(idx[0])
    if not tie[0]:
        return poly.vertices[i:i + 1]
    # theta sits on the normal of the edge that ends at vertex i or starts there
    alpha = np.mod(poly.edge_normal_angles, 2 * np.pi)
    d = np.abs(np.angle(np.exp(1j * (alpha - theta))))
    j = int(np.argmin(d))
    m = len(poly.vertices)
    return poly.vertices[[j, (j + 1) % m]]


def _merge_angles(*angle_lists) -> np.ndarray:
    a = np.sort(np.mod(np.concatenate([np.asarray(x, float) for x in angle_lists]), 2 * np.pi))
    if len(a) == 0:
        return a
    keep = [a[0]]
    for x in a[1:]:
        if x - keep[-1] > ANGLE_TOL:
            keep.append(x)
    if len(keep) > 1 and keep[0] + 2 * np.pi - keep[-1] <= ANGLE_TOL:
        keep.pop()
    return np.array(keep)


def plis_polygons_exact(A: Polytope, B: Polytope) -> DistanceResult:
    """Exact rho for planar polygons by walking the merged normal fan."""
    angles = _merge_angles(A.edge_normal_angles, B.edge_normal_angles)
    if len(angles) == 0:
        d = float(np.linalg.norm(A.vertices[0] - B.vertices[0]))
        return DistanceResult(d, EXACT, np.array([1.0, 0.0]))
    nxt = np.roll(angles, -1)
    nxt[-1] += 2 * np.pi
    mids = 0.5 * (angles + nxt)
    ia, _ = A.vertex_index_for_angles(mids)
    ib, _ = B.vertex_index_for_angles(mids)
    arc_vals = np.linalg.norm(A.vertices[ia] - B.vertices[ib], axis=1)
    k = int(np.argmax(arc_vals))
    best, best_theta = float(arc_vals[k]), float(mids[k])
    for th in angles:
        v = face_hausdorff(_polygon_face_at(A, th), _polygon_face_at(B, th))
        if v > best:
            best, best_theta = v, float(th)
    return DistanceResult(best, EXACT, angle_directions(best_theta))


def hausdorff_polygons_exact(A: Polytope, B: Polytope) -> DistanceResult:
    da = polygon_distances(A.vertices, B)
    db = polygon_distances(B.vertices, A)
    if da.max() >= db.max():
        x, body, value = A.vertices[int(np.argmax(da))], B, float(da.max())
    else:
        x, body, value = B.vertices[int(np.argmax(db))], A, float(db.max())
    witness = np.array([1.0, 0.0])
    if value > 0:
        # nearest point of the other polygon; the witness points from it to x
        V = body.vertices
        cands = [V[0]] if len(V) == 1 else []
        for v, w in zip(V, np.roll(V, -1, axis=0)):
            e = w - v
            den = float(e @ e)
            t = 0.0 if den == 0 else min(1.0, max(0.0, float((x - v) @ e) / den))
            cands.append(v + t * e)
        y = min(cands, key=lambda c: float(np.linalg.norm(x - c)))
        witness = unit(x - y)
    return DistanceResult(value, EXACT, witness)


# ---------------------------------------------------------------------------
# public distances


def _ball_pair(A: ConvexBody, B: ConvexBody):
    a, b = as_ball(A), as_ball(B)
    if a is None or b is None:
        return None
    d = a.center - b.center
    nd = float(np.linalg.norm(d))
    value = nd + abs(a.radius - b.radius)
    if nd > 0:
        w = d / nd
        if a.radius < b.radius:
            w = -w
    else:
        w = np.zeros(A.dim)
        w[0] = 1.0
    return DistanceResult(value, EXACT, w)


def _translate_pair(A: ConvexBody, B: ConvexBody):
    for X, Y in ((A, B), (B, A)):
        if isinstance(Y, Translate) and Y.inner is X:
            v = Y.offset
            nv = float(np.linalg.norm(v))
            w = v / nv if nv > 0 else np.eye(A.dim)[0]
            return DistanceResult(nv, EXACT, w)
    return None


def _polygon_pair(A: ConvexBody, B: ConvexBody):
    if A.dim != 2:
        return None
    pa, pb = as_polytope(A), as_polytope(B)
    if pa is None or pb is None:
        return None
    return pa, pb


def has_exact_path(A: ConvexBody, B: ConvexBody, metric: str = "plis") -> bool:
    if _ball_pair(A, B) is not None or _polygon_pair(A, B) is not None:
        return True
    return metric == "plis" and _translate_pair(A, B) is not None


def hausdorff(A: ConvexBody, B: ConvexBody, sampler: SamplerSpec | None = None) -> DistanceResult:
    """h(A, B) = sup over unit p of |s(p, A) - s(p, B)|."""
    _check_dims(A, B)
    res = _ball_pair(A, B)
    if res is not None:
        return res
    pair = _polygon_pair(A, B)
    if pair is not None:
        return hausdorff_polygons_exact(*pair)
    return hausdorff_sampled(A, B, sampler or SamplerSpec())


def hausdorff_sampled(A: ConvexBody, B: ConvexBody, sampler: SamplerSpec) -> DistanceResult:
    """Largest sampled support difference, refined around the best direction."""
    _check_dims(A, B)
    n = A.dim
    P = sampler.directions(n)
    diff = np.abs(A.support_many(P) - B.support_many(P))
    k = int(np.argmax(diff))

    def f(p):
        q = p[None, :]
        return float(abs(A.support_many(q)[0] - B.support_many(q)[0]))

    gap = sampler.grid_gap(n)
    p, v = refine_direction(f, P[k], float(diff[k]), gap, sampler.refine_rounds)
    return DistanceResult(v, LOWER_BOUND, p, gap)


def face_distance_at(A: ConvexBody, B: ConvexBody, p) -> float:
    """h(A(p), B(p)) at one direction."""
    p = unit(p)
    return face_hausdorff(exposed_face(A, p), exposed_face(B, p))


def plis_sampled(A: ConvexBody, B: ConvexBody, sampler: SamplerSpec) -> DistanceResult:
    """Largest sampled face distance, refined around the best direction."""
    _check_dims(A, B)
    n = A.dim
    P = sampler.directions(n)
    best_v, best_p = -1.0, P[0]
    step = 250_000
    for s in range(0, len(P), step):
        Q = P[s:s + step]
        a, sa = A.select_many(Q)
        b, sb = B.select_many(Q)
        vals = np.linalg.norm(a - b, axis=1)
        both = sa & sb
        vals[~both] = -1.0
        for i in np.flatnonzero(~both):
            try:
                vals[i] = face_distance_at(A, B, Q[i])
            except ValueError:
                vals[i] = -1.0
        k = int(np.argmax(vals))
        if vals[k] > best_v:
            best_v, best_p = float(vals[k]), Q[k]

    def f(p):
        try:
            return face_distance_at(A, B, p)
        except ValueError:
            return -1.0

    gap = sampler.grid_gap(n)
    p, v = refine_direction(f, best_p, best_v, gap, sampler.refine_rounds)
    return DistanceResult(max(v, 0.0), LOWER_BOUND, p, gap)


def plis(A: ConvexBody, B: ConvexBody, sampler: SamplerSpec | None = None) -> DistanceResult:
    """rho(A, B) = sup over unit p of h(A(p), B(p))."""
    _check_dims(A, B)
    for closed in (_ball_pair, _translate_pair):
        res = closed(A, B)
        if res is not None:
            return res
    pair = _polygon_pair(A, B)
    if pair is not None:
        return plis_polygons_exact(*pair)
    return plis_sampled(A, B, sampler or SamplerSpec())


def demyanov_gradient_estimate(A: ConvexBody, B: ConvexBody,
                               sampler: SamplerSpec | None = None) -> DistanceResult:
    """sup of ||a(p) - b(p)|| over sampled directions with singleton faces."""
    _check_dims(A, B)
    sampler = sampler or SamplerSpec()
    P = sampler.directions(A.dim)
    a, sa = A.select_many(P)
    b, sb = B.select_many(P)
    both = sa & sb
    if not np.any(both):
        return DistanceResult(0.0, LOWER_BOUND, P[0], sampler.grid_gap(A.dim), int(len(P)))
    vals = np.where(both, np.linalg.norm(a - b, axis=1), -1.0)
    k = int(np.argmax(vals))
    return DistanceResult(float(vals[k]), LOWER_BOUND, P[k], sampler.grid_gap(A.dim),
                          int((~both).sum()))


__all__ = [
    "DistanceResult",
    "SamplerSpec",
    "demyanov_gradient_estimate",
    "face_hausdorff",
    "has_exact_path",
    "hausdorff",
    "hausdorff_sampled",
    "plis",
    "plis_sampled",
    "sample_directions",
]
