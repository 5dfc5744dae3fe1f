"""Convex compacta in R^n with supporting-function and exposed-face evaluation.

Every body answers three questions for a batch of directions ``P`` of shape
``(m, n)``: the support value ``s(p, A)``, one point of the exposed face
``A(p)`` together with a flag telling whether that face is a singleton, and
(one direction at a time) the whole face.  Directions need not be unit
vectors internally; support functions are positively homogeneous and faces
are invariant under positive scaling.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import nnls
from scipy.spatial.distance import pdist

DEDUP_TOL = 1e-9
ANGLE_TOL = 1e-12
N_PROBE = 4096


class DimensionMismatch(ValueError):
    pass


class EmptyBodyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# direction helpers


def unit(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    nrm = np.linalg.norm(p)
    if not np.isfinite(nrm) or nrm == 0.0:
        raise ValueError("direction must be a nonzero finite vector")
    return p / nrm


def angle_directions(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def probe_directions(n: int, count: int = N_PROBE) -> np.ndarray:
    """Deterministic, roughly uniform unit directions used for sampled tests."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        return angle_directions(2.0 * np.pi * np.arange(count) / count)
    # Fibonacci-like lattice generalised through a fixed Halton sequence.
    from scipy.stats import norm, qmc

    pts = qmc.Halton(d=n, scramble=False).random(count + 1)[1:]
    g = norm.ppf(np.clip(pts, 1e-12, 1 - 1e-12))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return np.vstack([g, -g, np.eye(n), -np.eye(n)])


# ---------------------------------------------------------------------------
# exposed faces


class ExposedFace:
    """Base class of exposed faces; ``points`` lists the generating points."""

    points: np.ndarray

    @property
    def is_singleton(self) -> bool:
        return False

    @property
    def dim(self) -> int:
        return self.points.shape[1]


class FacePoint(ExposedFace):
    def __init__(self, p):
        self.p = np.asarray(p, dtype=float)
        self.points = self.p[None, :]

    @property
    def is_singleton(self) -> bool:
        return True

    def __repr__(self):
        return f"FacePoint({self.p.tolist()})"


class FaceSegment(ExposedFace):
    def __init__(self, a, b):
        self.a = np.asarray(a, dtype=float)
        self.b = np.asarray(b, dtype=float)
        self.points = np.vstack([self.a, self.b])

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.b - self.a))

    def __repr__(self):
        return f"FaceSegment({self.a.tolist()}, {self.b.tolist()})"


class FaceVertexSet(ExposedFace):
    def __init__(self, vertices):
        self.points = np.atleast_2d(np.asarray(vertices, dtype=float))

    def __repr__(self):
        return f"FaceVertexSet({len(self.points)} vertices)"


def face_from_points(points, tol: float = DEDUP_TOL) -> ExposedFace:
    """Smallest face description of the convex hull of ``points``."""
    pts = dedup_points(np.atleast_2d(np.asarray(points, dtype=float)), tol)
    if len(pts) == 1:
        return FacePoint(pts[0])
    centred = pts - pts.mean(axis=0)
    _, sv, vt = np.linalg.svd(centred, full_matrices=False)
    if len(sv) < 2 or sv[1] <= tol * max(1.0, sv[0]):
        t = centred @ vt[0]
        return FaceSegment(pts[np.argmin(t)], pts[np.argmax(t)])
    return FaceVertexSet(pts)


def dedup_points(pts: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    pts = pts[np.lexsort(pts.T[::-1])]
    keep = [0]
    for i in range(1, len(pts)):
        if np.all(np.linalg.norm(pts[keep] - pts[i], axis=1) > tol):
            keep.append(i)
    return pts[keep]


# ---------------------------------------------------------------------------
# bodies


class ConvexBody:
    """Common interface; subclasses implement the three batch primitives."""

    dim: int

    def support_many(self, P: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def select_many(self, P: np.ndarray, tol: float = DEDUP_TOL):
        """One face point per direction plus a singleton-face mask."""
        raise NotImplementedError

    def face(self, q: np.ndarray, tol: float) -> ExposedFace:
        raise NotImplementedError

    def contains_point(self, x: np.ndarray, tol: float) -> bool:
        P = probe_directions(self.dim)
        return bool(np.all(P @ x - self.support_many(P) <= tol))

    # sugar so bodies compose naturally
    def __add__(self, other):
        if isinstance(other, ConvexBody):
            return MinkowskiSum(self, other)
        return Translate(self, other)


def convex_hull_2d(points: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Counter-clockwise extreme points (Andrew's monotone chain)."""
    pts = np.unique(points, axis=0)
    if len(pts) <= 2:
        out = pts
    else:
        scale = float(np.ptp(pts, axis=0).max()) or 1.0
        eps = 1e-14 * scale * scale

        def chain(seq):
            h = []
            for p in seq:
                while len(h) >= 2:
                    o, a = h[-2], h[-1]
                    cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                    if cross > eps:
                        break
                    h.pop()
                h.append(p)
            return h

        lower = chain(pts)
        upper = chain(pts[::-1])
        out = np.array(lower[:-1] + upper[:-1])
    # collapse near-duplicates along the cycle
    keep = [out[0]]
    for p in out[1:]:
        if np.linalg.norm(p - keep[-1]) > tol:
            keep.append(p)
    if len(keep) > 1 and np.linalg.norm(keep[-1] - keep[0]) <= tol:
        keep.pop()
    return np.array(keep)


class Polytope(ConvexBody):
    """Convex hull of finitely many points, stored as its extreme points.

    In the plane the vertices are exact hull vertices in counter-clockwise
    order; in higher dimension they are only deduplicated.
    """

    def __init__(self, vertices, tol: float = DEDUP_TOL):
        v = np.asarray(vertices, dtype=float)
        if v.ndim == 1:
            v = v[None, :]
        if v.size == 0:
            raise EmptyBodyError("polytope needs at least one vertex")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite vertex coordinates")
        self.dim = v.shape[1]
        if self.dim == 2:
            v = convex_hull_2d(v, tol)
        elif self.dim == 1:
            v = np.unique(np.array([[v.min()], [v.max()]]), axis=0)
        else:
            v = dedup_points(v, tol)
        v.flags.writeable = False
        self.vertices = v
        self._normals = None

    def __repr__(self):
        return f"Polytope({len(self.vertices)} vertices in R^{self.dim})"

    # normal fan (2D only)
    @property
    def edge_normal_angles(self) -> np.ndarray:
        """Outward normal angle of edge v_i -> v_{i+1}, unwrapped increasing."""
        if self._normals is None:
            v = self.vertices
            if len(v) == 1:
                self._normals = np.empty(0)
            else:
                e = np.roll(v, -1, axis=0) - v
                a = np.arctan2(-e[:, 0], e[:, 1])
                self._normals = a[0] + np.mod(a - a[0], 2 * np.pi)
        return self._normals

    def vertex_index_for_angles(self, theta: np.ndarray):
        """Index of the vertex exposed at each angle, and a tie mask."""
        alpha = self.edge_normal_angles
        theta = np.asarray(theta, dtype=float)
        if len(alpha) == 0:
            z = np.zeros(theta.shape, dtype=int)
            return z, np.zeros(theta.shape, dtype=bool)
        rel = alpha - alpha[0]
        t = np.mod(theta - alpha[0], 2 * np.pi)
        raw = np.searchsorted(rel, t, side="left")
        ext = np.concatenate([rel, [2 * np.pi]])
        after = ext[raw] - t
        before = np.where(raw > 0, t - ext[np.maximum(raw - 1, 0)], 0.0)
        tie = np.minimum(after, before) <= ANGLE_TOL
        return raw % len(alpha), tie

    def support_many(self, P):
        P = np.asarray(P, dtype=float)
        out = np.empty(len(P))
        step = max(1, 4_000_000 // max(1, len(self.vertices)))
        for i in range(0, len(P), step):
            out[i:i + step] = (P[i:i + step] @ self.vertices.T).max(axis=1)
        return out

    def select_many(self, P, tol=DEDUP_TOL):
        P = np.asarray(P, dtype=float)
        if self.dim == 2:
            idx, tie = self.vertex_index_for_angles(np.arctan2(P[:, 1], P[:, 0]))
            return self.vertices[idx], ~tie
        V = self.vertices
        idx = np.empty(len(P), dtype=int)
        single = np.empty(len(P), dtype=bool)
        step = max(1, 4_000_000 // max(1, len(V)))
        for i in range(0, len(P), step):
            vals = P[i:i + step] @ V.T
            j = np.argmax(vals, axis=1)
            top = vals[np.arange(len(j)), j]
            near = (top[:, None] - vals) <= tol * (1 + np.abs(top[:, None]))
            idx[i:i + step] = j
            single[i:i + step] = near.sum(axis=1) == 1
        return V[idx], single

    def face(self, q, tol):
        q = unit(q)
        vals = self.vertices @ q
        s = vals.max()
        return face_from_points(self.vertices[s - vals <= tol])

    def contains_point(self, x, tol):
        V = self.vertices
        if self.dim == 1:
            return bool(V[0, 0] - tol <= x[0] <= V[-1, 0] + tol)
        if self.dim == 2:
            if len(V) <= 2:
                return point_segment_distance(x, V[0], V[-1]) <= tol
            nrm = angle_directions(self.edge_normal_angles)
            return bool(np.all(np.einsum("ij,ij->i", nrm, x - V) <= tol))
        # distance to the hull via nonnegative least squares with a heavy
        # affine-combination row
        w = 1e4 * (1.0 + np.abs(V).max())
        A = np.vstack([V.T, w * np.ones(len(V))])
        b = np.concatenate([x, [w]])
        lam, _ = nnls(A, b)
        return bool(np.linalg.norm(V.T @ (lam / lam.sum()) - x) <= tol)


class Ball(ConvexBody):
    def __init__(self, center, radius: float):
        self.center = np.asarray(center, dtype=float).reshape(-1)
        self.radius = float(radius)
        if self.radius < 0 or not math.isfinite(self.radius):
            raise ValueError("ball radius must be a nonnegative real")
        self.dim = len(self.center)

    def __repr__(self):
        return f"Ball({self.center.tolist()}, {self.radius})"

    def support_many(self, P):
        P = np.asarray(P, dtype=float)
        return P @ self.center + self.radius * np.linalg.norm(P, axis=1)

    def select_many(self, P, tol=DEDUP_TOL):
        P = np.asarray(P, dtype=float)
        U = P / np.linalg.norm(P, axis=1, keepdims=True)
        return self.center + self.radius * U, np.ones(len(P), dtype=bool)

    def face(self, q, tol):
        return FacePoint(self.center + self.radius * unit(q))

    def contains_point(self, x, tol):
        return bool(np.linalg.norm(x - self.center) <= self.radius + tol)


class LinearImage(ConvexBody):
    """``L(inner)`` for a real matrix ``L``; s(p, L K) = s(L^T p, K)."""

    def __init__(self, matrix, inner: ConvexBody):
        self.matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        if self.matrix.shape[1] != inner.dim:
            raise DimensionMismatch("matrix columns must match inner dimension")
        self.inner = inner
        self.dim = self.matrix.shape[0]

    def __repr__(self):
        return f"LinearImage({self.matrix.tolist()}, {self.inner!r})"

    def support_many(self, P):
        return self.inner.support_many(np.asarray(P, dtype=float) @ self.matrix)

    def select_many(self, P, tol=DEDUP_TOL):
        Q = np.asarray(P, dtype=float) @ self.matrix
        pts, single = self.inner.select_many(Q, tol)
        # a degenerate L^T p (zero) exposes the whole image
        zero = np.linalg.norm(Q, axis=1) <= 1e-300
        if np.any(zero):
            pts = pts.copy()
            pts[zero] = 0.0
            single = single & ~zero
        return pts @ self.matrix.T, single

    def face(self, q, tol):
        inner_q = self.matrix.T @ unit(q)
        if np.linalg.norm(inner_q) == 0.0:
            raise ValueError("direction annihilated by the linear map")
        f = self.inner.face(inner_q, tol)
        return face_from_points(f.points @ self.matrix.T)

    def contains_point(self, x, tol):
        L = self.matrix
        if L.shape[0] == L.shape[1] and abs(np.linalg.det(L)) > 1e-12:
            Linv = np.linalg.inv(L)
            scale = np.linalg.norm(Linv, 2)
            if isinstance(self.inner, (Ball, Polytope, Translate, LinearImage)):
                return self.inner.contains_point(Linv @ x, tol * scale)
        return super().contains_point(x, tol)


class MinkowskiSum(ConvexBody):
    def __init__(self, left: ConvexBody, right: ConvexBody):
        if left.dim != right.dim:
            raise DimensionMismatch(f"cannot add bodies in R^{left.dim} and R^{right.dim}")
        self.left, self.right = left, right
        self.dim = left.dim

    def __repr__(self):
        return f"MinkowskiSum({self.left!r}, {self.right!r})"

    def support_many(self, P):
        return self.left.support_many(P) + self.right.support_many(P)

    def select_many(self, P, tol=DEDUP_TOL):
        a, sa = self.left.select_many(P, tol)
        b, sb = self.right.select_many(P, tol)
        return a + b, sa & sb

    def face(self, q, tol):
        fa = self.left.face(q, tol).points
        fb = self.right.face(q, tol).points
        return face_from_points((fa[:, None, :] + fb[None, :, :]).reshape(-1, self.dim))


class Translate(ConvexBody):
    def __init__(self, inner: ConvexBody, offset):
        self.inner = inner
        self.offset = np.asarray(offset, dtype=float).reshape(-1)
        if len(self.offset) != inner.dim:
            raise DimensionMismatch("offset dimension differs from body dimension")
        self.dim = inner.dim

    def __repr__(self):
        return f"Translate({self.inner!r}, {self.offset.tolist()})"

    def support_many(self, P):
        P = np.asarray(P, dtype=float)
        return self.inner.support_many(P) + P @ self.offset

    def select_many(self, P, tol=DEDUP_TOL):
        pts, single = self.inner.select_many(P, tol)
        return pts + self.offset, single

    def face(self, q, tol):
        return face_from_points(self.inner.face(q, tol).points + self.offset)

    def contains_point(self, x, tol):
        return self.inner.contains_point(x - self.offset, tol)


def ellipse(k: float) -> LinearImage:
    """The body x1^2 + k^2 x2^2 <= 1."""
    return LinearImage(np.diag([1.0, 1.0 / k]), Ball([0.0, 0.0], 1.0))


# ---------------------------------------------------------------------------
# public operations


def _check_direction(body: ConvexBody, p) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if len(p) != body.dim:
        raise DimensionMismatch(f"direction in R^{len(p)} for body in R^{body.dim}")
    if abs(np.linalg.norm(p) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit vector")
    return p


def support(body: ConvexBody, p) -> float:
    """Supporting function s(p, A) = max over A of (p, x)."""
    p = _check_direction(body, p)
    return float(body.support_many(p[None, :])[0])


def default_face_tol(body: ConvexBody, p) -> float:
    return 1e-9 * (1.0 + abs(support(body, p)))


def exposed_face(body: ConvexBody, p, tol: float | None = None) -> ExposedFace:
    """The face A(p) of points attaining the support value."""
    p = _check_direction(body, p)
    if tol is None:
        tol = default_face_tol(body, p)
    if tol <= 0:
        raise ValueError("face tolerance must be positive")
    return body.face(p, tol)


def diameter(body: ConvexBody, count: int = N_PROBE) -> float:
    """Diameter; exact for polytopes and balls, otherwise a sampled lower bound.

    The sampled value is the largest width ``s(p) + s(-p)`` over probe
    directions, see :func:`diameter_is_exact`.
    """
    if isinstance(body, Translate):
        return diameter(body.inner, count)
    if isinstance(body, Ball):
        return 2.0 * body.radius
    if isinstance(body, Polytope):
        V = body.vertices
        if len(V) == 1:
            return 0.0
        return float(pdist(V).max())
    P = probe_directions(body.dim, count)
    w = body.support_many(P) + body.support_many(-P)
    return float(max(w.max(), 0.0))


def diameter_is_exact(body: ConvexBody) -> bool:
    if isinstance(body, Translate):
        return diameter_is_exact(body.inner)
    return isinstance(body, (Ball, Polytope))


def contains(body: ConvexBody, x, tol: float = 1e-9) -> bool:
    """Membership test with an additive tolerance band.

    Exact for polytopes, balls, arc bodies and invertible images of those;
    otherwise decided on a dense probe set of directions, in which case a
    ``False`` is certified while ``True`` means "probably inside".
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    if len(x) != body.dim:
        raise DimensionMismatch("point dimension differs from body dimension")
    return body.contains_point(x, tol)


def normal_angles(polygon: Polytope) -> np.ndarray:
    """Sorted outward edge-normal angles in [0, 2 pi)."""
    if not isinstance(polygon, Polytope) or polygon.dim != 2:
        raise ValueError("normal_angles needs a planar polytope")
    return np.sort(np.mod(polygon.edge_normal_angles, 2 * np.pi))


def point_segment_distance(x, a, b) -> float:
    ab = b - a
    den = float(ab @ ab)
    t = 0.0 if den == 0.0 else min(1.0, max(0.0, float((x - a) @ ab) / den))
    # the endpoint terms keep the distance of an endpoint to its own segment at exactly 0
    return float(min(np.linalg.norm(x - (a + t * ab)), np.linalg.norm(x - a), np.linalg.norm(x - b)))


def as_polytope(body: ConvexBody) -> Polytope | None:
    """Vertex representation of a polyhedral body, or None."""
    if isinstance(body, Polytope):
        return body
    if isinstance(body, Translate):
        inner = as_polytope(body.inner)
        return None if inner is None else Polytope(inner.vertices + body.offset)
    if isinstance(body, LinearImage):
        inner = as_polytope(body.inner)
        return None if inner is None else Polytope(inner.vertices @ body.matrix.T)
    if isinstance(body, MinkowskiSum):
        a, b = as_polytope(body.left), as_polytope(body.right)
        if a is None or b is None:
            return None
        pts = (a.vertices[:, None, :] + b.vertices[None, :, :]).reshape(-1, body.dim)
        return Polytope(pts)
    if isinstance(body, Ball) and body.radius == 0.0:
        return Polytope(body.center[None, :])
    return None


def as_ball(body: ConvexBody) -> Ball | None:
    """Ball representation of a body that is exactly a ball, or None."""
    if isinstance(body, Ball):
        return body
    if isinstance(body, Translate):
        inner = as_ball(body.inner)
        return None if inner is None else Ball(inner.center + body.offset, inner.radius)
    if isinstance(body, MinkowskiSum):
        a, b = as_ball(body.left), as_ball(body.right)
        if a is None or b is None:
            return None
        return Ball(a.center + b.center, a.radius + b.radius)
    if isinstance(body, Polytope) and len(body.vertices) == 1:
        return Ball(body.vertices[0], 0.0)
    return None


def random_polygon(rng, n_points: int = 12) -> Polytope:
    """Convex hull of i.i.d. uniform points in the unit disk."""
    rng = np.random.default_rng(rng)
    r = np.sqrt(rng.random(n_points))
    return Polytope(r[:, None] * angle_directions(2 * np.pi * rng.random(n_points)))
