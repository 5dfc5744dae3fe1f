import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import angles, direction, seeds
from plismetric.bodies import Ball, Polytope, contains, diameter, exposed_face, support
from plismetric.metrics import SamplerSpec, hausdorff, plis
from plismetric.strongconv import (
    Arc2D,
    ArcBody2D,
    EmptyIntersection,
    MalformedArcBody,
    ModulusProfile,
    PointsTooSpread,
    arc_face,
    arc_minkowski_sum,
    arc_support,
    ball_intersection_2d,
    ball_bound_profile,
    disk_body,
    min_enclosing_ball,
    modulus_ball_bound,
    modulus_estimate,
    point_body,
    quadratic_profile,
    rho_h_bound,
    sharp_bound_pair,
    strong_hull_2d,
)

SQ3 = math.sqrt(3) / 2


def lens():
    return ball_intersection_2d([[0, 0], [1, 0]], 1.0)


def test_single_disk_intersection():
    body = ball_intersection_2d([[0, 0]], 1.0)
    assert len(body.arcs) == 1 and body.arcs[0].width == pytest.approx(2 * np.pi)
    for theta in np.linspace(0, 6, 7):
        p = direction(theta)
        assert arc_support(body, p) == pytest.approx(1.0)
        np.testing.assert_allclose(arc_face(body, p).p, p, atol=1e-15)


def test_lens_corners_and_top_face():
    body = lens()
    verts = body.vertices()
    for corner in ([0.5, SQ3], [0.5, -SQ3]):
        assert np.min(np.linalg.norm(verts - corner, axis=1)) < 1e-12
    np.testing.assert_allclose(arc_face(body, [0, 1]).p, [0.5, SQ3], atol=1e-12)


def test_lens_membership_matches_disk_intersection():
    body = lens()
    X = np.random.default_rng(0).uniform(-1, 2, size=(2000, 2))
    truth = (np.linalg.norm(X, axis=1) <= 1) & (np.linalg.norm(X - [1, 0], axis=1) <= 1)
    margin = np.minimum(np.abs(np.linalg.norm(X, axis=1) - 1), np.abs(np.linalg.norm(X - [1, 0], axis=1) - 1))
    ok = margin > 1e-9
    assert all(contains(body, x) == t for x, t in zip(X[ok], truth[ok]))


def test_empty_intersection():
    with pytest.raises(EmptyIntersection):
        ball_intersection_2d([[0, 0], [3, 0]], 1.0)


def test_three_disk_intersection_is_reuleaux_like():
    pts = np.array([[0, 0], [1, 0], [0.5, SQ3]])
    body = ball_intersection_2d(pts, 1.0)
    assert len(body.arcs) >= 3
    for c in pts:
        assert contains(body, c)
    assert diameter(body) == pytest.approx(1.0, abs=1e-6)


def test_malformed_arc_body_rejected():
    with pytest.raises(MalformedArcBody):
        ArcBody2D([Arc2D([0, 0], 1.0, 0.0, np.pi)], 1.0)
    with pytest.raises(MalformedArcBody):
        ArcBody2D([], 1.0)


def test_point_hull_is_the_point():
    body = strong_hull_2d([[0.3, -0.2]], 2.0)
    assert body.is_point
    for theta in (0.1, 2.0, 4.0):
        np.testing.assert_allclose(arc_face(body, direction(theta)).p, [0.3, -0.2], atol=1e-15)


def test_two_point_hull_is_lens():
    body = strong_hull_2d([[0, 0], [1, 0]], 1.0)
    centers = np.array(sorted(tuple(a.center) for a in body.arcs if a.radius > 0))
    np.testing.assert_allclose(centers, [[0.5, -SQ3], [0.5, SQ3]], atol=1e-12)
    top = arc_face(body, [0, 1]).p
    np.testing.assert_allclose(top, [0.5, 1 - SQ3], atol=1e-12)


def test_sharp_generator_lens():
    R, eps = 1.0, 0.1
    d = 2 * math.sqrt(2 * R * eps - eps * eps)
    body = strong_hull_2d([[0, 0], [d, 0]], R)
    assert sum(a.radius > 0 for a in body.arcs) == 2
    # circle construction: arc centres sit at distance sqrt(R^2 - d^2/4) from the chord
    off = math.sqrt(R * R - d * d / 4)
    centers = sorted(a.center[1] for a in body.arcs if a.radius > 0)
    assert centers == pytest.approx([-off, off], abs=1e-12)


def test_small_square_hull_is_close_to_polygon():
    sq = np.array([[0, 0], [0.2, 0], [0.2, 0.2], [0, 0.2]])
    body = strong_hull_2d(sq, 100.0)
    h = hausdorff(body, Polytope(sq), SamplerSpec(count=1 << 16)).value
    # sagitta of a 0.2 chord on a radius-100 circle
    assert h <= 100 - math.sqrt(100**2 - 0.01) + 1e-9


def test_points_too_spread():
    with pytest.raises(PointsTooSpread):
        strong_hull_2d([[0, 0], [5, 0]], 1.0)


@given(seeds, st.integers(min_value=2, max_value=25), st.floats(min_value=1.0, max_value=5.0))
def test_hull_contains_points_and_lies_in_admissible_balls(seed, n, R):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-0.6, 0.6, size=(n, 2))
    body = strong_hull_2d(pts, R)
    for x in pts:
        assert contains(body, x, tol=1e-9)
    # admissible centres: points of the centre set, i.e. R-balls containing every input
    C = ball_intersection_2d(pts, R)
    probe = body.boundary_points(256)
    for c in C.boundary_points(16):
        assert np.all(np.linalg.norm(probe - c, axis=1) <= R + 1e-9)


@given(seeds, angles)
def test_faces_are_singletons(seed, theta):
    rng = np.random.default_rng(seed)
    body = strong_hull_2d(rng.uniform(-0.5, 0.5, size=(8, 2)), 1.5)
    face = exposed_face(body, direction(theta))
    assert face.is_singleton
    assert abs(direction(theta) @ face.p - support(body, direction(theta))) <= 1e-12


def test_faces_singleton_on_dense_directions():
    rng = np.random.default_rng(9)
    body = strong_hull_2d(rng.uniform(-0.5, 0.5, size=(12, 2)), 2.0)
    theta = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)
    _, single = body.select_many(np.column_stack([np.cos(theta), np.sin(theta)]))
    assert single.all()


def test_idempotence_on_dense_boundary_sample():
    rng = np.random.default_rng(1)
    body = strong_hull_2d(rng.uniform(-0.5, 0.5, size=(10, 2)), 1.0)
    again = strong_hull_2d(body.boundary_points(4096), 1.0)
    assert hausdorff(body, again, SamplerSpec(count=1 << 16)).value <= 1e-6


def test_disk_inputs_and_minkowski_sum():
    body = strong_hull_2d([[0, 0], [0.5, 0]], 1.0, radii=[0.1, 0.0])
    assert contains(body, [-0.1, 0]) and contains(body, [0, 0.1])
    total = arc_minkowski_sum(body, Ball([0, 0], 1.0))
    for theta in np.linspace(0, 6.2, 13):
        p = direction(theta)
        assert support(total, p) == pytest.approx(support(body, p) + 1.0, abs=1e-12)


def test_sharp_bound_pair_values():
    A, B = sharp_bound_pair(1.0, 0.1)
    assert hausdorff(A, B).value == pytest.approx(0.1, abs=1e-9)
    assert plis(A, B).value >= math.sqrt(0.19) - 1e-9


def test_min_enclosing_ball():
    c, r = min_enclosing_ball([[0, 0], [2, 0], [1, 0.2]])
    np.testing.assert_allclose(c, [1, 0], atol=1e-12)
    assert r == pytest.approx(1.0)


def test_modulus_ball_bound_examples():
    assert modulus_ball_bound(1, 1) == pytest.approx(1 - SQ3, abs=1e-15)
    assert modulus_ball_bound(1, 1e-8) == pytest.approx(0, abs=1e-15)
    assert modulus_ball_bound(1, 2) == 1.0
    with pytest.raises(ValueError):
        modulus_ball_bound(1, 2.5)


def test_modulus_estimate_examples():
    assert modulus_estimate(Ball([0, 0], 1), 1.0) == pytest.approx(modulus_ball_bound(1, 1), abs=1e-4)
    square = Polytope([[1, 1], [-1, 1], [-1, -1], [1, -1]])
    for eps in (0.3, 1.0, 1.9):
        assert modulus_estimate(square, eps) == pytest.approx(0.0, abs=1e-6)
    assert modulus_estimate(lens(), 0.5) >= modulus_ball_bound(1, 0.5) - 1e-6


def test_modulus_estimate_range():
    with pytest.raises(ValueError):
        modulus_estimate(Ball([0, 0], 1), 2.5)


def test_profile_validation_and_csv_roundtrip():
    prof = quadratic_profile(1.0, 2.0)
    back = ModulusProfile.from_csv(prof.to_csv())
    np.testing.assert_array_equal(back.eps_grid, prof.eps_grid)
    np.testing.assert_array_equal(back.delta_values, prof.delta_values)
    with pytest.raises(ValueError):
        ModulusProfile(np.array([0.1, 0.2]), np.array([0.3, 0.1]))
    with pytest.raises(ValueError):
        ModulusProfile(np.array([]), np.array([]))


def test_profile_inverse():
    prof = quadratic_profile(1.0, 2.0)
    for h in (1e-6, 0.02, 0.3):
        assert prof.inverse(h) == pytest.approx(math.sqrt(8 * h), rel=1e-9)


def test_rho_h_bound_examples():
    assert rho_h_bound(0.02, quadratic_profile(1.0, 2.0), 2.0) == pytest.approx(0.42, abs=1e-12)
    assert rho_h_bound(0.37, None, 0.0) == 0.37
    prof = ball_bound_profile(1.0)
    delta = prof.terminal
    assert rho_h_bound(delta, prof, 2.0) == pytest.approx(delta * (1 + 2.0 / delta))


def test_rho_h_bound_dominates_measured_rho():
    for eps in (0.02, 0.08):
        A, B = sharp_bound_pair(1.0, eps)
        h, rho = hausdorff(A, B).value, plis(A, B).value
        d = diameter(A)
        assert rho <= rho_h_bound(h, quadratic_profile(1 + eps, d), d)


def test_disk_and_point_bodies():
    d = disk_body([1, 2], 0.5, 1.0)
    assert support(d, [1, 0]) == pytest.approx(1.5)
    p = point_body([1, 2], 1.0)
    assert support(p, [0, 1]) == pytest.approx(2.0)
