import math

import numpy as np
import pytest

from plismetric.approx import (
    DegenerateFamily,
    ParametricFamily,
    argmax_selection,
    cauchy_demo,
    ellipse_divergence_demo,
    holder_bound,
    holder_estimate,
    proof_constant,
    sharpness_family,
    smooth_approx,
    smoothing_radius,
    sup_gap_cones,
    sup_gap_demo,
    translation_family,
)
from plismetric.bodies import Ball, LinearImage, Polytope, contains, exposed_face
from plismetric.metrics import SamplerSpec, hausdorff, plis
from plismetric.strongconv import arc_minkowski_sum, modulus_estimate, strong_hull_2d


def two_point_family():
    def evaluate(t):
        th = t * math.pi / 3
        return Polytope([[0.0, 0.0], [0.8 * math.cos(th), 0.8 * math.sin(th)]])

    return ParametricFamily(evaluate, bound_r=0.5, grid=np.linspace(0, 1, 16))


def lens_top(x, y, R, p):
    """Face of the lens through x and y: an arc point if it lies in the other disk, else a corner."""
    d = y - x
    n = np.array([-d[1], d[0]]) / np.linalg.norm(d)
    off = math.sqrt(R * R - d @ d / 4)
    mid = 0.5 * (x + y)
    centers = [mid + off * n, mid - off * n]
    cands = [c + R * p for c, other in zip(centers, centers[::-1])
             if np.linalg.norm(c + R * p - other) <= R + 1e-12]
    cands += [x, y]
    return max(cands, key=lambda z: p @ z)


def test_smoothing_radius():
    assert smoothing_radius(1.0, 0.1) == 10.0
    assert smoothing_radius(1.0, 0.9) == 2.0


def test_fixed_square_is_close_to_its_smoothing():
    sq = Polytope([[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]])
    fam = ParametricFamily(lambda t: sq, bound_r=math.sqrt(0.5), grid=np.linspace(0, 1, 8))
    sm = smooth_approx(fam, 0.1)
    for t in fam.grid:
        assert all(contains(sm(t), v) for v in sq.vertices)
        assert hausdorff(sq, sm(t)).value <= 0.1


def test_arc_body_family_is_kept():
    body = strong_hull_2d([[0, 0], [0.5, 0.2]], 1.0)
    fam = ParametricFamily(lambda t: body, bound_r=1.0)
    sm = smooth_approx(fam, 0.5)
    assert sm.radius >= 1.0
    assert sm(0.3) is body


def test_fixed_disk_argmax():
    fam = ParametricFamily(lambda t: Ball([1.0, 2.0], 0.5), bound_r=0.5)
    sm = smooth_approx(fam, 0.2)
    p = np.array([0.6, 0.8])
    np.testing.assert_allclose(argmax_selection(sm, 0.4, p), [1.3, 2.4], atol=1e-12)


def test_two_point_family_matches_lens_oracle():
    fam = two_point_family()
    sm = smooth_approx(fam, 0.1)
    R = sm.radius
    assert R == 2.5
    p = np.array([0.0, 1.0])
    prev = None
    for t in fam.grid:
        x, y = fam(t).vertices
        got = argmax_selection(sm, t, p)
        np.testing.assert_allclose(got, lens_top(x, y, R, p), atol=1e-9)
        if prev is not None:
            assert np.linalg.norm(got - prev) < 0.2
        prev = got
    np.testing.assert_array_equal(argmax_selection(sm, 0.5, p), argmax_selection(sm, 0.5, p))


def test_argmax_parameter_range():
    sm = smooth_approx(two_point_family(), 0.1)
    with pytest.raises(ValueError):
        argmax_selection(sm, 1.5, [0, 1])


def test_eps_range():
    with pytest.raises(ValueError):
        smooth_approx(two_point_family(), 1.0)


def test_argmax_faces_are_singletons():
    sm = smooth_approx(two_point_family(), 0.1)
    for t in sm.grid:
        for th in np.linspace(0, 2 * np.pi, 32, endpoint=False):
            assert exposed_face(sm(t), [math.cos(th), math.sin(th)]).is_singleton


def test_family_check_rejects_wrong_radius():
    fam = ParametricFamily(lambda t: Polytope([[0, 0], [3, 0]]), bound_r=1.0, grid=[0.0])
    with pytest.raises(ValueError):
        fam.check()
    with pytest.raises(ValueError):
        ParametricFamily(lambda t: Ball([0, 0], 1), bound_r=0.0)


def test_translation_family_slope_is_one():
    base = Polytope([[0.3, 0.0], [0.0, 0.4], [-0.3, -0.1]])
    fam = translation_family(base, [0.2, 0.1], bound_r=1.0)
    rep = holder_estimate(fam, 0.2, [0.0, 1.0], n_pairs=60)
    assert rep.exponent == pytest.approx(1.0, abs=1e-3)
    assert rep.violations == 0 and rep.pairs_used >= 8


def test_constant_family_is_degenerate():
    fam = ParametricFamily(lambda t: Ball([0, 0], 0.5), bound_r=0.5, grid=np.linspace(0, 1, 10))
    with pytest.raises(DegenerateFamily):
        holder_estimate(fam, 0.1, [0, 1])


def test_holder_bound_shape():
    C = proof_constant(1.0, 10.0)
    assert C == pytest.approx(max(math.sqrt(11 / 9), 1 + 1 / 90))
    assert holder_bound(0.0, 1.0, 10.0, 1.6) == 0.0
    assert holder_bound(1e-4, 1.0, 10.0, 1.6) < holder_bound(1e-3, 1.0, 10.0, 1.6)


def test_smoothed_family_shares_quadratic_modulus():
    fam = sharpness_family(n_grid=8)
    sm = smooth_approx(fam, 0.1)
    R = sm.radius
    for t in (fam.grid[0], fam.grid[4], fam.grid[-1]):
        for s in (0.3, 0.8, 1.2):
            assert modulus_estimate(sm(t), s) >= s * s / (8 * R) - 2e-3


def _moving_hull(t):
    th = 2.0 * t
    pts = [[0, 0], [0.6 * math.cos(th), 0.6 * math.sin(th)], [0.2, -0.4 + 0.1 * t]]
    return strong_hull_2d(pts, 1.5)


def _modulus_of_continuity(F, n):
    spec = SamplerSpec(count=4096)
    grid = np.linspace(0, 1, n + 1)
    return max(plis(F(a), F(b), spec).value for a, b in zip(grid, grid[1:]))


def test_sum_and_linear_image_are_rho_continuous():
    other = strong_hull_2d([[0, 0], [0.3, 0.3]], 1.0)
    L = np.array([[1.0, 0.4], [0.0, 0.7]])
    families = [
        lambda t: arc_minkowski_sum(_moving_hull(t), other),
        lambda t: LinearImage(L, _moving_hull(t)),
    ]
    for F in families:
        omegas = [_modulus_of_continuity(F, n) for n in (4, 16, 64)]
        assert omegas[0] > omegas[1] > omegas[2]


def test_ellipse_demo():
    rep = ellipse_divergence_demo(16)
    assert rep.passed
    assert rep.rows[0][1] == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(ValueError):
        ellipse_divergence_demo(2)


def test_sup_gap_demo():
    rep = sup_gap_demo(360)
    assert rep.passed
    assert all(v < math.sqrt(5) for _, v, _ in rep.rows)
    with pytest.raises(ValueError):
        sup_gap_demo(12)


def test_sup_gap_faces_have_expected_types():
    A, B, _ = sup_gap_cones(72)
    th = -2 * np.pi / 72 * 5
    a = np.array([1 + math.cos(th), math.sin(th), 0.0])
    n = np.cross([-math.sin(th), math.cos(th), 0.0], a - [0, 0, 1])
    n = -n if n[0] < 0 else n
    p = n / np.linalg.norm(n)
    assert len(exposed_face(A, p).points) == 2
    assert exposed_face(B, p).is_singleton


def test_cauchy_demo():
    rep = cauchy_demo(5)
    assert rep.passed
    # lens corners move by 1/k - 1/m
    for k, m, d, _, _ in rep.rows:
        assert d == pytest.approx(1 / k - 1 / m, abs=1e-6)


def test_constant_sequence_distance_is_zero():
    body = strong_hull_2d([[0, 0], [1, 0]], 2.0)
    again = strong_hull_2d([[0, 0], [1, 0]], 2.0)
    assert plis(body, again).value == 0.0
