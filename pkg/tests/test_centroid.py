import math

import numpy as np
import pytest

import sphaera.centroid as ct
import sphaera.extremal as ex
import sphaera.regions as rg
import sphaera.shapes as sh
import sphaera.sphere_core as sc

X = np.array([1.0, 0.0, 0.0])


def test_raw_moment_vector_of_regular_polygon_points_at_center():
    P = ex.cap_regular_polygon(0.5, 6, X)
    v = ct.raw_moment_vector(P)
    assert np.allclose(sc.unit(v), X, atol=1e-12)
    assert ct.spherical_centroid(P) == pytest.approx(X, abs=1e-12)


def test_raw_moment_vector_matches_quadrature():
    # independent oracle: midpoint quadrature of int_P p dsigma in polar slices
    rng = np.random.default_rng(31)
    P = sh.random_c_symmetric_polygon(rng, center=X)
    f = sc.Frame.standard()
    t_lo, t_hi = rg.theta_range(P, f)
    n = 2000
    thetas = np.linspace(t_lo, t_hi, n + 1)
    mids = 0.5 * (thetas[:-1] + thetas[1:])
    acc = np.zeros(3)
    for tm, dt in zip(mids, np.diff(thetas)):
        iv = rg.slice_angular_interval(P, f, tm)
        if iv is None:
            continue
        phis = np.linspace(iv[0], iv[1], 64)
        pts = np.array([sc.from_polar(f, tm, p) for p in phis])
        # dsigma = cos(theta) dtheta dphi on distance-curve coordinates
        acc += np.trapezoid(pts, x=phis, axis=0) * math.cos(tm) * dt
    assert np.allclose(ct.raw_moment_vector(P), acc, atol=1e-5)


def test_moment_antisymmetry():
    rng = np.random.default_rng(8)
    P = sh.random_c_symmetric_polygon(rng, center=X)
    n = sc.unit([0.1, 0.7, -0.4])
    assert ct.moment(P, n) == pytest.approx(-ct.moment(P, -n), abs=1e-15)


def test_halving_cut_parts():
    rng = np.random.default_rng(12)
    P = sh.random_c_symmetric_polygon(rng, center=X)
    cut = ct.halving_cut(P, 0.8)
    k1, k2 = cut.parts
    assert k1.area() + k2.area() == pytest.approx(P.area(), rel=1e-10)
    # point symmetry about the centroid forces an exact halving
    assert cut.ratio == pytest.approx(1.0, abs=1e-9)


def test_halving_cut_lever_rule():
    # parts of a cut through the spherical centroid carry equal and opposite
    # moments about the cut circle
    rng = np.random.default_rng(13)
    P = sh.random_c_symmetric_polygon(rng, center=X)
    for direction in (0.0, 0.6, 1.9):
        cut = ct.halving_cut(P, direction)
        m1 = ct.moment(cut.parts[0], cut.normal)
        m2 = ct.moment(cut.parts[1], cut.normal)
        assert m1 + m2 == pytest.approx(0.0, abs=1e-10)
        assert abs(m1) > 1e-6  # the individual moments are not trivially zero


def test_round_corners_smooths_without_moving_area():
    P = ex.cap_regular_polygon(0.5, 5, X)
    Q = ct.round_corners(P, radius=5e-3)
    assert len(Q) > len(P)
    assert Q.is_convex()
    assert Q.area() == pytest.approx(P.area(), rel=1e-3)
    assert Q.area() < P.area()  # rounding only removes material


def test_near_euclidean_triangle_halving_ratio():
    # flat limit: the worst centroid halving of a triangle has ratio 5/4
    s = 2e-3
    f = sc.Frame.standard()
    pts = [
        sc.from_polar(f, 0.0, 0.0),
        sc.from_polar(f, 0.0, s),
        sc.from_polar(f, s, 0.4 * s),
    ]
    P = rg.GeodesicPolygon(np.asarray(pts))
    worst = max(
        max(c.ratio, 1.0 / c.ratio)
        for c in (ct.halving_cut(P, a) for a in np.linspace(0.0, math.pi, 400, endpoint=False))
    )
    assert worst == pytest.approx(1.25, abs=1e-3)


def test_winternitz_comparator_on_oval():
    K = sh.random_c_symmetric_oval_samples(2, center=X)
    import sphaera.floating as fl

    P = fl.SmoothBoundary(K).to_polygon(256)
    cut = ct.halving_cut(P, 1.1)
    res = ct.winternitz_comparator(P, cut)
    assert abs(res.moment_residual_1) <= 1e-8
    assert abs(res.moment_residual_2) <= 1e-8
    assert res.ratio_region <= res.ratio_triangle + 1e-6
    # the comparator triangle is centred on the same cut
    assert np.allclose(ct.spherical_centroid(res.triangle), cut.center, atol=1e-6)
