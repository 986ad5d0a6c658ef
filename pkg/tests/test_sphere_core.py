import math

import numpy as np
import pytest

import sphaera.sphere_core as sc
from sphaera.errors import ArgumentError, DegeneracyError, DomainError

X = np.array([1.0, 0.0, 0.0])
Y = np.array([0.0, 1.0, 0.0])
Z = np.array([0.0, 0.0, 1.0])


def test_as_unit_vector_rejects_non_unit():
    with pytest.raises(ArgumentError):
        sc.as_unit_vector([1.0, 1.0, 0.0])


def test_sph_dist_basics():
    assert sc.sph_dist(X, X) == 0.0
    assert sc.sph_dist(X, Y) == pytest.approx(math.pi / 2, abs=1e-15)
    assert sc.sph_dist(X, -X) == pytest.approx(math.pi, abs=1e-15)


def test_slerp_endpoints_and_midpoint():
    assert np.allclose(sc.slerp(X, Y, 0.0), X)
    assert np.allclose(sc.slerp(X, Y, 1.0), Y)
    mid = sc.slerp(X, Y, 0.5)
    assert sc.sph_dist(X, mid) == pytest.approx(math.pi / 4, abs=1e-12)


def test_rotation_matrix_is_orthogonal():
    rng = np.random.default_rng(0)
    for _ in range(10):
        R = sc.rotation_matrix(sc.unit(rng.normal(size=3)), rng.uniform(-3, 3))
        assert np.allclose(R @ R.T, np.eye(3), atol=1e-14)
        assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-12)


def test_rotation_taking_maps_a_to_b():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = sc.unit(rng.normal(size=3))
        b = sc.unit(rng.normal(size=3))
        assert np.allclose(sc.rotation_taking(a, b) @ a, b, atol=1e-12)


def test_frame_validation():
    with pytest.raises(ArgumentError):
        sc.Frame(X, X, Z)  # not orthogonal
    with pytest.raises(ArgumentError):
        sc.Frame(X, Z, Y)  # left-handed
    f = sc.Frame(X, Y, Z)
    assert np.allclose(np.cross(f.c, f.e_l), f.e_p)


def test_polar_roundtrip():
    f = sc.Frame.standard()
    rng = np.random.default_rng(2)
    for _ in range(50):
        theta = rng.uniform(-1.4, 1.4)
        phi = rng.uniform(-1.4, 1.4)
        p = sc.from_polar(f, theta, phi)
        pc = sc.to_polar(f, p)
        assert pc.theta == pytest.approx(theta, abs=1e-12)
        assert pc.phi == pytest.approx(phi, abs=1e-12)


def test_to_polar_domain_errors():
    f = sc.Frame.standard()
    with pytest.raises(DomainError):
        sc.to_polar(f, -X)  # outside the open hemisphere
    with pytest.raises(DomainError):
        sc.to_polar(f, Z)  # pole


def test_rotate_about_poles_preserves_theta():
    f = sc.Frame.standard()
    p = sc.from_polar(f, 0.4, 0.2)
    q = sc.rotate_about_poles(f, p, 0.3)
    assert sc.to_polar(f, q).theta == pytest.approx(0.4, abs=1e-12)
    assert sc.to_polar(f, q).phi == pytest.approx(0.5, abs=1e-12)


def test_triangle_area_octant():
    # one-eighth of the sphere
    assert sc.triangle_area(X, Y, Z) == pytest.approx(math.pi / 2, abs=1e-12)


def test_triangle_area_flat_limit_heron():
    # tiny triangle: spherical area approaches the Euclidean (Heron) value
    s = 1e-3
    a = X
    b = sc.from_polar(sc.Frame.standard(), 0.0, s)
    c = sc.from_polar(sc.Frame.standard(), s, 0.0)
    heron = 0.5 * s * s
    assert sc.triangle_area(a, b, c) == pytest.approx(heron, rel=1e-5)


def test_triangle_area_orientation_free():
    rng = np.random.default_rng(3)
    a, b, c = (sc.unit(X + 0.3 * rng.normal(size=3)) for _ in range(3))
    assert sc.triangle_area(a, b, c) == pytest.approx(sc.triangle_area(c, b, a), abs=1e-14)


def test_lexell_locus_preserves_area():
    rng = np.random.default_rng(4)
    f = sc.Frame.standard()
    x = sc.from_polar(f, -0.2, -0.4)
    y = sc.from_polar(f, -0.1, 0.5)
    z = sc.from_polar(f, 0.6, 0.1)
    center, radius = sc.lexell_area_locus(x, y, z)
    area0 = sc.triangle_area(x, y, z)
    # walk along the circle near z and compare areas
    t0 = sc.unit(np.cross(center, z))
    for eps in (-0.02, 0.01, 0.03):
        w = sc.unit(math.cos(eps) * (z - float(np.dot(z, center)) * center)
                    + math.sin(eps) * t0 * math.sin(radius) / max(np.linalg.norm(
                        z - float(np.dot(z, center)) * center), 1e-300)
                    * np.linalg.norm(z - float(np.dot(z, center)) * center)
                    + float(np.dot(z, center)) * center)
        assert sc.sph_dist(center, w) == pytest.approx(radius, abs=1e-9)
        assert sc.triangle_area(x, y, w) == pytest.approx(area0, abs=1e-9)


def test_lexell_degenerate_base():
    with pytest.raises(DegeneracyError):
        sc.lexell_area_locus(X, X, Z)


def test_gnomonic_roundtrip_and_geodesics():
    f = sc.Frame(X, Y, Z)
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = sc.unit(X + 0.5 * rng.normal(size=3))
        uv = sc.gnomonic_project(f, p)
        assert np.allclose(sc.gnomonic_unproject(f, uv), p, atol=1e-12)
    # geodesic through two points maps to a straight segment
    a = sc.unit([1.0, 0.2, -0.1])
    b = sc.unit([1.0, -0.3, 0.4])
    ua, ub = sc.gnomonic_project(f, a), sc.gnomonic_project(f, b)
    um = sc.gnomonic_project(f, sc.slerp(a, b, 0.37))
    cross = (ub - ua)[0] * (um - ua)[1] - (ub - ua)[1] * (um - ua)[0]
    assert abs(cross) < 1e-14


def test_gnomonic_rejects_far_hemisphere():
    with pytest.raises(DomainError):
        sc.gnomonic_project(sc.Frame.standard(), -X)


def test_distance_curve_hyperbola_model():
    f = sc.Frame.standard()
    for theta in (0.0, 0.3, -0.7):
        model = sc.distance_curve_hyperbola(theta)
        for phi in (-0.8, 0.0, 0.5):
            p = sc.distance_curve_point(f, theta, phi)
            y, z = sc.gnomonic_project(f, p)
            assert abs(model.residual(y, z)) < 1e-12
            if not model.is_line:
                assert math.copysign(1, z) == model.branch_sign


def test_distance_curve_domain():
    f = sc.Frame.standard()
    with pytest.raises(DomainError):
        sc.distance_curve_point(f, math.pi / 2, 0.0)
    with pytest.raises(DomainError):
        sc.distance_curve_hyperbola(math.pi / 2)
