import math

import numpy as np
import pytest

import sphaera.regions as rg
import sphaera.shapes as sh
import sphaera.sphere_core as sc
import sphaera.steiner as st
from sphaera.errors import DegeneracyError, DomainError, PreconditionError

X = np.array([1.0, 0.0, 0.0])
F = sc.Frame.standard()


def h_symmetric_quad(theta=0.35, phi=0.5):
    """Convex quadrilateral symmetric under theta -> -theta in the standard frame."""
    pts = [
        sc.from_polar(F, theta, -phi),
        sc.from_polar(F, theta, phi),
        sc.from_polar(F, -theta, phi),
        sc.from_polar(F, -theta, -phi),
    ]
    return rg.GeodesicPolygon(np.asarray(pts))


def skewed_pentagon():
    pts = [
        sc.from_polar(F, 0.42, -0.15),
        sc.from_polar(F, 0.25, 0.45),
        sc.from_polar(F, -0.18, 0.38),
        sc.from_polar(F, -0.40, -0.05),
        sc.from_polar(F, -0.05, -0.50),
    ]
    return rg.GeodesicPolygon(np.asarray(pts))


def test_slab_region_validation():
    t = np.array([0.0, 0.1, 0.2])
    iv = np.zeros((3, 2))
    with pytest.raises(DegeneracyError):
        st.SlabRegion(F, t[::-1], iv)  # decreasing grid
    with pytest.raises(DegeneracyError):
        st.SlabRegion(F, t, np.zeros((2, 2)))  # shape mismatch


def test_region_slab_area_matches_polygon():
    P = skewed_pentagon()
    slab = st.region_slab(P, F, levels=2048)
    assert st.area_slab(slab) == pytest.approx(P.area(), rel=1e-6)


def test_symmetral_is_h_symmetric_and_preserves_area():
    P = skewed_pentagon()
    slab = st.steiner_symmetral(P, F, levels=2048)
    assert slab.is_h_symmetric(tol=1e-12)
    assert st.area_slab(slab) == pytest.approx(P.area(), rel=1e-6)
    # widths agree slice-by-slice with the unsymmetrized slab
    raw = st.region_slab(P, F, levels=2048)
    m = slab.nonempty & raw.nonempty
    assert np.allclose(slab.widths[m], raw.widths[m], atol=1e-12)


def test_symmetral_fixes_h_symmetric_input():
    P = h_symmetric_quad()
    raw = st.region_slab(P, F, levels=1024)
    sym = st.steiner_symmetral(P, F, levels=1024)
    m = raw.nonempty
    assert np.allclose(sym.intervals[m], raw.intervals[m], atol=1e-9)


def test_symmetral_to_polygon_convex_and_close_in_area():
    P = skewed_pentagon()
    center = rg.circumdisk(P).center
    e1, _ = rg.tangent_basis(center)
    f = st.find_applicable_axis(P, center, e1)
    slab = st.steiner_symmetral(P, f, levels=1024)
    Q = st.symmetral_to_polygon(slab, target_vertices=512)
    assert Q.is_convex()
    assert Q.area() == pytest.approx(st.area_slab(slab), rel=1e-4)


def test_symmetrized_z_endpoints_identity():
    rng = np.random.default_rng(7)
    for _ in range(50):
        z1 = rng.uniform(-3.0, 3.0)
        z2 = z1 + rng.uniform(0.0, 3.0)
        zs, z_neg = st.symmetrized_z_endpoints(z1, z2)
        assert z_neg == -zs
        # tangent half-angle of the recentered arc
        expect = math.tan(0.5 * (math.atan(z2) - math.atan(z1)))
        assert zs == pytest.approx(expect, abs=1e-14)


def test_symmetrized_z_endpoints_domain():
    with pytest.raises(DomainError):
        st.symmetrized_z_endpoints(1.0, 0.0)
    with pytest.raises(DomainError):
        st.symmetrized_z_endpoints(0.0, math.inf)


def test_find_applicable_axis_yields_monotone_frame():
    P = skewed_pentagon()
    center = rg.circumdisk(P).center
    e1, e2 = rg.tangent_basis(center)
    for ang in (0.0, 0.7, 2.1):
        d = math.cos(ang) * e1 + math.sin(ang) * e2
        f = st.find_applicable_axis(P, center, d)
        assert rg.connectedness_check(P, f)
        assert rg.angular_monotonicity_check(P, f)


def test_verify_monotonicity_report():
    rng = np.random.default_rng(11)
    P = sh.random_c_symmetric_polygon(rng, center=X)
    center = rg.circumdisk(P).center
    e1, _ = rg.tangent_basis(center)
    f = sc.Frame(center, e1, np.cross(center, e1))
    rep = st.verify_monotonicity(P, f, levels=1024)
    assert rep.area_after == pytest.approx(rep.area_before, rel=1e-5)
    assert rep.perim_after <= rep.perim_before + 1e-6
    assert rep.diam_after <= rep.diam_before + 1e-6
    assert rep.convex_after
    assert rep.angularly_monotone_input


def test_converge_to_cap_square():
    theta = 0.4
    pts = [
        sc.from_polar(F, theta, -theta),
        sc.from_polar(F, theta, theta),
        sc.from_polar(F, -theta, theta),
        sc.from_polar(F, -theta, -theta),
    ]
    P = rg.GeodesicPolygon(np.asarray(pts))
    traj = st.converge_to_cap(P, eps=1e-2, max_iters=200)
    assert traj.converged
    assert traj.iterations <= 200
    assert traj.rows[-1][5] <= 1e-2  # final Hausdorff distance to the cap
    # area drift over the whole run
    assert traj.rows[-1][1] == pytest.approx(P.area(), rel=1e-3)
    # iteration column counts up from zero
    assert [r[0] for r in traj.rows] == list(range(len(traj.rows)))


def test_converge_rejects_unknown_strategy():
    P = h_symmetric_quad()
    with pytest.raises(DomainError):
        st.converge_to_cap(P, eps=1e-2, strategy="spiral")
