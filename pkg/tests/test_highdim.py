import math

import numpy as np
import pytest

import sphaera.highdim as hd
import sphaera.steiner as st
from sphaera.errors import ArgumentError, DomainError, PreconditionError, SingularityError

LP = hd.LunePair(1.0, 2.0, 3.0, 3.0, 1.0)


def test_lune_pair_validation():
    with pytest.raises(ArgumentError):
        hd.LunePair(-1.0, 2.0, 3.0, 3.0, 1.0)  # x0 <= 0
    with pytest.raises(ArgumentError):
        hd.LunePair(1.0, 3.0, 3.0, 2.0, 1.0)  # A_plus >= A_minus
    with pytest.raises(ArgumentError):
        LP.coeffs("0")


def test_zstar_plane_residual_on_grid():
    r = LP.safe_radius()
    g = np.linspace(-r, r, 41)
    checked = 0
    for du in g:
        for dv in g:
            if math.hypot(du, dv) > r:
                continue
            u, v = LP.x0 + du, dv
            for sign in "+-":
                z = hd.zstar(LP, sign, u, v)
                assert abs(hd.plane_residual(LP, sign, u, v, z)) <= 1e-10
            checked += 1
    assert checked > 1000


def test_zstar_vanishes_at_base_point():
    assert hd.zstar(LP, "+", LP.x0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert hd.zstar(LP, "-", LP.x0, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_zstar_domain_guard():
    with pytest.raises(DomainError):
        hd.zstar(LP, "+", 1.5 * LP.x0, 0.0)  # outside the working disk


def test_zstar_singularity():
    # A_plus x0 = 1 puts |A u + B v| = 1 exactly at the base point
    lp = hd.LunePair(10.0, 0.1, 0.0, 0.2, 0.0)
    with pytest.raises(SingularityError):
        hd.zstar(lp, "+", lp.x0, 0.0)


def test_symmetral_surface_height_identity():
    rng = np.random.default_rng(17)
    r = LP.safe_radius()
    for _ in range(50):
        rho = r * math.sqrt(rng.random())
        ang = rng.uniform(0.0, 2.0 * math.pi)
        u, v = LP.x0 + rho * math.cos(ang), rho * math.sin(ang)
        zp = hd.zstar(LP, "+", u, v)
        zm = hd.zstar(LP, "-", u, v)
        zs, _ = st.symmetrized_z_endpoints(min(zp, zm), max(zp, zm))
        pt = hd.symmetral_surface(LP, u, v)
        assert abs(abs(pt[2]) - zs) <= 1e-12
        # the (u, v) footprint is preserved up to the fiber scaling
        w = math.sqrt(1.0 + pt[2] ** 2)
        assert pt[0] == pytest.approx(w * u, abs=1e-12)
        assert pt[1] == pytest.approx(w * v, abs=1e-12)


def test_fd_F_matches_closed_form_across_tuples():
    rng = np.random.default_rng(23)
    found = 0
    while found < 20:
        x0 = rng.uniform(0.5, 2.0)
        a = sorted(rng.uniform(-3.0, 3.0, 2))
        b = rng.uniform(-3.0, 3.0, 2)
        lp = hd.LunePair(x0, a[0], b[0], a[1], b[1])
        exact = hd.closed_form_F_at_p0(lp)
        if abs(exact) < 1.0:  # stay clear of the degenerate locus (FD error floor)
            continue
        fd = hd.gaussian_sign_F(lp, lp.x0, 0.0)
        assert fd == pytest.approx(exact, rel=1e-4)
        assert fd <= 0.0
        found += 1


def test_F_scales_with_x0_squared():
    base = hd.LunePair(1.0, 2.0, 3.0, 3.0, 1.0)
    ref = hd.closed_form_F_at_p0(base)
    for x0 in (0.7, 1.3):  # keep A x0 away from 1 (fiber-tangency singularity)
        lp = hd.LunePair(x0, 2.0, 3.0, 3.0, 1.0)
        assert hd.closed_form_F_at_p0(lp) == pytest.approx(ref * x0**2, rel=1e-12)
        assert hd.gaussian_sign_F(lp, x0, 0.0) == pytest.approx(ref * x0**2, rel=1e-4)


def test_F_zero_locus():
    # F(x0, 0) vanishes exactly when A_minus B_plus = A_plus B_minus
    lp = hd.LunePair(1.0, 0.5, 1.0, 1.5, 3.0)
    assert hd.closed_form_F_at_p0(lp) == 0.0
    assert abs(hd.gaussian_sign_F(lp, 1.0, 0.0)) < 1e-4  # FD noise floor
    off = hd.LunePair(1.0, 0.5, 1.0, 1.5, 3.5)
    assert hd.closed_form_F_at_p0(off) < 0.0


def test_projection_convexity_random_triangles():
    rng = np.random.default_rng(29)
    for _ in range(200):
        tri = [np.zeros(3)]
        for _ in range(2):
            tri.append(np.array([rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-2, 2)]))
        res = hd.projection_convexity_test(tri)
        assert res.convex_ok
        assert res.x_chord >= res.x_fiber - 1e-12


def test_projection_convexity_equal_heights_is_tight():
    # equal heights normalize to zbar = 0: the chord midpoint is on the fiber
    p = np.array([0.3, 0.4, 0.7])
    q = np.array([0.4, -0.3, 0.7])
    res = hd.projection_convexity_test([np.zeros(3), p, q])
    assert res.x_chord == pytest.approx(res.x_fiber, abs=1e-14)


def test_projection_convexity_degenerate_and_errors():
    on_L = hd.projection_convexity_test([np.zeros(3), np.array([0.0, 0.0, 0.5]),
                                         np.array([0.2, 0.1, 0.0])])
    assert on_L.convex_ok
    with pytest.raises(PreconditionError):
        hd.projection_convexity_test([np.ones(3), np.array([0.1, 0, 0]), np.array([0, 0.1, 0])])
    with pytest.raises(ArgumentError):
        hd.projection_convexity_test([np.zeros(3), np.array([0.1, 0, 0])])


def test_mc_volume_preserved_within_3_sigma():
    res = hd.mc_volume_check(LP, phi_rotation=0.3, samples=10**6, seed=5)
    assert abs(res.vol_before - res.vol_after) <= 3.0 * res.stderr
    assert res.vol_before > 0.0


def test_mc_stderr_scales_like_inverse_sqrt():
    r1 = hd.mc_volume_check(LP, samples=10**6, seed=1)
    r2 = hd.mc_volume_check(LP, samples=2 * 10**6, seed=1)
    assert r2.stderr / r1.stderr == pytest.approx(1.0 / math.sqrt(2.0), rel=0.1)
