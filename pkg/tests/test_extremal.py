import math

import numpy as np
import pytest

import sphaera.extremal as ex
import sphaera.regions as rg
import sphaera.shapes as sh
from sphaera.errors import DomainError

X = np.array([1.0, 0.0, 0.0])


def test_sas_constant_matches_regular_polygon_area():
    for r in (math.pi / 6, math.pi / 4, math.pi / 3):
        for N in range(3, 9):
            P = ex.cap_regular_polygon(r, N, X)
            assert P.area() == pytest.approx(ex.sas_constant(r, N), abs=1e-12)


def test_sas_constant_limits():
    r = 0.7
    cap_area = 2.0 * math.pi * (1.0 - math.cos(r))
    vals = [ex.sas_constant(r, N) for N in (3, 4, 8, 32, 256)]
    assert all(b > a for a, b in zip(vals, vals[1:]))  # increasing in N
    assert vals[-1] == pytest.approx(cap_area, rel=1e-3)
    assert vals[-1] < cap_area


def test_cap_regular_polygon_is_regular():
    P = ex.cap_regular_polygon(0.6, 7, X)
    assert P.is_convex()
    L = P.edge_lengths
    assert np.allclose(L, L[0], atol=1e-12)
    assert np.allclose(P.interior_angles(), P.interior_angles()[0], atol=1e-12)


def test_max_inscribed_polygon_in_cap_recovers_regular():
    cap = rg.CapSpec(X, 0.5)
    sol = ex.max_inscribed_polygon(cap, 5, restarts=2, seed=3)
    assert sol.area == pytest.approx(ex.sas_constant(0.5, 5), abs=1e-8)
    # all vertices on the cap boundary
    for v in sol.polygon.vertices:
        assert float(np.dot(v, X)) == pytest.approx(math.cos(0.5), abs=1e-12)


def test_max_inscribed_polygon_in_polygon():
    rng = np.random.default_rng(21)
    K = sh.random_c_symmetric_polygon(rng, center=X)
    sol = ex.max_inscribed_polygon(K, 5, restarts=2, seed=0)
    assert sol.area <= K.area() + 1e-12
    for v in sol.polygon.vertices:
        assert K.contains(v, tol=1e-9)


def test_max_inscribed_polygon_degenerate_and_errors():
    tri = ex.cap_regular_polygon(0.4, 3, X)
    sol = ex.max_inscribed_polygon(tri, 3)
    assert sol.polygon is tri  # N-gon inscribed in an N-gon is the N-gon
    with pytest.raises(DomainError):
        ex.max_inscribed_polygon(tri, 2)


def test_extremal_driver_perimeter_min():
    rng = np.random.default_rng(5)
    K = sh.random_c_symmetric_polygon(rng, center=X)

    def perim(R):
        if isinstance(R, rg.CapSpec):
            return R.boundary_circumference()
        return R.perimeter()

    res = ex.extremal_driver(K, perim, "min", iters=8, levels=256)
    assert res.verdict
    assert min(res.values) >= res.cap_value - 1e-3
    with pytest.raises(DomainError):
        ex.extremal_driver(K, perim, "sideways")
