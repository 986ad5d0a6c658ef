"""Inscribed-polygon extremal machinery.

A_N(K) is the largest area of an N-gon inscribed in a convex region K; for
caps the optimum is the regular N-gon and its area has the closed form
C(r, N).  The optimizer is cyclic coordinate ascent over boundary parameters
with golden-section line searches, run from a regular initialization plus
random restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import regions as rg
from . import sphere_core as sc
from .errors import ArgumentError, DomainError, PreconditionError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sas_constant(r: float, N: int) -> float:
    """Area of the regular N-gon inscribed in a cap of radius r.

    C(r, N) = 2N arctan(cos(pi/N) / (sin(pi/N) cos r)) - (N-2) pi.
    """
    if not (0.0 < r < math.pi / 2):
        raise DomainError(f"radius {r} outside (0, pi/2)")
    if N < 3:
        raise DomainError(f"N={N} below 3")
    t = math.pi / N
    return 2.0 * N * math.atan(math.cos(t) / (math.sin(t) * math.cos(r))) - (N - 2) * math.pi


def cap_regular_polygon(r: float, N: int, center) -> rg.GeodesicPolygon:
    """Regular N-gon inscribed in cap(center, r)."""
    if not (0.0 < r < math.pi / 2):
        raise DomainError(f"radius {r} outside (0, pi/2)")
    if N < 3:
        raise DomainError(f"N={N} below 3")
    cap = rg.CapSpec(center, r)
    return rg.GeodesicPolygon(cap.boundary_points(N))


# ---------------------------------------------------------------------------
# boundary parametrizations
# ---------------------------------------------------------------------------

class _CapBoundary:
    def __init__(self, cap: rg.CapSpec):
        self.cap = cap
        e1, e2 = rg.tangent_basis(cap.center)
        self._rim1 = math.sin(cap.radius) * e1
        self._rim2 = math.sin(cap.radius) * e2
        self._axis = math.cos(cap.radius) * cap.center
        self.period = 2.0 * math.pi

    def point(self, t: float):
        return self._axis + math.cos(t) * self._rim1 + math.sin(t) * self._rim2


class _PolygonBoundary:
    def __init__(self, P: rg.GeodesicPolygon):
        self.P = P
        self._cum = np.concatenate([[0.0], np.cumsum(P.edge_lengths)])
        self.period = float(self._cum[-1])

    def point(self, t: float):
        t = t % self.period
        i = int(np.searchsorted(self._cum, t, side="right")) - 1
        i = min(i, len(self.P.vertices) - 1)
        s = t - self._cum[i]
        return math.cos(s) * self.P.vertices[i] + math.sin(s) * self.P.edge_tangents[i]


class _SmoothBoundaryParam:
    """Adapter over any object exposing point_at(s) and total_length."""

    def __init__(self, K):
        self.K = K
        self.period = float(K.total_length)

    def point(self, t: float):
        return self.K.point_at(t % self.period)


def _boundary_of(K):
    if isinstance(K, rg.CapSpec):
        return _CapBoundary(K)
    if isinstance(K, rg.GeodesicPolygon):
        if not K.is_convex():
            raise PreconditionError("inscribed-polygon search requires a convex region")
        return _PolygonBoundary(K)
    if hasattr(K, "point_at") and hasattr(K, "total_length"):
        return _SmoothBoundaryParam(K)
    raise ArgumentError(f"unsupported region type {type(K).__name__}")


# ---------------------------------------------------------------------------
# maximal inscribed polygon
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InscribedSolution:
    polygon: rg.GeodesicPolygon
    area: float
    boundary_params: np.ndarray
    restarts_used: int


def _polygon_area(pts):
    # Girard excess without constructing a GeodesicPolygon (hot path)
    n = len(pts)
    total = 0.0
    for i in range(n):
        v = pts[i]
        t1 = pts[i - 1] - np.dot(pts[i - 1], v) * v
        t2 = pts[(i + 1) % n] - np.dot(pts[(i + 1) % n], v) * v
        n1 = np.linalg.norm(t1)
        n2 = np.linalg.norm(t2)
        if n1 < 1e-15 or n2 < 1e-15:
            return 0.0
        cosa = sc.clamp(float(np.dot(t1, t2)) / (n1 * n2))
        sina = float(np.dot(np.cross(t2 / n2, t1 / n1), v))
        a = math.atan2(sina, cosa)
        total += a + 2.0 * math.pi if a < 0.0 else a
    return total - (n - 2) * math.pi


def _ascend(bd, params, param_tol=1e-9, area_tol=1e-10, max_sweeps=200):
    N = len(params)
    period = bd.period
    params = np.sort(np.asarray(params, dtype=float) % period)
    pts = [bd.point(t) for t in params]
    area = _polygon_area(pts)
    stale = 0
    for _ in range(max_sweeps):
        gained = 0.0
        for i in range(N):
            lo = params[(i - 1) % N]
            hi = params[(i + 1) % N]
            if hi <= lo:
                hi += period
            ti = params[i] if params[i] >= lo else params[i] + period
            a_prev = pts[(i - 1) % N]
            a_next = pts[(i + 1) % N]
            base = sc.sph_dist(a_prev, a_next)

            def tri(t):
                p = bd.point(t)
                if base < 1e-12:
                    return 0.0
                return sc.triangle_area(a_prev, p, a_next)

            # golden-section maximization of the local triangle area
            a, b = lo + 1e-12, hi - 1e-12
            x1 = b - _GOLDEN * (b - a)
            x2 = a + _GOLDEN * (b - a)
            f1, f2 = tri(x1), tri(x2)
            while b - a > param_tol:
                if f1 < f2:
                    a, x1, f1 = x1, x2, f2
                    x2 = a + _GOLDEN * (b - a)
                    f2 = tri(x2)
                else:
                    b, x2, f2 = x2, x1, f1
                    x1 = b - _GOLDEN * (b - a)
                    f1 = tri(x1)
            t_new = 0.5 * (a + b)
            if tri(t_new) > tri(ti):
                gained += tri(t_new) - tri(ti)
                params[i] = t_new % period
                pts[i] = bd.point(params[i])
        new_area = _polygon_area(pts)
        if new_area > area:
            area = new_area
        stale = stale + 1 if gained < area_tol else 0
        if stale >= 2:
            break
    order = np.argsort(params)
    return params[order], [pts[i] for i in order], area


def max_inscribed_polygon(K, N: int, restarts: int = 8, seed: int = 0,
                          symmetric_center=None) -> InscribedSolution:
    """Locally maximal inscribed N-gon, best over restarts.

    One restart starts from the uniform (regular) parameter placement; the
    rest are random.  For a region known to be symmetric about
    ``symmetric_center`` the result is verified to contain that point.
    """
    if N < 3:
        raise DomainError(f"N={N} below 3")
    if isinstance(K, rg.GeodesicPolygon) and len(K) <= N:
        return InscribedSolution(K, K.area(), np.asarray([]), 0)

    bd = _boundary_of(K)
    rng = np.random.default_rng(seed)
    best = None
    used = 0
    for r_idx in range(max(1, restarts)):
        if r_idx == 0:
            init = np.linspace(0.0, bd.period, N, endpoint=False)
        else:
            init = np.sort(rng.uniform(0.0, bd.period, N))
            if np.min(np.diff(np.concatenate([init, [init[0] + bd.period]]))) < 1e-6:
                init = np.linspace(0.0, bd.period, N, endpoint=False) + rng.uniform(0, bd.period)
        params, pts, area = _ascend(bd, init)
        used += 1
        if best is None or area > best[2]:
            best = (params, pts, area)
    params, pts, area = best
    poly = rg.GeodesicPolygon(np.asarray(pts), require_convex=False)
    if symmetric_center is not None and not poly.contains(symmetric_center, tol=1e-9):
        raise PreconditionError("maximal inscribed polygon misses the symmetry center")
    return InscribedSolution(poly, poly.area(), params, used)


# ---------------------------------------------------------------------------
# generic monotone-functional driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalResult:
    values: list
    cap_value: float
    direction: str
    verdict: bool


def extremal_driver(K: rg.GeodesicPolygon, F, direction: str, center=None,
                    iters: int = 32, levels: int = 512, tol: float = 1e-3) -> ExtremalResult:
    """Track a functional F along a c-symmetric symmetrization sequence.

    Records F on each iterate and on the equal-area cap D_c(K); the verdict
    compares the trajectory against the cap value in the stated direction.
    """
    from . import steiner as st

    if direction not in ("min", "max"):
        raise DomainError(f"direction must be min or max, got {direction!r}")
    if center is None:
        center = rg.circumdisk(K).center
    r_eq = rg.equal_area_cap_radius(K.area())
    cap = rg.CapSpec(center, r_eq)
    cap_value = float(F(cap))

    values = [float(F(K))]
    cur = K
    e1, e2 = rg.tangent_basis(center)
    for it in range(iters):
        ang = (it % st._N_DIRECTIONS) * math.pi / st._N_DIRECTIONS
        d = math.cos(ang) * e1 + math.sin(ang) * e2
        f = sc.Frame(center, d, np.cross(center, d))
        slab = st.steiner_symmetral(cur, f, levels)
        cur = st.symmetral_to_polygon(slab)
        values.append(float(F(cur)))

    if direction == "min":
        verdict = all(v >= cap_value - tol for v in values)
    else:
        verdict = all(v <= cap_value + tol for v in values)
    return ExtremalResult(values, cap_value, direction, verdict)
