"""Spherically convex regions: geodesic polygons, caps, ellipses.

A :class:`GeodesicPolygon` stores cyclically ordered unit vertices
(counterclockwise as seen from outside the sphere) that all lie in one open
hemisphere.  Convexity is certified in the gnomonic chart at the hemisphere
center, where geodesics are straight lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import linprog

from . import sphere_core as sc
from .errors import (
    ArgumentError,
    ConvergenceError,
    DegeneracyError,
    DomainError,
    InfeasibleError,
)


# ---------------------------------------------------------------------------
# caps and ellipses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CapSpec:
    """Closed spherical cap with radius in (0, pi/2)."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", sc.as_unit_vector(self.center))
        if not (0.0 < self.radius < math.pi / 2):
            raise DomainError(f"cap radius {self.radius} outside (0, pi/2)")

    def area(self) -> float:
        return 2.0 * math.pi * (1.0 - math.cos(self.radius))

    def boundary_circumference(self) -> float:
        return 2.0 * math.pi * math.sin(self.radius)

    def contains(self, p, tol=1e-12) -> bool:
        return sc.sph_dist(self.center, p) <= self.radius + tol

    def contains_many(self, pts, tol=1e-12):
        return sc.sph_dist_many(self.center, pts) <= self.radius + tol

    def boundary_points(self, n: int):
        """n equally spaced boundary points, counterclockwise seen from outside."""
        e1, e2 = tangent_basis(self.center)
        ang = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        rim = np.outer(np.cos(ang), e1) + np.outer(np.sin(ang), e2)
        return math.cos(self.radius) * self.center + math.sin(self.radius) * rim


def equal_area_cap_radius(area: float) -> float:
    """Radius of the cap with the given area: r = arccos(1 - area / 2 pi)."""
    if not (0.0 < area < 2.0 * math.pi):
        raise DomainError(f"area {area} outside (0, 2 pi)")
    return math.acos(sc.clamp(1.0 - area / (2.0 * math.pi)))


def tangent_basis(u):
    """A right-handed tangent basis (e1, e2) at u with e1 x e2 = u."""
    u = np.asarray(u, dtype=float)
    helper = np.array([0.0, 0.0, 1.0]) if abs(u[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = sc.unit(np.cross(helper, u))
    e2 = np.cross(u, e1)
    return e1, e2


@dataclass(frozen=True)
class SphericalEllipse:
    """Locus d(f1, x) + d(x, f2) <= d_sum with distinct, non-antipodal foci."""

    f1: np.ndarray
    f2: np.ndarray
    d_sum: float

    def __post_init__(self):
        f1 = sc.as_unit_vector(self.f1)
        f2 = sc.as_unit_vector(self.f2)
        d = sc.sph_dist(f1, f2)
        if d < 1e-12 or d > math.pi - 1e-12:
            raise DegeneracyError("foci must be distinct and non-antipodal")
        if not (0.0 < self.d_sum < 2.0 * math.pi):
            raise DomainError("d_sum must lie in (0, 2 pi)")
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)

    def contains(self, x, tol=1e-12) -> bool:
        return sc.sph_dist(self.f1, x) + sc.sph_dist(x, self.f2) <= self.d_sum + tol

    def is_convex(self) -> bool:
        """Convex exactly when the distance-sum parameter is below pi."""
        return self.d_sum < math.pi

    def hemisphere_center(self):
        """For d_sum = pi the region is the closed hemisphere at this point."""
        return sc.slerp(self.f1, self.f2, 0.5)


# ---------------------------------------------------------------------------
# geodesic polygons
# ---------------------------------------------------------------------------

def _find_hemisphere_center(vertices):
    """A unit u with <u, v> > 0 for every vertex, or None."""
    mean = vertices.mean(axis=0)
    nm = np.linalg.norm(mean)
    if nm > 1e-12:
        u = mean / nm
        if np.min(vertices @ u) > 0.0:
            return u
    # feasibility LP: find w with <w, v_i> >= 1, then normalize
    n = len(vertices)
    res = linprog(
        c=np.zeros(3),
        A_ub=-vertices,
        b_ub=-np.ones(n),
        bounds=[(None, None)] * 3,
        method="highs",
    )
    if not res.success:
        return None
    u = sc.unit(res.x)
    if np.min(vertices @ u) <= 0.0:
        return None
    return u


class GeodesicPolygon:
    """Spherical polygon with vertices in one open hemisphere.

    With ``require_convex=True`` (the default) the constructor certifies
    convexity in the gnomonic chart and rejects repeated, antipodal or
    collinear vertices.  Dense boundary polylines reconstructed from slab data
    are built with ``require_convex=False`` and report convexity via
    :meth:`is_convex` instead.
    """

    def __init__(self, vertices, require_convex: bool = True):
        V = np.asarray(vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != 3 or V.shape[0] < 3:
            raise ArgumentError("vertices must be an (n >= 3, 3) array")
        norms = np.linalg.norm(V, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise ArgumentError("vertices must be unit vectors within 1e-9")
        V = V / norms[:, None]
        # repeated / antipodal pairs
        gram = V @ V.T
        np.fill_diagonal(gram, 0.0)
        if gram.max() > 1.0 - 1e-15:
            i, j = np.unravel_index(np.argmax(gram), gram.shape)
            if sc.sph_dist(V[i], V[j]) < 1e-9:
                raise DegeneracyError("repeated vertices")
        if gram.min() < -1.0 + 1e-12:
            raise DegeneracyError("antipodal vertex pair")

        u = _find_hemisphere_center(V)
        if u is None:
            raise InfeasibleError("vertices are not contained in an open hemisphere")
        self._hemi_center = u

        # normalize orientation to counterclockwise in the chart at u
        chart = self._project_to_chart(V)
        x, y = chart[:, 0], chart[:, 1]
        signed2 = np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        if signed2 < 0.0:
            V = V[::-1]
            chart = chart[::-1]
        self.vertices = V
        self._chart = chart

        if require_convex:
            if not self._convexity_flags(strict=True):
                raise DegeneracyError(
                    "vertices are not in strictly convex position (collinear or reflex)"
                )

    # -- basic structure ----------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    @property
    def hemisphere_center(self):
        return self._hemi_center

    def _project_to_chart(self, pts):
        u = self._hemi_center
        e1, e2 = tangent_basis(u)
        x = pts @ u
        return np.stack([(pts @ e1) / x, (pts @ e2) / x], axis=1)

    def _convexity_flags(self, strict: bool, tol: float = 1e-10) -> bool:
        c = self._chart
        e = np.roll(c, -1, axis=0) - c
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        scale = np.linalg.norm(e, axis=1)
        scale = scale * np.roll(scale, -1)
        rel = cross / np.maximum(scale, 1e-300)
        if strict:
            return bool(np.all(rel > 1e-12))
        return bool(np.all(rel > -tol))

    def is_convex(self, tol: float = 1e-10) -> bool:
        """Convexity verdict in the gnomonic chart (tolerant, not strict)."""
        return self._convexity_flags(strict=False, tol=tol)

    @cached_property
    def edge_lengths(self):
        V = self.vertices
        W = np.roll(V, -1, axis=0)
        return np.arccos(np.clip(np.sum(V * W, axis=1), -1.0, 1.0))

    @cached_property
    def edge_tangents(self):
        """Unit tangent at vertex i along edge i (toward vertex i+1)."""
        V = self.vertices
        W = np.roll(V, -1, axis=0)
        T = W - np.sum(V * W, axis=1)[:, None] * V
        return T / np.linalg.norm(T, axis=1)[:, None]

    @cached_property
    def inward_normals(self):
        """Unit pole of each edge great circle on the interior side."""
        V = self.vertices
        N = np.cross(V, np.roll(V, -1, axis=0))
        return N / np.linalg.norm(N, axis=1)[:, None]

    # -- measurements --------------------------------------------------------

    def interior_angles(self):
        V = self.vertices
        P = np.roll(V, 1, axis=0)
        Nx = np.roll(V, -1, axis=0)
        t1 = P - np.sum(P * V, axis=1)[:, None] * V
        t2 = Nx - np.sum(Nx * V, axis=1)[:, None] * V
        t1 /= np.linalg.norm(t1, axis=1)[:, None]
        t2 /= np.linalg.norm(t2, axis=1)[:, None]
        cosa = np.clip(np.sum(t1 * t2, axis=1), -1.0, 1.0)
        sina = np.sum(np.cross(t2, t1) * V, axis=1)
        ang = np.arctan2(sina, cosa)
        return np.where(ang < 0.0, ang + 2.0 * math.pi, ang)

    def area(self) -> float:
        """Spherical excess: angle sum minus (k - 2) pi."""
        k = len(self.vertices)
        return float(np.sum(self.interior_angles()) - (k - 2) * math.pi)

    def perimeter(self) -> float:
        return float(np.sum(self.edge_lengths))

    def diameter(self) -> float:
        """Max pairwise vertex distance (attained at vertices for convex regions)."""
        V = self.vertices
        g = np.clip(V @ V.T, -1.0, 1.0)
        return float(np.arccos(g.min()))

    def contains(self, p, tol=1e-12) -> bool:
        return bool(np.min(self.inward_normals @ np.asarray(p, float)) >= -tol)

    def contains_many(self, pts, tol=1e-12):
        return np.min(np.asarray(pts, float) @ self.inward_normals.T, axis=1) >= -tol

    def boundary_samples(self, n: int):
        """About n points on the boundary, vertices included."""
        L = self.edge_lengths
        total = float(L.sum())
        out = []
        V = self.vertices
        T = self.edge_tangents
        for i in range(len(V)):
            m = max(1, int(round(n * L[i] / total)))
            t = np.linspace(0.0, L[i], m, endpoint=False)
            out.append(np.outer(np.cos(t), V[i]) + np.outer(np.sin(t), T[i]))
        return np.vstack(out)

    def rotated(self, R) -> "GeodesicPolygon":
        return GeodesicPolygon(self.vertices @ np.asarray(R).T, require_convex=False)

    def point_reflected(self, m) -> "GeodesicPolygon":
        """Image under the point reflection (rotation by pi) through m."""
        m = sc.as_unit_vector(m)
        V = self.vertices
        W = 2.0 * (V @ m)[:, None] * m - V
        return GeodesicPolygon(W[::-1], require_convex=False)


def convex_hull_s(points) -> GeodesicPolygon:
    """Spherical convex hull of points in one open hemisphere."""
    from scipy.spatial import ConvexHull

    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 3:
        raise ArgumentError("points must be an (n, 3) array")
    P = P / np.linalg.norm(P, axis=1)[:, None]
    u = _find_hemisphere_center(P)
    if u is None:
        raise InfeasibleError("no open hemisphere contains all points")
    e1, e2 = tangent_basis(u)
    x = P @ u
    chart = np.stack([(P @ e1) / x, (P @ e2) / x], axis=1)
    try:
        hull = ConvexHull(chart)
    except Exception as exc:  # qhull degeneracy
        raise DegeneracyError(f"hull construction failed: {exc}") from exc
    idx = hull.vertices  # counterclockwise in the chart
    if len(idx) < 3:
        raise DegeneracyError("fewer than 3 extreme points")
    return GeodesicPolygon(P[idx])


# ---------------------------------------------------------------------------
# smallest enclosing cap (Welzl-style incremental search)
# ---------------------------------------------------------------------------

def _cap_two(a, b):
    center = sc.unit(a + b)
    return center, sc.sph_dist(center, a)


def _cap_three(a, b, c):
    n = np.cross(b - a, c - a)
    if np.linalg.norm(n) < 1e-14:
        return None
    center = sc.unit(n)
    if np.dot(center, a) < 0.0:
        center = -center
    return center, math.acos(sc.clamp(float(np.dot(center, a))))


def _in_cap(cap, p, tol=1e-12):
    return cap is not None and sc.sph_dist(cap[0], p) <= cap[1] + tol


def circumdisk(region) -> CapSpec:
    """Smallest spherical cap containing the region.

    Expected linear time after a seeded shuffle; the result is verified to
    enclose every vertex within 1e-9.
    """
    if isinstance(region, CapSpec):
        return region
    pts = [np.array(v) for v in region.vertices]
    order = np.random.default_rng(987654321).permutation(len(pts))
    pts = [pts[i] for i in order]

    cap = None
    for i, p in enumerate(pts):
        if not _in_cap(cap, p):
            cap = _one_point(pts[: i + 1], p)
    if cap is None:
        raise DegeneracyError("empty point set")
    rmax = max(sc.sph_dist(cap[0], v) for v in region.vertices)
    if rmax > cap[1] + 1e-9:
        raise ConvergenceError("enclosing-cap search did not certify enclosure")
    return CapSpec(cap[0], max(cap[1], 1e-15))


def _one_point(pts, q):
    # smallest cap of pts with q pinned on the boundary
    cap = (q, 0.0)
    for j, p in enumerate(pts):
        if not _in_cap(cap, p):
            cap = _two_points(pts[:j], p, q)
    return cap


def _two_points(pts, p, q):
    # smallest cap of pts with p and q pinned on the boundary
    cap = _cap_two(p, q)
    for r in pts:
        if _in_cap(cap, r):
            continue
        c3 = _cap_three(p, q, r)
        if c3 is None:
            # (near-)cocircular triple: fall back to the widest pair
            pairs = [_cap_two(p, q), _cap_two(p, r), _cap_two(q, r)]
            c3 = max(pairs, key=lambda c: c[1])
        cap = c3
    return cap


# ---------------------------------------------------------------------------
# slicing by distance curves
# ---------------------------------------------------------------------------

def _edge_crossings(polygon: GeodesicPolygon, frame, thetas):
    """phi-values where distance curves C_theta cross the boundary.

    Returns a list (one entry per theta) of sorted arrays of phi coordinates.
    """
    V = polygon.vertices
    T = polygon.edge_tangents
    L = polygon.edge_lengths
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    s = np.sin(thetas)

    A = V @ frame.e_p  # (E,)
    B = T @ frame.e_p
    R = np.hypot(A, B)
    psi = np.arctan2(B, A)

    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = s[None, :] / R[:, None]  # (E, m)
    valid = np.abs(ratio) <= 1.0
    ratio = np.clip(ratio, -1.0, 1.0)
    d = np.arccos(ratio)  # (E, m)

    cols, phis = [], []
    ttol = 1e-12
    for sign in (+1.0, -1.0):
        t = psi[:, None] + sign * d
        t = np.mod(t, 2.0 * math.pi)
        ok = valid & (t <= L[:, None] + ttol)
        if not np.any(ok):
            continue
        ei, ci = np.nonzero(ok)
        tv = t[ei, ci]
        pts = np.cos(tv)[:, None] * V[ei] + np.sin(tv)[:, None] * T[ei]
        phi = np.arctan2(pts @ frame.e_l, pts @ frame.c)
        cols.append(ci)
        phis.append(phi)

    out = [np.empty(0) for _ in range(len(thetas))]
    if cols:
        ci = np.concatenate(cols)
        phi = np.concatenate(phis)
        order = np.lexsort((phi, ci))
        ci, phi = ci[order], phi[order]
        starts = np.searchsorted(ci, np.arange(len(thetas)))
        ends = np.searchsorted(ci, np.arange(len(thetas)) + 1)
        for k in range(len(thetas)):
            out[k] = phi[starts[k]:ends[k]]
    return out


def slice_angular_interval(polygon: GeodesicPolygon, frame, theta: float):
    """phi-interval of C_theta inside the polygon, or None if empty.

    Valid for regions whose distance-curve slices are single arcs; endpoints
    are exact boundary crossings of edge great circles with the plane at
    height sin(theta).
    """
    if not (abs(theta) < math.pi / 2):
        raise DomainError(f"theta={theta} outside (-pi/2, pi/2)")
    phis = _edge_crossings(polygon, frame, [theta])[0]
    if len(phis) == 0:
        return None
    return float(phis[0]), float(phis[-1])


def slice_intervals(polygon: GeodesicPolygon, frame, thetas):
    """Vectorized slice intervals: an (m, 2) array with NaN rows for empty slices."""
    crossings = _edge_crossings(polygon, frame, thetas)
    out = np.full((len(crossings), 2), np.nan)
    for k, phis in enumerate(crossings):
        if len(phis) > 0:
            out[k, 0] = phis[0]
            out[k, 1] = phis[-1]
    return out


def theta_range(polygon: GeodesicPolygon, frame):
    """Exact (min, max) of the signed distance from L over the polygon."""
    V = polygon.vertices
    T = polygon.edge_tangents
    L = polygon.edge_lengths
    A = V @ frame.e_p
    B = T @ frame.e_p
    R = np.hypot(A, B)
    psi = np.arctan2(B, A)
    lo = np.minimum(A, np.cos(L) * A + np.sin(L) * B)
    hi = np.maximum(A, np.cos(L) * A + np.sin(L) * B)
    # interior extrema of A cos t + B sin t on (0, L): t = psi (max), psi + pi (min)
    tmax = np.mod(psi, 2.0 * math.pi)
    tmin = np.mod(psi + math.pi, 2.0 * math.pi)
    hi = np.where(tmax < L, R, hi)
    lo = np.where(tmin < L, -R, lo)
    return math.asin(sc.clamp(float(lo.min()))), math.asin(sc.clamp(float(hi.max())))


def connectedness_check(polygon: GeodesicPolygon, frame, levels: int = 2048) -> bool:
    """True when every distance-curve slice of the polygon is a single arc.

    Regions meeting the axis arc L are accepted outright (their slices are
    connected by convexity); others are certified by a dense theta scan, a
    soundness/completeness trade-off at the given resolution.
    """
    if slice_angular_interval(polygon, frame, 0.0) is not None:
        return True
    t_lo, t_hi = theta_range(polygon, frame)
    if t_hi - t_lo < 1e-12:
        return True
    h = (t_hi - t_lo) / (levels + 1)
    thetas = np.linspace(t_lo + h, t_hi - h, levels)
    crossings = _edge_crossings(polygon, frame, thetas)
    for theta, phis in zip(thetas, crossings):
        if len(phis) < 3:
            continue
        # dedupe vertex hits, then count interior gaps
        phis = phis[np.concatenate(([True], np.diff(phis) > 1e-9))]
        if len(phis) < 3:
            continue
        inside_gaps = 0
        for a, b in zip(phis[:-1], phis[1:]):
            mid = sc.from_polar(frame, theta, 0.5 * (a + b))
            if polygon.contains(mid, tol=1e-12):
                inside_gaps += 1
        if inside_gaps > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# angular monotonicity
# ---------------------------------------------------------------------------

def _departure_directions(polygon: GeodesicPolygon, q, tol=1e-9):
    """Unit boundary tangents leaving point q along incident edges."""
    V = polygon.vertices
    T = polygon.edge_tangents
    L = polygon.edge_lengths
    dirs = []
    for i in range(len(V)):
        ca = float(np.dot(q, V[i]))
        cw = float(np.dot(q, T[i]))
        t_q = math.atan2(cw, ca)
        if t_q < -tol or t_q > L[i] + tol:
            continue
        p_on = math.cos(t_q) * V[i] + math.sin(t_q) * T[i]
        # chord distance: arccos cannot resolve separations below ~1e-8
        if np.linalg.norm(p_on - q) > tol:
            continue
        fwd = -math.sin(t_q) * V[i] + math.cos(t_q) * T[i]
        if t_q < L[i] - tol:
            dirs.append(fwd)
        if t_q > tol:
            dirs.append(-fwd)
    return dirs


def _support_angle_interval(polygon, frame, q, along, atol=1e-9):
    """Feasible supporting-line angles at boundary point q.

    Angles are measured in the tangent plane at q from direction ``along``
    rotating through the upper (positive theta) side.  Returns (lo, hi) or
    None when no supporting line exists under our sign conventions.

    A wide incidence tolerance snaps q to a vertex it nearly coincides with:
    the feasible set there is the whole angular gap between the two incident
    edges, and axis searches routinely land chord endpoints on vertices.
    """
    dirs = _departure_directions(polygon, q, tol=1e-5)
    if not dirs:
        return None
    angs = [math.atan2(float(np.dot(d, frame.e_p)), float(np.dot(d, along))) for d in dirs]
    ups = [a for a in angs if a >= -atol]
    downs = [a for a in angs if a <= atol]
    if not ups or not downs:
        return None
    beta1 = max(0.0, min(ups))
    beta2 = min(0.0, max(downs))
    return beta1, math.pi + beta2


def angular_monotonicity_check(polygon: GeodesicPolygon, frame) -> bool:
    """True when slice angular lengths are monotone away from the axis.

    Uses the supporting-line criterion at the endpoints of the axis chord:
    there must exist supporting lines whose cut angles at the two endpoints
    sum to pi.
    """
    iv = slice_angular_interval(polygon, frame, 0.0)
    if iv is None:
        return False
    phi1, phi2 = iv
    q1 = sc.from_polar(frame, 0.0, phi1)
    q2 = sc.from_polar(frame, 0.0, phi2)
    e1 = -math.sin(phi1) * frame.c + math.cos(phi1) * frame.e_l  # toward q2
    e2 = math.sin(phi2) * frame.c - math.cos(phi2) * frame.e_l   # toward q1
    i1 = _support_angle_interval(polygon, frame, q1, e1)
    i2 = _support_angle_interval(polygon, frame, q2, e2)
    if i1 is None or i2 is None:
        return False
    lo = max(i1[0], math.pi - i2[1])
    hi = min(i1[1], math.pi - i2[0])
    return lo <= hi + 1e-9


# ---------------------------------------------------------------------------
# clipping and Hausdorff distance
# ---------------------------------------------------------------------------

def clip_by_great_circle(polygon: GeodesicPolygon, normal, tol=1e-12):
    """Part of the polygon on the side <x, normal> >= 0, or None if empty."""
    normal = sc.unit(normal)
    V = polygon.vertices
    T = polygon.edge_tangents
    L = polygon.edge_lengths
    h = V @ normal
    out = []
    n = len(V)
    for i in range(n):
        j = (i + 1) % n
        if h[i] >= -tol:
            out.append(V[i])
        hi, hj = h[i], h[j]
        if (hi > tol and hj < -tol) or (hi < -tol and hj > tol):
            # crossing on edge i: A cos t + B sin t = 0
            A = float(np.dot(V[i], normal))
            B = float(np.dot(T[i], normal))
            t = math.atan2(-A, B)
            if t < 0.0:
                t += math.pi
            if -tol <= t <= L[i] + tol:
                out.append(sc.unit(math.cos(t) * V[i] + math.sin(t) * T[i]))
    if len(out) < 3:
        return None
    W = np.asarray(out)
    keep = [0]
    for k in range(1, len(W)):
        if sc.sph_dist(W[k], W[keep[-1]]) > 1e-12:
            keep.append(k)
    if sc.sph_dist(W[keep[-1]], W[keep[0]]) <= 1e-12:
        keep.pop()
    if len(keep) < 3:
        return None
    return GeodesicPolygon(W[keep], require_convex=False)


def _boundary_and_membership(region, samples):
    if isinstance(region, CapSpec):
        return region.boundary_points(samples), region.contains_many
    return region.boundary_samples(samples), region.contains_many


def hausdorff_distance(a, b, samples: int = 1024) -> float:
    """Symmetric sup-inf spherical distance between two convex regions.

    Cap-vs-cap is exact; otherwise boundaries are sampled densely and the
    over-approximation is bounded by the sampling arc length.
    """
    if isinstance(a, CapSpec) and isinstance(b, CapSpec):
        dc = sc.sph_dist(a.center, b.center)
        return max(0.0, dc + a.radius - b.radius, dc + b.radius - a.radius)

    sa, in_a = _boundary_and_membership(a, samples)
    sb, in_b = _boundary_and_membership(b, samples)

    def one_sided(src, dst, dst_in, dst_region):
        inside = dst_in(src)
        if np.all(inside):
            return 0.0
        pts = src[~inside]
        if isinstance(dst_region, CapSpec):
            d = np.maximum(0.0, sc.sph_dist_many(dst_region.center, pts) - dst_region.radius)
        else:
            g = np.clip(pts @ dst.T, -1.0, 1.0)
            d = np.arccos(g).min(axis=1)
        return float(d.max())

    return max(one_sided(sa, sb, in_b, b), one_sided(sb, sa, in_a, a))
