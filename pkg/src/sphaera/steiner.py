"""Steiner symmetrization on S^2 and its verification drivers.

The symmetral sigma_{L,H} recenters every distance-curve slice of a region on
the mirror arc H while preserving its angular length.  Slabs store the result
natively as per-theta phi-intervals; polygon reconstruction is provided for
the metric functionals (perimeter, diameter, Hausdorff distance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from . import sphere_core as sc
from . import regions as rg
from .errors import (
    DegeneracyError,
    DomainError,
    NumericError,
    PreconditionError,
)


@dataclass(frozen=True)
class SlabRegion:
    """Per-theta angular intervals [phi_lo, phi_hi]; NaN rows mark empty slices."""

    frame: sc.Frame
    thetas: np.ndarray
    intervals: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.thetas, dtype=float)
        iv = np.asarray(self.intervals, dtype=float)
        if t.ndim != 1 or iv.shape != (len(t), 2):
            raise DegeneracyError("slab grid and intervals are inconsistent")
        if np.any(np.diff(t) <= 0):
            raise DegeneracyError("theta grid must be strictly increasing")
        object.__setattr__(self, "thetas", t)
        object.__setattr__(self, "intervals", iv)

    @property
    def widths(self):
        return self.intervals[:, 1] - self.intervals[:, 0]

    @property
    def nonempty(self):
        return ~np.isnan(self.intervals[:, 0])

    def is_h_symmetric(self, tol=1e-12) -> bool:
        iv = self.intervals[self.nonempty]
        return bool(np.all(np.abs(iv[:, 0] + iv[:, 1]) <= tol))


def _theta_grid(t_lo: float, t_hi: float, levels: int):
    base = np.linspace(t_lo, t_hi, levels)
    h = (t_hi - t_lo) / (levels - 1)
    # Lambda(theta) can behave like a square root at the theta-extremes of the
    # region; two clustered levels at each end keep Simpson near its rate.
    extra = np.array([t_lo + h / 4, t_lo + h / 2, t_hi - h / 2, t_hi - h / 4])
    return np.unique(np.concatenate([base, extra]))


def region_slab(P: rg.GeodesicPolygon, f: sc.Frame, levels: int = 512) -> SlabRegion:
    """Slab description of P itself (no recentering)."""
    t_lo, t_hi = rg.theta_range(P, f)
    thetas = _theta_grid(t_lo, t_hi, levels)
    iv = rg.slice_intervals(P, f, thetas)
    span = max(t_hi - t_lo, 1e-12)
    for k, inner in ((0, t_lo + 1e-10 * span), (len(thetas) - 1, t_hi - 1e-10 * span)):
        if np.isnan(iv[k, 0]):  # extreme level degenerates to a point
            phis = rg._edge_crossings(P, f, [inner])[0]
            mid = 0.5 * (phis[0] + phis[-1]) if len(phis) else 0.0
            iv[k] = (mid, mid)
    return SlabRegion(f, thetas, iv)


def steiner_symmetral(P: rg.GeodesicPolygon, f: sc.Frame, levels: int = 512) -> SlabRegion:
    """Slab of sigma_{L,H}(P): each slice recentered to [-Lambda/2, Lambda/2]."""
    if np.any(P.vertices @ f.c <= 0.0):
        raise DomainError("polygon is not contained in the open hemisphere of the frame")
    if not rg.connectedness_check(P, f):
        raise PreconditionError("connectedness_check failed: a slice is disconnected")
    slab = region_slab(P, f, levels)
    lam = slab.widths
    iv = np.stack([-lam / 2.0, lam / 2.0], axis=1)
    return SlabRegion(f, slab.thetas, iv)


def symmetrize_slab(R: SlabRegion) -> SlabRegion:
    """Recentering on the slab data itself (exact, used for idempotence)."""
    lam = R.widths
    return SlabRegion(R.frame, R.thetas, np.stack([-lam / 2.0, lam / 2.0], axis=1))


def area_slab(R: SlabRegion) -> float:
    """Composite Simpson value of the area integral  int Lambda(theta) cos(theta) dtheta."""
    m = R.nonempty
    if m.sum() < 3:
        return 0.0
    t = R.thetas[m]
    lam = R.widths[m]
    return float(simpson(lam * np.cos(t), x=t))


def symmetral_to_polygon(R: SlabRegion, target_vertices: int = 512) -> rg.GeodesicPolygon:
    """Polygon through the slab's boundary sample points (convexity reported, not forced)."""
    m = np.nonzero(R.nonempty)[0]
    if len(m) < 3:
        raise DegeneracyError("slab has fewer than 3 non-empty levels")
    idx = m
    per_chain = max(3, target_vertices // 2)
    if len(idx) > per_chain:
        keep = np.unique(np.round(np.linspace(0, len(idx) - 1, per_chain)).astype(int))
        idx = idx[keep]
    f = R.frame
    pts = []
    for k in idx:  # ascending theta along phi_hi
        pts.append(sc.from_polar(f, R.thetas[k], R.intervals[k, 1]))
    for k in idx[::-1]:  # descending theta along phi_lo
        pts.append(sc.from_polar(f, R.thetas[k], R.intervals[k, 0]))
    P = np.asarray(pts)
    # dedup by chord distance: arccos cannot resolve separations below ~1e-8
    keep = [0]
    for i in range(1, len(P)):
        if np.linalg.norm(P[i] - P[keep[-1]]) > 1e-7:
            keep.append(i)
    if np.linalg.norm(P[keep[-1]] - P[keep[0]]) <= 1e-7:
        keep.pop()
    if len(keep) < 3:
        raise DegeneracyError("slab degenerates to fewer than 3 distinct points")
    return rg.GeodesicPolygon(P[keep], require_convex=False)


def symmetrized_z_endpoints(z1: float, z2: float):
    """Endpoints +-z_s of the recentered arc in gnomonic z-coordinates.

    z_s = (z2 - z1) / (sqrt(1+z2^2) sqrt(1+z1^2) + 1 + z1 z2), the tangent
    half-angle form of tan((arctan z2 - arctan z1)/2).
    """
    if not (z1 <= z2) or not (math.isfinite(z1) and math.isfinite(z2)):
        raise DomainError("need finite z1 <= z2")
    zs = (z2 - z1) / (math.sqrt(1.0 + z2 * z2) * math.sqrt(1.0 + z1 * z1) + 1.0 + z1 * z2)
    return zs, -zs


# ---------------------------------------------------------------------------
# applicable-axis search
# ---------------------------------------------------------------------------

def _chord_endpoints(P: rg.GeodesicPolygon, normal):
    """The two boundary points cut by the great circle with the given pole."""
    V = P.vertices
    T = P.edge_tangents
    L = P.edge_lengths
    pts = []
    for i in range(len(V)):
        A = float(np.dot(V[i], normal))
        B = float(np.dot(T[i], normal))
        if math.hypot(A, B) < 1e-15:
            continue
        t = math.atan2(-A, B)
        for cand in (t, t + math.pi):
            if -1e-12 <= cand <= L[i] + 1e-12:
                pts.append(sc.unit(math.cos(cand) * V[i] + math.sin(cand) * T[i]))
    uniq = []
    for p in pts:
        if all(sc.sph_dist(p, q) > 1e-9 for q in uniq):
            uniq.append(p)
    return uniq


def _cut_angle_sum(P: rg.GeodesicPolygon, z, n_H, q):
    """alpha_1 + alpha_2 of the q-side part of P cut by the line through z
    perpendicular to the great circle with pole n_H."""
    n_L = sc.unit(np.cross(z, n_H))
    if np.dot(q, n_L) < 0.0:
        n_L = -n_L
    ws = _chord_endpoints(P, n_L)
    if len(ws) != 2:
        raise NumericError(f"cut line meets the boundary in {len(ws)} points, expected 2")
    total = 0.0
    for w in ws:
        tau = None
        for d in rg._departure_directions(P, w):
            if np.dot(d, n_L) > 0.0:  # into the q-side
                tau = d
                break
        if tau is None:
            raise NumericError("no boundary direction into the q-side at a cut point")
        t_L = sc.unit(np.cross(n_L, w))
        if np.dot(t_L, z) < 0.0:
            t_L = -t_L
        total += math.acos(sc.clamp(float(np.dot(tau, t_L))))
    return total


def find_applicable_axis(P: rg.GeodesicPolygon, h_point, h_direction) -> sc.Frame:
    """Frame (c=z, L, H) making P angularly monotone, for H through h_point.

    H is the great circle through ``h_point`` with tangent ``h_direction``; the
    returned frame centers at the point z of the chord P cap H where the two
    cut-angle sums satisfy alpha_1 + alpha_2 = pi (bisection, tolerance 1e-14).
    """
    if P.diameter() >= math.pi / 2:
        raise PreconditionError("polygon diameter must be below pi/2")
    h_point = sc.as_unit_vector(h_point)
    n_H = sc.unit(np.cross(h_point, np.asarray(h_direction, dtype=float)))
    chord = _chord_endpoints(P, n_H)
    if len(chord) != 2:
        raise PreconditionError("H does not cut the polygon in a chord")
    p, q = chord

    def g(s):
        z = sc.slerp(p, q, s)
        return _cut_angle_sum(P, z, n_H, q) - math.pi

    lo, hi = 1e-9, 1.0 - 1e-9
    glo, ghi = g(lo), g(hi)
    if glo < 0.0 or ghi > 0.0:
        raise NumericError("no sign change of alpha_1 + alpha_2 - pi on the chord")
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    z = sc.slerp(p, q, 0.5 * (lo + hi))
    e_p = sc.unit(np.cross(z, n_H))
    frame = sc.Frame(z, n_H, e_p)
    return frame


# ---------------------------------------------------------------------------
# monotonicity report and the convergence driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityReport:
    area_before: float
    area_after: float
    perim_before: float
    perim_after: float
    diam_before: float
    diam_after: float
    convex_after: bool
    angularly_monotone_input: bool


def verify_monotonicity(P: rg.GeodesicPolygon, f: sc.Frame, levels: int = 1024) -> MonotonicityReport:
    """Area conservation plus perimeter/diameter monotonicity of one symmetral."""
    if not rg.connectedness_check(P, f):
        raise PreconditionError("connectedness_check failed")
    monotone = rg.angular_monotonicity_check(P, f)
    if not monotone:
        raise PreconditionError("angular_monotonicity_check failed")
    slab = steiner_symmetral(P, f, levels)
    Q = symmetral_to_polygon(slab, target_vertices=max(512, levels))
    return MonotonicityReport(
        area_before=P.area(),
        area_after=area_slab(slab),
        perim_before=P.perimeter(),
        perim_after=Q.perimeter(),
        diam_before=P.diameter(),
        diam_after=Q.diameter(),
        convex_after=Q.is_convex(),
        angularly_monotone_input=monotone,
    )


@dataclass
class Trajectory:
    """converge_to_cap output: per-iteration measurements plus the verdict."""

    rows: list = field(default_factory=list)  # (iter, area, perim, diam, circumr, dist)
    converged: bool = False
    iterations: int = 0
    final_polygon: rg.GeodesicPolygon | None = None
    cap_radius: float = 0.0

    header = "iteration,area,perimeter,diameter,circumradius,hausdorff_to_cap"


_N_DIRECTIONS = 8  # round-robin axis schedule


def _cap_distance(P, center, radius, samples=1024):
    return rg.hausdorff_distance(P, rg.CapSpec(center, radius), samples=samples)


def converge_to_cap(
    P: rg.GeodesicPolygon,
    eps: float,
    max_iters: int = 200,
    strategy: str = "symmetric",
    levels: int = 512,
    reconstruct_vertices: int = 512,
) -> Trajectory:
    """Iterated symmetrization toward the equal-area cap.

    strategy="symmetric": all frames satisfy L cap H = {c} with c the fixed
    symmetry center (taken as the circumcenter).  strategy="recentered":
    each round recenters H at the current circumcenter and finds an
    applicable axis on it.  Non-convergence is reported, not raised.
    """
    if strategy not in ("symmetric", "recentered"):
        raise DomainError(f"unknown strategy {strategy!r}")
    area0 = P.area()
    r_eq = rg.equal_area_cap_radius(area0)
    traj = Trajectory(cap_radius=r_eq)

    cur = P
    center = rg.circumdisk(P).center
    for it in range(max_iters + 1):
        disk = rg.circumdisk(cur)
        if strategy == "recentered":
            center = disk.center
        dist = _cap_distance(cur, center, r_eq)
        traj.rows.append(
            (it, cur.area(), cur.perimeter(), cur.diameter(), disk.radius, dist)
        )
        if dist <= eps:
            traj.converged = True
            break
        if it == max_iters:
            break
        ang = (it % _N_DIRECTIONS) * math.pi / _N_DIRECTIONS
        if strategy == "symmetric":
            e1, e2 = rg.tangent_basis(center)
            d = math.cos(ang) * e1 + math.sin(ang) * e2
            f = sc.Frame(center, d, np.cross(center, d))
        else:
            e1, e2 = rg.tangent_basis(center)
            d = math.cos(ang) * e1 + math.sin(ang) * e2
            f = find_applicable_axis(cur, center, d)
        slab = steiner_symmetral(cur, f, levels)
        cur = symmetral_to_polygon(slab, target_vertices=reconstruct_vertices)

    traj.iterations = traj.rows[-1][0]
    traj.final_polygon = cur
    return traj
