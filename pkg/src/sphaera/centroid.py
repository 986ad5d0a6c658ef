"""Spherical centroids, great-circle moments, and the Winternitz comparator.

The first moment of a convex polygon,  int_K p dsigma, equals the exact edge
sum (1/2) sum_i l_i n_i with n_i the constant inward unit normal of edge i;
centroids and moments therefore carry no quadrature error.  The comparator
triangle realizes the moment-matching construction behind the spherical
Winternitz inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import regions as rg
from . import sphere_core as sc
from .errors import DegeneracyError, NumericError, PreconditionError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def raw_moment_vector(P: rg.GeodesicPolygon):
    """int_K p dsigma = (1/2) sum_i l_i n_i (exact edge formula)."""
    return 0.5 * np.sum(P.edge_lengths[:, None] * P.inward_normals, axis=0)


def spherical_centroid(P: rg.GeodesicPolygon):
    """g_s(P): the normalized first moment vector."""
    v = raw_moment_vector(P)
    n = np.linalg.norm(v)
    if n < 1e-14:
        raise DegeneracyError("zero first moment vector")
    return v / n


def moment(P: rg.GeodesicPolygon, circle_normal) -> float:
    """M_H(P) = int_P sin(theta_H) dsigma = <int_P p dsigma, normal>."""
    return float(np.dot(raw_moment_vector(P), sc.unit(circle_normal)))


@dataclass(frozen=True)
class HalvingCut:
    """A cut of a convex region by a great circle through its centroid."""

    normal: np.ndarray          # pole of the cut circle; part 1 on the >= 0 side
    center: np.ndarray          # the centroid the circle passes through
    direction: float            # tangent angle of the circle at the centroid
    parts: tuple                # (K1, K2) as GeodesicPolygon values
    ratio: float                # area(K2) / area(K1)


def halving_cut(P: rg.GeodesicPolygon, direction: float) -> HalvingCut:
    """Split P by the great circle through g_s(P) at the given tangent angle."""
    g = spherical_centroid(P)
    e1, e2 = rg.tangent_basis(g)
    t = math.cos(direction) * e1 + math.sin(direction) * e2
    n = sc.unit(np.cross(g, t))
    k1 = rg.clip_by_great_circle(P, n)
    k2 = rg.clip_by_great_circle(P, -n)
    if k1 is None or k2 is None:
        raise DegeneracyError("cut through the centroid produced an empty part")
    return HalvingCut(n, g, direction, (k1, k2), k2.area() / k1.area())


# ---------------------------------------------------------------------------
# corner rounding (pre-smoothing for the comparator)
# ---------------------------------------------------------------------------

def round_corners(P: rg.GeodesicPolygon, radius: float = 1e-3, arc_points: int = 8) -> rg.GeodesicPolygon:
    """Replace each vertex by a small-circle arc tangent to both edges."""
    V = P.vertices
    n = len(V)
    out = []
    for i in range(n):
        v = V[i]
        d_prev = sc.tangent_toward(v, V[(i - 1) % n])
        d_next = sc.tangent_toward(v, V[(i + 1) % n])
        cos2b = sc.clamp(float(np.dot(d_prev, d_next)))
        beta = 0.5 * math.acos(cos2b)
        if beta < 1e-6 or beta > math.pi / 2 - 1e-6:
            out.append(v)
            continue
        rho = min(radius, 0.2 * float(min(P.edge_lengths[i], P.edge_lengths[(i - 1) % n])) * math.sin(beta))
        d = math.asin(min(1.0, math.sin(rho) / math.sin(beta)))
        bis = sc.unit(d_prev + d_next)
        q = math.cos(d) * v + math.sin(d) * bis  # rounding-circle center
        feet = []
        for ne in (P.inward_normals[(i - 1) % n], P.inward_normals[i]):
            feet.append(sc.unit(q - float(np.dot(q, ne)) * ne))
        u1 = sc.tangent_toward(q, feet[0])
        u2 = sc.tangent_toward(q, feet[1])
        omega = math.acos(sc.clamp(float(np.dot(u1, u2))))
        if omega < 1e-9:
            out.append(v)
            continue
        for tau in np.linspace(0.0, 1.0, arc_points):
            u = (math.sin((1 - tau) * omega) * u1 + math.sin(tau * omega) * u2) / math.sin(omega)
            out.append(sc.unit(math.cos(rho) * q + math.sin(rho) * u))
    W = np.asarray(out)
    keep = [0]
    for k in range(1, len(W)):
        if sc.sph_dist(W[k], W[keep[-1]]) > 1e-10:
            keep.append(k)
    return rg.GeodesicPolygon(W[keep], require_convex=False)


# ---------------------------------------------------------------------------
# Winternitz comparator triangle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparatorResult:
    triangle: rg.GeodesicPolygon       # T, rotated so its centroid is the cut center
    part1: rg.GeodesicPolygon          # T cap S1 (triangle)
    part2: rg.GeodesicPolygon          # T cap S2 (quadrilateral)
    ratio_region: float                # area(K2)/area(K1)
    ratio_triangle: float              # area(T2)/area(T1)
    moment_residual_1: float
    moment_residual_2: float
    apex: np.ndarray
    theta_prime: float


def _chord_endpoints(P: rg.GeodesicPolygon, normal):
    from .steiner import _chord_endpoints as impl

    return impl(P, normal)


def _triangle_moment(q1, q2, p, normal):
    T = rg.GeodesicPolygon(np.asarray([q1, q2, p]), require_convex=False)
    return moment(T, normal), T


def _exit_point(K: rg.GeodesicPolygon, q, p):
    """Boundary point where the segment from q toward p leaves K."""
    lo, hi = 0.0, 1.0
    if K.contains(sc.slerp(q, p, 1.0), tol=1e-12):
        return np.asarray(p, float)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if K.contains(sc.slerp(q, p, mid), tol=1e-12):
            lo = mid
        else:
            hi = mid
    return sc.slerp(q, p, 0.5 * (lo + hi))


def winternitz_comparator(K, cut: HalvingCut) -> ComparatorResult:
    """Comparator triangle T with matched part moments about the cut circle.

    Implements the proof construction: an apex p on the positive side with
    M_L(T(p)) = M_L(K1) and equal exit heights, then a theta'-bisection for
    the quadrilateral part matching M_L(K2).  K must be smooth and strictly
    convex; sparse polygons are corner-rounded first.
    """
    if hasattr(K, "to_polygon"):  # SmoothBoundary
        K = K.to_polygon(1024)
    if not isinstance(K, rg.GeodesicPolygon):
        raise PreconditionError("comparator needs a polygonal or smooth-boundary region")
    if len(K) < 64:
        K = round_corners(K)

    n = sc.unit(cut.normal)
    k1, k2 = cut.parts
    m1 = moment(k1, n)
    m2 = moment(k2, n)
    if m1 <= 0.0 or m2 >= 0.0:
        raise PreconditionError("cut parts have unexpected moment signs")

    chord = _chord_endpoints(K, n)
    if len(chord) != 2:
        raise NumericError(f"cut circle meets the boundary in {len(chord)} points")
    q1, q2 = chord
    m = sc.slerp(q1, q2, 0.5)
    t_l = sc.unit(np.cross(n, m))

    def apex_for(psi):
        d = math.cos(psi) * t_l + math.sin(psi) * n

        def f(t):
            p = math.cos(t) * m + math.sin(t) * d
            return _triangle_moment(q1, q2, p, n)[0] - m1

        lo, hi = 1e-8, math.pi - 1e-3
        if f(lo) > 0.0 or f(hi) < 0.0:
            raise NumericError(f"apex moment target not bracketed at psi={psi}")
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if f(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        t = 0.5 * (lo + hi)
        return sc.unit(math.cos(t) * m + math.sin(t) * d)

    def height_gap(psi):
        p = apex_for(psi)
        x1 = _exit_point(K, q1, p)
        x2 = _exit_point(K, q2, p)
        return math.asin(sc.clamp(float(np.dot(x1, n)))) - math.asin(
            sc.clamp(float(np.dot(x2, n)))
        ), p

    # bracket the equal-height apex over ray directions, then bisect
    psis = np.linspace(0.05, math.pi - 0.05, 25)
    gaps = []
    for psi in psis:
        try:
            gaps.append(height_gap(psi)[0])
        except NumericError:
            gaps.append(math.nan)
    bracket = None
    for a, b, ga, gb in zip(psis[:-1], psis[1:], gaps[:-1], gaps[1:]):
        if math.isnan(ga) or math.isnan(gb):
            continue
        if ga == 0.0 or ga * gb < 0.0:
            bracket = (a, b, ga)
            break
    if bracket is None:
        raise NumericError(
            f"no equal-height apex direction found; psi range [{psis[0]}, {psis[-1]}]"
        )
    lo, hi, glo = bracket
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        gm = height_gap(mid)[0]
        if gm == 0.0:
            lo = hi = mid
            break
        if (gm > 0.0) == (glo > 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
    p = apex_for(0.5 * (lo + hi))
    m_t1, t1_poly = _triangle_moment(q1, q2, p, n)

    # quadrilateral part: bisect theta' for the moment match with K2
    n1 = sc.unit(np.cross(p, q1))
    n2 = sc.unit(np.cross(p, q2))
    frame = sc.Frame(m, np.cross(n, m), n)
    theta_max = -math.asin(sc.clamp(float(np.min(K.vertices @ n)))) - 1e-9

    def quad(theta_p):
        iv = rg.slice_angular_interval(K, frame, -theta_p)
        if iv is None:
            raise NumericError(f"no slice at theta'={theta_p}")
        y1 = sc.from_polar(frame, -theta_p, iv[0])
        y2 = sc.from_polar(frame, -theta_p, iv[1])
        n_p = sc.unit(np.cross(y1, y2))
        zs = []
        for ni, qi in ((n1, q1), (n2, q2)):
            z = sc.unit(np.cross(ni, n_p))
            if float(np.dot(z, n)) > 0.0:
                z = -z
            zs.append((z, qi))
        (z1, _), (z2, _) = zs
        Q = rg.GeodesicPolygon(np.asarray([q1, q2, z2, z1]), require_convex=False)
        return Q

    def quad_gap(theta_p):
        return abs(moment(quad(theta_p), n)) - abs(m2)

    lo_t, hi_t = 1e-7, theta_max
    if quad_gap(hi_t) < 0.0:
        raise NumericError(f"quadrilateral moment not bracketed on theta' in (0, {theta_max})")
    for _ in range(55):
        mid = 0.5 * (lo_t + hi_t)
        if quad_gap(mid) < 0.0:
            lo_t = mid
        else:
            hi_t = mid
    theta_p = 0.5 * (lo_t + hi_t)
    t2_poly = quad(theta_p)

    # assemble T = conv(p, z1, z2) and rotate its centroid onto the cut center
    zz = [v for v in t2_poly.vertices if float(np.dot(v, n)) < 0.0]
    T = rg.GeodesicPolygon(np.asarray([p] + zz), require_convex=False)
    g_t = spherical_centroid(T)
    g_t = sc.unit(g_t - float(np.dot(g_t, n)) * n)  # project residual onto L
    g_k = cut.center
    ang = math.atan2(float(np.dot(np.cross(g_t, g_k), n)), float(np.dot(g_t, g_k)))
    R = sc.rotation_matrix(n, ang)

    return ComparatorResult(
        triangle=T.rotated(R),
        part1=t1_poly.rotated(R),
        part2=t2_poly.rotated(R),
        ratio_region=cut.ratio,
        ratio_triangle=t2_poly.area() / t1_poly.area(),
        moment_residual_1=abs(m_t1 - m1),
        moment_residual_2=abs(abs(moment(t2_poly, n)) - abs(m2)),
        apex=p,
        theta_prime=theta_p,
    )
