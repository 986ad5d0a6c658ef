"""Floating area of smooth convex disks and its approximation asymptotics.

Omega_s(K) = int_{bd K} max(kappa_g, 0)^(1/3) ds governs the best inscribed
N-gon approximation through  (area(K) - A_N(K)) * N^2 -> Omega_s(K)^3 / 12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.interpolate import CubicSpline

from . import extremal as ex
from . import regions as rg
from . import sphere_core as sc
from .errors import ArgumentError, PreconditionError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class SmoothBoundary:
    """Closed C^2 convex curve on S^2, arclength-resampled.

    Orientation is normalized to counterclockwise (region on the left, seen
    from outside the sphere), so convex input has kappa_g >= 0.
    """

    def __init__(self, samples, resample_to: int = 1024):
        P = np.asarray(samples, dtype=float)
        if P.ndim != 2 or P.shape[1] != 3 or len(P) < 16:
            raise ArgumentError("need at least 16 sample points on S^2")
        P = P / np.linalg.norm(P, axis=1)[:, None]

        u = sc.unit(P.mean(axis=0))
        e1, e2 = rg.tangent_basis(u)
        x = P @ u
        if np.any(x <= 0.0):
            raise ArgumentError("samples are not contained in one open hemisphere")
        cx, cy = (P @ e1) / x, (P @ e2) / x
        if np.sum(cx * np.roll(cy, -1) - np.roll(cx, -1) * cy) < 0.0:
            P = P[::-1]

        # arclength resampling, iterated so gaps equalize within 1%
        for _ in range(3):
            gaps = np.arccos(np.clip(np.sum(P * np.roll(P, -1, axis=0), axis=1), -1, 1))
            s = np.concatenate([[0.0], np.cumsum(gaps)])
            spline = CubicSpline(s, np.vstack([P, P[:1]]), bc_type="periodic")
            total = float(s[-1])
            P = spline(np.linspace(0.0, total, resample_to, endpoint=False))
            P = P / np.linalg.norm(P, axis=1)[:, None]

        gaps = np.arccos(np.clip(np.sum(P * np.roll(P, -1, axis=0), axis=1), -1, 1))
        s = np.concatenate([[0.0], np.cumsum(gaps)])
        self.samples = P
        self.total_length = float(s[-1])
        self._spline = CubicSpline(s, np.vstack([P, P[:1]]), bc_type="periodic")

    def point_at(self, s: float):
        return sc.unit(self._spline(s % self.total_length))

    @cached_property
    def curvature(self):
        """Per-sample geodesic curvature det(p, p', p'') / |p'|^3.

        Central differences at steps h and 2h, Richardson-combined.
        """
        P = self.samples
        h = self.total_length / len(P)

        def kappa(step):
            hp = step * h
            fwd = np.roll(P, -step, axis=0)
            bwd = np.roll(P, step, axis=0)
            d1 = (fwd - bwd) / (2.0 * hp)
            d2 = (fwd - 2.0 * P + bwd) / hp**2
            num = np.sum(np.cross(P, d1) * d2, axis=1)
            return num / np.linalg.norm(d1, axis=1) ** 3

        return (4.0 * kappa(1) - kappa(2)) / 3.0

    def is_convex(self, tol: float = 1e-6) -> bool:
        return bool(np.min(self.curvature) >= -tol)

    def area(self) -> float:
        """Enclosed area by Gauss-Bonnet: 2 pi - closed integral of kappa_g ds."""
        h = self.total_length / len(self.samples)
        return 2.0 * math.pi - h * float(np.sum(self.curvature))

    def to_polygon(self, n: int = 512) -> rg.GeodesicPolygon:
        step = max(1, len(self.samples) // n)
        return rg.GeodesicPolygon(self.samples[::step], require_convex=False)


def geodesic_curvature(curve: SmoothBoundary, index=None):
    """kappa_g at one sample index, or the full per-sample array."""
    k = curve.curvature
    return k if index is None else float(k[index])


def cap_smooth_boundary(center, r: float, n: int = 1024) -> SmoothBoundary:
    return SmoothBoundary(rg.CapSpec(center, r).boundary_points(max(n, 64)), resample_to=n)


def cap_floating_area(r: float) -> float:
    """Closed form for a cap: 2 pi sin(r) cot(r)^(1/3)."""
    if not (0.0 < r <= math.pi / 2):
        raise ArgumentError(f"radius {r} outside (0, pi/2]")
    return 2.0 * math.pi * math.sin(r) * (math.cos(r) / math.sin(r)) ** (1.0 / 3.0)


def floating_area(K: SmoothBoundary) -> float:
    """Trapezoid value of  int max(kappa_g, 0)^(1/3) ds  on the cyclic grid."""
    if not K.is_convex():
        raise PreconditionError("floating area requires a convex boundary")
    h = K.total_length / len(K.samples)
    return h * float(np.sum(np.maximum(K.curvature, 0.0) ** (1.0 / 3.0)))


class AsymptoticRow(NamedTuple):
    N: int
    dist: float
    dist_n2: float
    omega_cubed_over_12: float
    ratio: float
    ok: bool


def asymptotic_law_check(K, N_list, restarts: int = 8, seed: int = 0):
    """Rows of (N, dist, dist*N^2, Omega^3/12, ratio) for increasing N.

    For caps, dist = area - C(r, N) exactly; otherwise dist uses the
    inscribed-polygon optimizer and failed rows are flagged, not fatal.
    """
    N_list = list(N_list)
    if any(b <= a for a, b in zip(N_list, N_list[1:])) or (N_list and N_list[0] < 8):
        raise ArgumentError("N_list must be increasing with minimum at least 8")
    if isinstance(K, rg.CapSpec):
        area = K.area()
        omega = floating_area(cap_smooth_boundary(K.center, K.radius))
        dist_of = lambda N: area - ex.sas_constant(K.radius, N)
    elif isinstance(K, SmoothBoundary):
        area = K.area()
        omega = floating_area(K)

        def dist_of(N):
            return area - ex.max_inscribed_polygon(K, N, restarts=restarts, seed=seed).area
    else:
        raise ArgumentError(f"unsupported region type {type(K).__name__}")

    denom = omega**3 / 12.0
    rows = []
    for N in N_list:
        try:
            d = dist_of(N)
            rows.append(AsymptoticRow(N, d, d * N * N, denom, d * N * N / denom, True))
        except Exception:
            rows.append(AsymptoticRow(N, math.nan, math.nan, denom, math.nan, False))
    return rows


def _distance_to_curve(K: SmoothBoundary, p):
    """min_s d(p, K(s)) via nearest sample plus a golden-section refinement."""
    d = sc.sph_dist_many(p, K.samples)
    i = int(np.argmin(d))
    h = K.total_length / len(K.samples)
    a, b = (i - 1) * h, (i + 1) * h

    def f(s):
        return sc.sph_dist(p, K.point_at(s))

    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > 1e-12:
        if f1 > f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    return f(0.5 * (a + b))


def check_central_symmetry(K: SmoothBoundary, center, tol: float = 1e-6) -> bool:
    """Point reflections through the center land back on the curve within tol."""
    m = sc.as_unit_vector(center)
    step = max(1, len(K.samples) // 64)
    for p in K.samples[::step]:
        q = 2.0 * float(np.dot(p, m)) * m - p
        if _distance_to_curve(K, q) > tol:
            return False
    return True


@dataclass(frozen=True)
class IsoperimetricVerdict:
    passed: bool
    omega_region: float
    omega_cap: float
    cap_radius: float

    @property
    def gap(self) -> float:
        return self.omega_cap - self.omega_region


def floating_isoperimetric_check(K: SmoothBoundary, center, tol: float = 1e-3) -> IsoperimetricVerdict:
    """Omega_s(K) <= Omega_s(equal-area cap), for c-symmetric smooth convex K."""
    if not check_central_symmetry(K, center):
        raise PreconditionError("region is not centrally symmetric about the given center")
    omega_k = floating_area(K)
    r_eq = rg.equal_area_cap_radius(K.area())
    omega_cap = cap_floating_area(r_eq)
    return IsoperimetricVerdict(omega_k <= omega_cap + tol, omega_k, omega_cap, r_eq)
