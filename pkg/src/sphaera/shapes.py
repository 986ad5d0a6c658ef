"""Seeded generators for test regions: symmetric polygons and smooth ovals."""

from __future__ import annotations

import math

import numpy as np

from . import regions as rg
from . import sphere_core as sc
from .errors import ConvergenceError


def _as_rng(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def point_reflect(p, center):
    return 2.0 * float(np.dot(p, center)) * np.asarray(center, float) - np.asarray(p, float)


def random_c_symmetric_polygon(seed_or_rng, center=None, r_lo: float = 0.3,
                               r_hi: float = 0.7, max_tries: int = 200) -> rg.GeodesicPolygon:
    """Random convex polygon with 6-12 vertices, point-symmetric about center."""
    rng = _as_rng(seed_or_rng)
    center = np.array([1.0, 0.0, 0.0]) if center is None else sc.as_unit_vector(center)
    e1, e2 = rg.tangent_basis(center)
    for _ in range(max_tries):
        half = int(rng.integers(3, 7))  # target vertex counts 6..12
        ang = np.sort(rng.uniform(0.0, math.pi, half))
        if np.min(np.diff(np.concatenate([ang, [ang[0] + math.pi]]))) < 0.15:
            continue
        rad = rng.uniform(r_lo, r_hi, half)
        dirs = np.outer(np.cos(ang), e1) + np.outer(np.sin(ang), e2)
        pts = np.cos(rad)[:, None] * center + np.sin(rad)[:, None] * dirs
        pts = np.vstack([pts, [point_reflect(p, center) for p in pts]])
        hull = rg.convex_hull_s(pts)
        if len(hull) >= 6 and len(hull) % 2 == 0:
            return hull
    raise ConvergenceError("failed to generate a symmetric polygon in the try budget")


def random_c_symmetric_oval_samples(seed_or_rng, center=None, n: int = 1024,
                                    r0_range=(0.35, 0.6), wobble: float = 0.06,
                                    max_tries: int = 100):
    """Boundary samples of a smooth, strictly convex, point-symmetric oval.

    The radial profile uses even harmonics only, so r(t + pi) = r(t) and the
    curve is symmetric under the point reflection through the center.
    """
    rng = _as_rng(seed_or_rng)
    center = np.array([1.0, 0.0, 0.0]) if center is None else sc.as_unit_vector(center)
    e1, e2 = rg.tangent_basis(center)
    t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    for _ in range(max_tries):
        r0 = rng.uniform(*r0_range)
        prof = np.full(n, r0)
        for j, scale in ((2, 1.0), (4, 0.4)):
            amp = wobble * r0 * scale * rng.uniform(0.2, 1.0)
            prof += amp * np.cos(j * t + rng.uniform(0.0, 2.0 * math.pi))
        dirs = np.outer(np.cos(t), e1) + np.outer(np.sin(t), e2)
        pts = np.cos(prof)[:, None] * center + np.sin(prof)[:, None] * dirs
        if _samples_convex(pts, center):
            return pts
    raise ConvergenceError("failed to generate a convex oval in the try budget")


def random_convex_oval_samples(seed_or_rng, center=None, n: int = 1024,
                               r0_range=(0.35, 0.6), wobble: float = 0.05,
                               max_tries: int = 100):
    """Boundary samples of a smooth, strictly convex oval (no symmetry)."""
    rng = _as_rng(seed_or_rng)
    center = np.array([1.0, 0.0, 0.0]) if center is None else sc.as_unit_vector(center)
    e1, e2 = rg.tangent_basis(center)
    t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    for _ in range(max_tries):
        r0 = rng.uniform(*r0_range)
        prof = np.full(n, r0)
        for j, scale in ((1, 0.8), (2, 1.0), (3, 0.5)):
            amp = wobble * r0 * scale * rng.uniform(0.2, 1.0)
            prof += amp * np.cos(j * t + rng.uniform(0.0, 2.0 * math.pi))
        dirs = np.outer(np.cos(t), e1) + np.outer(np.sin(t), e2)
        pts = np.cos(prof)[:, None] * center + np.sin(prof)[:, None] * dirs
        if _samples_convex(pts, center):
            return pts
    raise ConvergenceError("failed to generate a convex oval in the try budget")


def _samples_convex(pts, center) -> bool:
    from .floating import SmoothBoundary

    try:
        bd = SmoothBoundary(pts, resample_to=min(512, len(pts)))
    except Exception:
        return False
    # demand a strict-convexity margin so downstream contact points are unique
    return bool(np.min(bd.curvature) > 0.05)
