"""Exact primitives on the unit sphere.

Points are plain numpy arrays of unit Euclidean norm (length 3 on S^2,
length 4 on S^3).  A :class:`Frame` fixes the polar coordinate system used
throughout: an open hemisphere centered at ``c``, an axis arc ``L`` through
``c`` in direction ``e_l``, and a mirror arc ``H`` through ``c`` in direction
``e_p``.  A point with polar coordinates (theta, phi) is

    p = cos(theta) cos(phi) * c + cos(theta) sin(phi) * e_l + sin(theta) * e_p

so theta is the signed distance from the great circle of L and phi the signed
distance of the foot point on L from H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ArgumentError, DegeneracyError, DomainError

UNIT_TOL = 1e-12


def unit(v):
    """Return v normalized to unit Euclidean norm."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise DegeneracyError("cannot normalize the zero vector")
    return v / n


def as_unit_vector(v, tol=1e-9):
    """Validate and return a unit vector of length 3 or 4."""
    v = np.asarray(v, dtype=float)
    if v.shape not in ((3,), (4,)):
        raise ArgumentError(f"expected a 3- or 4-vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if abs(n - 1.0) > tol:
        raise ArgumentError(f"vector norm {n!r} is not 1 within {tol}")
    return v / n


def clamp(x, lo=-1.0, hi=1.0):
    return min(hi, max(lo, x))


def sph_dist(x, y) -> float:
    """Spherical (angular) distance arccos(<x, y>) in [0, pi]."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ArgumentError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return math.acos(clamp(float(np.dot(x, y))))


def sph_dist_many(x, pts):
    """Distances from one point to each row of ``pts``."""
    d = np.clip(np.asarray(pts, dtype=float) @ np.asarray(x, dtype=float), -1.0, 1.0)
    return np.arccos(d)


def tangent_toward(base, target):
    """Unit tangent at ``base`` pointing along the geodesic toward ``target``."""
    t = np.asarray(target, dtype=float) - np.dot(target, base) * np.asarray(base, dtype=float)
    n = np.linalg.norm(t)
    if n < 1e-15:
        raise DegeneracyError("target coincides with or is antipodal to base")
    return t / n


def slerp(a, b, t):
    """Point at fraction ``t`` along the geodesic segment from a to b."""
    d = sph_dist(a, b)
    if d < 1e-15:
        return np.array(a, dtype=float)
    w = tangent_toward(a, b)
    return math.cos(t * d) * np.asarray(a) + math.sin(t * d) * w


def rotation_matrix(axis, angle):
    """Rodrigues rotation matrix about a unit ``axis`` by ``angle``."""
    axis = unit(axis)
    kx, ky, kz = axis
    K = np.array([[0.0, -kz, ky], [kz, 0.0, -kx], [-ky, kx, 0.0]])
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


def rotation_taking(a, b):
    """A rotation matrix moving unit vector a to unit vector b (3d)."""
    a = unit(a)
    b = unit(b)
    axis = np.cross(a, b)
    s = np.linalg.norm(axis)
    c = clamp(float(np.dot(a, b)))
    if s < 1e-15:
        if c > 0:
            return np.eye(3)
        # antipodal: rotate by pi about any orthogonal axis
        helper = np.array([1.0, 0.0, 0.0])
        if abs(a[0]) > 0.9:
            helper = np.array([0.0, 1.0, 0.0])
        return rotation_matrix(unit(np.cross(a, helper)), math.pi)
    return rotation_matrix(axis / s, math.atan2(s, c))


class PolarCoord(NamedTuple):
    theta: float
    phi: float


@dataclass(frozen=True)
class Frame:
    """Right-handed orthonormal triple (c, e_l, e_p) on S^2.

    ``c`` is the hemisphere center, ``e_l`` the direction of the axis arc L at
    c, and ``e_p`` the direction of the mirror arc H at c (and the direction
    of the poles).
    """

    c: np.ndarray
    e_l: np.ndarray
    e_p: np.ndarray

    def __post_init__(self):
        c = as_unit_vector(self.c)
        e_l = as_unit_vector(self.e_l)
        e_p = as_unit_vector(self.e_p)
        if self.c.shape != (3,):
            raise ArgumentError("Frame is defined on S^2 only")
        gram_err = max(
            abs(float(np.dot(c, e_l))),
            abs(float(np.dot(c, e_p))),
            abs(float(np.dot(e_l, e_p))),
        )
        if gram_err > 1e-10:
            raise ArgumentError("frame vectors are not mutually orthogonal")
        if np.linalg.norm(np.cross(c, e_l) - e_p) > 1e-10:
            raise ArgumentError("frame triple is not right-handed")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e_l", e_l)
        object.__setattr__(self, "e_p", e_p)

    @classmethod
    def from_center_and_axis(cls, c, axis_dir) -> "Frame":
        """Frame with center c whose axis L runs along ``axis_dir`` at c."""
        c = as_unit_vector(c)
        e_l = np.asarray(axis_dir, dtype=float)
        e_l = e_l - np.dot(e_l, c) * c
        n = np.linalg.norm(e_l)
        if n < 1e-12:
            raise DegeneracyError("axis direction is parallel to the center")
        e_l = e_l / n
        return cls(c, e_l, np.cross(c, e_l))

    @classmethod
    def standard(cls) -> "Frame":
        return cls(
            np.array([1.0, 0.0, 0.0]),
            np.array([0.0, 1.0, 0.0]),
            np.array([0.0, 0.0, 1.0]),
        )

    def tangent_direction(self, angle: float):
        """Unit tangent at c at ``angle`` from e_l (toward e_p)."""
        return math.cos(angle) * self.e_l + math.sin(angle) * self.e_p


def to_polar(frame: Frame, p) -> PolarCoord:
    """Polar coordinates of p in the open hemisphere of ``frame``."""
    p = as_unit_vector(p)
    x = float(np.dot(p, frame.c))
    if x <= 0.0:
        raise DomainError("point lies outside the open hemisphere of the frame")
    s = float(np.dot(p, frame.e_p))
    if abs(s) >= 1.0 - 1e-15:
        raise DomainError("point is a pole of the frame")
    theta = math.asin(clamp(s))
    phi = math.atan2(float(np.dot(p, frame.e_l)), x)
    return PolarCoord(theta, phi)


def from_polar(frame: Frame, theta: float, phi: float):
    """Inverse of :func:`to_polar`."""
    ct = math.cos(theta)
    return unit(
        ct * math.cos(phi) * frame.c
        + ct * math.sin(phi) * frame.e_l
        + math.sin(theta) * frame.e_p
    )


def distance_curve_point(frame: Frame, theta: float, phi: float):
    """Point of the distance curve C_theta at longitude phi.

    At fixed theta the curve is the open semicircle of points at signed
    distance theta from the axis great circle, restricted to the hemisphere.
    """
    if not (abs(theta) < math.pi / 2):
        raise DomainError(f"theta={theta} outside (-pi/2, pi/2)")
    if not (abs(phi) < math.pi / 2):
        raise DomainError(f"phi={phi} outside (-pi/2, pi/2)")
    return from_polar(frame, theta, phi)


def rotate_about_poles(frame: Frame, p, dphi: float):
    """Rotate p about the poles of the frame by dphi (theta preserved)."""
    p = as_unit_vector(p)
    if np.dot(p, frame.c) <= 0.0:
        raise DomainError("point lies outside the open hemisphere of the frame")
    return unit(rotation_matrix(frame.e_p, dphi) @ p)


def triangle_area(a, b, c) -> float:
    """Girard area of the spherical triangle abc (orientation-free)."""
    # interior angles via tangents at each vertex
    total = 0.0
    verts = (np.asarray(a, float), np.asarray(b, float), np.asarray(c, float))
    for i in range(3):
        v = verts[i]
        t1 = tangent_toward(v, verts[(i + 1) % 3])
        t2 = tangent_toward(v, verts[(i + 2) % 3])
        total += math.acos(clamp(float(np.dot(t1, t2))))
    return total - math.pi


def lexell_area_locus(x, y, z):
    """Circle through -x, -y and z: the constant-area apex locus over base [x, y].

    Returns ``(center, radius)`` of the small circle; every apex w on the arc
    of this circle on the z side of the great circle through x, y spans a
    triangle (x, y, w) of the same area as (x, y, z).
    """
    x = as_unit_vector(x)
    y = as_unit_vector(y)
    z = as_unit_vector(z)
    if sph_dist(x, y) < 1e-12 or sph_dist(x, -y) < 1e-12:
        raise DegeneracyError("base points are equal or antipodal")
    a, b, c = -x, -y, z
    n = np.cross(a - b, a - c)
    if np.linalg.norm(n) < 1e-12:
        raise DegeneracyError("the three locus points are collinear on the sphere")
    center = unit(n)
    if np.dot(center, a) < 0:
        center = -center
    radius = math.acos(clamp(float(np.dot(center, a))))
    return center, radius


def gnomonic_project(frame: Frame, p):
    """Central projection onto the tangent plane at the frame center.

    Coordinates are taken along (e_l, e_p); geodesic arcs map to straight
    segments.
    """
    p = as_unit_vector(p)
    x = float(np.dot(p, frame.c))
    if x <= 0.0:
        raise DomainError("point not in the open hemisphere; projection undefined")
    return np.array([np.dot(p, frame.e_l) / x, np.dot(p, frame.e_p) / x])


def gnomonic_unproject(frame: Frame, yz):
    y, z = float(yz[0]), float(yz[1])
    return unit(frame.c + y * frame.e_l + z * frame.e_p)


def gnomonic_project_many(frame: Frame, pts):
    """Vectorized gnomonic projection of an (n, 3) array of hemisphere points."""
    pts = np.asarray(pts, dtype=float)
    x = pts @ frame.c
    if np.any(x <= 0.0):
        raise DomainError("some points lie outside the open hemisphere")
    return np.stack([(pts @ frame.e_l) / x, (pts @ frame.e_p) / x], axis=1)


class DistanceCurveModel(NamedTuple):
    """Gnomonic image of a distance curve: a line (theta=0) or hyperbola branch.

    For theta != 0 the image satisfies  z**2 / tan(theta)**2 - y**2 = 1  on the
    branch with sign(z) = branch_sign; for theta = 0 it is the line z = 0.
    """

    theta: float
    is_line: bool
    tan_theta: float
    branch_sign: int

    def residual(self, y, z):
        if self.is_line:
            return np.asarray(z, dtype=float)
        return np.asarray(z, dtype=float) ** 2 / self.tan_theta**2 - np.asarray(y, dtype=float) ** 2 - 1.0


def distance_curve_hyperbola(theta: float) -> DistanceCurveModel:
    """Implicit gnomonic model of the distance curve at height theta."""
    if not (abs(theta) < math.pi / 2):
        raise DomainError(f"theta={theta} outside (-pi/2, pi/2)")
    if theta == 0.0:
        return DistanceCurveModel(0.0, True, 0.0, 0)
    return DistanceCurveModel(theta, False, math.tan(theta), 1 if theta > 0 else -1)
