"""Local S^3 analysis of symmetrized lunes in the gnomonic model.

The tangent 3-space at the hemisphere center models S^3 with L the z-axis and
H the (x, y)-plane; distance-curve fibers are  z |-> (sqrt(1+z^2) u,
sqrt(1+z^2) v, z)  at fixed (u, v).  A lune between planes H_-(below) and
H_+ (above) meets each fiber in the arc between heights z_-(u, v) and
z_+(u, v); symmetrization recenters that arc to +-z_s(u, v).  The quantity F
carries the sign of the Gaussian curvature of the symmetral surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ArgumentError, DomainError, PreconditionError, SingularityError
from .steiner import symmetrized_z_endpoints


@dataclass(frozen=True)
class LunePair:
    """Planes H_*: A_*(x - x0) + B_* y = z through p0 = (x0, 0, 0)."""

    x0: float
    a_plus: float
    b_plus: float
    a_minus: float
    b_minus: float

    def __post_init__(self):
        if self.x0 <= 0.0:
            raise ArgumentError(f"x0 must be positive, got {self.x0}")
        if not (self.a_plus < self.a_minus):
            # equivalent to L meeting the open lune between the planes
            raise ArgumentError("need A_plus < A_minus")

    def coeffs(self, sign: str):
        if sign == "+":
            return self.a_plus, self.b_plus
        if sign == "-":
            return self.a_minus, self.b_minus
        raise ArgumentError(f"sign must be '+' or '-', got {sign!r}")

    @property
    def domain_radius(self) -> float:
        """Default (u, v) guard: the ball of radius 0.2 x0 around (x0, 0)."""
        return 0.2 * self.x0

    def safe_radius(self) -> float:
        """Largest disk around (x0, 0) where both z_* closed forms are real."""
        best = self.domain_radius
        for a, b in ((self.a_plus, self.b_plus), (self.a_minus, self.b_minus)):
            cap = (math.sqrt(a * a * self.x0**2 + 1.0) - abs(a) * self.x0) / math.hypot(a, b)
            best = min(best, 0.9 * cap)
        return best

    def _check_domain(self, u, v):
        if math.hypot(u - self.x0, v) > self.domain_radius + 1e-12:
            raise DomainError("(u, v) outside the working neighborhood of (x0, 0)")


def zstar(lp: LunePair, sign: str, u: float, v: float) -> float:
    """Height where the fiber at (u, v) crosses the plane of the given sign.

    z_* = (A x0 - s sqrt((A^2 x0^2 + 1) - s^2)) / (s^2 - 1),  s = A u + B v;
    the branch is fixed by z_*(x0, 0) = 0.
    """
    lp._check_domain(u, v)
    a, b = lp.coeffs(sign)
    s = a * u + b * v
    if abs(abs(s) - 1.0) < 1e-12:
        raise SingularityError(f"|A u + B v| = 1 at (u, v) = ({u}, {v})")
    rad = (a * a * lp.x0**2 + 1.0) - s * s
    if rad < 0.0:
        raise DomainError(f"fiber at ({u}, {v}) does not cross the {sign} plane")
    return (a * lp.x0 - s * math.sqrt(rad)) / (s * s - 1.0)


def _zstar_array(a: float, b: float, x0: float, u, v):
    """Vectorized z_*; NaN where the closed form is undefined."""
    s = a * u + b * v
    rad = (a * a * x0 * x0 + 1.0) - s * s
    denom = s * s - 1.0
    bad = (rad < 0.0) | (np.abs(np.abs(s) - 1.0) < 1e-12)
    with np.errstate(invalid="ignore", divide="ignore"):
        z = (a * x0 - s * np.sqrt(np.abs(rad))) / denom
    return np.where(bad, np.nan, z)


def plane_residual(lp: LunePair, sign: str, u: float, v: float, z: float) -> float:
    a, b = lp.coeffs(sign)
    w = math.sqrt(z * z + 1.0)
    return a * (w * u - lp.x0) + b * w * v - z


def symmetral_surface(lp: LunePair, u: float, v: float):
    """Point of the symmetrized upper surface: (sqrt(1+z_s^2) u, ..., z_s)."""
    zp = zstar(lp, "+", u, v)
    zm = zstar(lp, "-", u, v)
    zs, _ = symmetrized_z_endpoints(min(zm, zp), max(zm, zp))
    if zp < zm:
        zs = -zs
    w = math.sqrt(zs * zs + 1.0)
    return np.array([w * u, w * v, zs])


def gaussian_sign_F(lp: LunePair, u: float, v: float, step: float = 1e-5) -> float:
    """F = <r_u x r_v, r_uu> <r_u x r_v, r_vv> - <r_u x r_v, r_uv>^2.

    Partials by central differences at steps h and 2h, Richardson-combined;
    sign(F) is the sign of the Gaussian curvature numerator of the surface.
    """
    r = lambda uu, vv: symmetral_surface(lp, uu, vv)
    try:
        vals = {}
        for i in (-2, -1, 0, 1, 2):
            vals[(i, 0)] = r(u + i * step, v)
            vals[(0, i)] = r(u, v + i * step)
        for i in (-2, -1, 1, 2):
            vals[(i, i)] = r(u + i * step, v + i * step)
            vals[(i, -i)] = r(u + i * step, v - i * step)
    except DomainError as exc:
        raise DomainError(f"finite-difference stencil leaves the domain: {exc}") from exc

    def richardson(d_h, d_2h):
        return (4.0 * d_h - d_2h) / 3.0

    h = step
    r_u = richardson((vals[(1, 0)] - vals[(-1, 0)]) / (2 * h),
                     (vals[(2, 0)] - vals[(-2, 0)]) / (4 * h))
    r_v = richardson((vals[(0, 1)] - vals[(0, -1)]) / (2 * h),
                     (vals[(0, 2)] - vals[(0, -2)]) / (4 * h))
    p0 = vals[(0, 0)]
    r_uu = richardson((vals[(1, 0)] - 2 * p0 + vals[(-1, 0)]) / h**2,
                      (vals[(2, 0)] - 2 * p0 + vals[(-2, 0)]) / (4 * h**2))
    r_vv = richardson((vals[(0, 1)] - 2 * p0 + vals[(0, -1)]) / h**2,
                      (vals[(0, 2)] - 2 * p0 + vals[(0, -2)]) / (4 * h**2))
    r_uv = richardson(
        (vals[(1, 1)] - vals[(1, -1)] - vals[(-1, 1)] + vals[(-1, -1)]) / (4 * h**2),
        (vals[(2, 2)] - vals[(2, -2)] - vals[(-2, 2)] + vals[(-2, -2)]) / (16 * h**2),
    )
    nvec = np.cross(r_u, r_v)
    return float(np.dot(nvec, r_uu) * np.dot(nvec, r_vv) - np.dot(nvec, r_uv) ** 2)


def closed_form_F_at_p0(lp: LunePair) -> float:
    """Exact value of F at (x0, 0), by symbolic differentiation of the surface:

        F(x0, 0) = -x0^2 (A_- + A_+)^2 (A_- B_+ - A_+ B_-)^2 / 16.

    Always nonpositive: the base point is never elliptic, and it is hyperbolic
    exactly when A_- B_+ != A_+ B_- (and A_- + A_+ != 0).
    """
    ap, bp = lp.a_plus, lp.b_plus
    am, bm = lp.a_minus, lp.b_minus
    return -(lp.x0**2 / 16.0) * (am + ap) ** 2 * (am * bp - ap * bm) ** 2


# ---------------------------------------------------------------------------
# projection along L
# ---------------------------------------------------------------------------

def project_along_L(point):
    """Collapse the distance-curve fiber through a model point onto H (z=0)."""
    x, y, z = (float(t) for t in np.asarray(point, dtype=float))
    w = math.sqrt(1.0 + z * z)
    return np.array([x / w, y / w, 0.0])


class MidpointComparison(NamedTuple):
    x_chord: float   # x-coordinate of the chord midpoint m*
    x_fiber: float   # x-coordinate of m' on the fiber through the projected midpoint
    convex_ok: bool


def projection_convexity_test(triangle) -> MidpointComparison:
    """Midpoint criterion for convexity of proj_{L,H} of a triangle at c.

    The triangle is given by three model points, one of which must be the
    origin (the hemisphere center c).  After normalizing the chord endpoints
    to symmetric heights +-zbar by a fiber-preserving rotation, convexity of
    the projection reduces to x(m*) >= x(m'), which follows from
    |(r2 - r1)/(r1 + r2)| < 1.
    """
    pts = [np.asarray(p, dtype=float) for p in triangle]
    if len(pts) != 3:
        raise ArgumentError("need exactly three triangle vertices")
    origin = [i for i, p in enumerate(pts) if np.linalg.norm(p) < 1e-12]
    if not origin:
        raise PreconditionError("the hemisphere center c must be a vertex")
    q = [p for i, p in enumerate(pts) if i != origin[0]]

    # fiber coordinates (u, v, alpha = arctan z) of the two chord endpoints
    uv = []
    alphas = []
    for p in q:
        w = math.sqrt(1.0 + p[2] ** 2)
        uv.append(np.array([p[0] / w, p[1] / w]))
        alphas.append(math.atan(p[2]))
    r1, r2 = (float(np.linalg.norm(x)) for x in uv)
    if r1 < 1e-14 or r2 < 1e-14:
        return MidpointComparison(0.0, 0.0, True)  # an endpoint on L: degenerate
    omega = -0.5 * (alphas[0] + alphas[1])
    zbar = abs(math.tan(alphas[0] + omega))
    cos2phi = float(np.dot(uv[0], uv[1])) / (r1 * r2)
    phi = 0.5 * math.acos(max(-1.0, min(1.0, cos2phi)))

    lam = (r2 - r1) / (r1 + r2)
    scale = 2.0 * r1 * r2 / (r1 + r2) * math.cos(phi)
    x_star = scale * math.sqrt(1.0 + zbar * zbar)
    x_prime = scale * math.sqrt(1.0 + zbar * zbar * lam * lam)
    return MidpointComparison(x_star, x_prime, x_star >= x_prime - 1e-12)


# ---------------------------------------------------------------------------
# Monte-Carlo volume preservation in S^3
# ---------------------------------------------------------------------------

class MCVolumeResult(NamedTuple):
    vol_before: float
    vol_after: float
    stderr: float
    samples: int
    radius: float
    z_max: float


def _rotate_height(z, omega):
    """Fiber-preserving rotation about H0: z -> tan(arctan z + omega)."""
    return np.tan(np.arctan(z) + omega)


def mc_volume_check(lp: LunePair, phi_rotation: float = 0.0, samples: int = 10**7,
                    seed: int = 0, radius: float | None = None,
                    batch: int = 1_000_000) -> MCVolumeResult:
    """Monte-Carlo S^3 volumes of the lune body and its symmetral.

    Samples (u, v, z) in a cylinder over a disk around (x0, 0); the S^3
    volume element in these fiber coordinates is
    (1 + z^2) / (1 + (1+z^2)(u^2+v^2) + z^2)^2 du dv dz.  The reported
    stderr is that of the per-sample volume difference (the two indicator
    estimates share samples, so their difference is what the check bounds).
    """
    if radius is None:
        radius = lp.safe_radius()
    x0 = lp.x0

    # z-extent of both bodies, from a coarse grid over the disk
    g = np.linspace(-radius, radius, 41)
    gu, gv = np.meshgrid(x0 + g, g)
    inside = (gu - x0) ** 2 + gv**2 <= radius**2
    zp = np.where(inside, _zstar_array(lp.a_plus, lp.b_plus, x0, gu, gv), 0.0)
    zm = np.where(inside, _zstar_array(lp.a_minus, lp.b_minus, x0, gu, gv), 0.0)
    if np.any(np.isnan(zp)) or np.any(np.isnan(zm)):
        raise DomainError(f"closed forms undefined inside radius {radius}; shrink it")
    zp_r = _rotate_height(zp, phi_rotation)
    zm_r = _rotate_height(zm, phi_rotation)
    z_max = 1.1 * float(np.nanmax(np.abs(np.stack([zp_r, zm_r])))) + 1e-6

    rng = np.random.default_rng(seed)
    box_volume = math.pi * radius**2 * 2.0 * z_max
    sum_b = sum_a = sum_d = sum_d2 = 0.0
    done = 0
    while done < samples:
        n = min(batch, samples - done)
        rho = radius * np.sqrt(rng.random(n))
        ang = rng.uniform(0.0, 2.0 * math.pi, n)
        u = x0 + rho * np.cos(ang)
        v = rho * np.sin(ang)
        z = rng.uniform(-z_max, z_max, n)

        zp = _zstar_array(lp.a_plus, lp.b_plus, x0, u, v)
        zm = _zstar_array(lp.a_minus, lp.b_minus, x0, u, v)
        if np.any(np.isnan(zp)) or np.any(np.isnan(zm)):
            raise DomainError("sample outside the closed-form domain; shrink the radius")
        lo = np.minimum(zm, zp)
        hi = np.maximum(zm, zp)
        zs = (zp - zm) / (np.sqrt(1 + zp**2) * np.sqrt(1 + zm**2) + 1 + zp * zm)
        lo_r = _rotate_height(lo, phi_rotation)
        hi_r = _rotate_height(hi, phi_rotation)

        w = (1.0 + z * z) / (1.0 + (1.0 + z * z) * (u * u + v * v) + z * z) ** 2
        before = w * ((z >= lo_r) & (z <= hi_r) & (zp > zm))
        after = w * (np.abs(z) <= np.abs(zs)) * (zp > zm)
        d = before - after
        sum_b += float(before.sum())
        sum_a += float(after.sum())
        sum_d += float(d.sum())
        sum_d2 += float((d * d).sum())
        done += n

    vol_b = box_volume * sum_b / samples
    vol_a = box_volume * sum_a / samples
    var_d = sum_d2 / samples - (sum_d / samples) ** 2
    stderr = box_volume * math.sqrt(max(var_d, 0.0) / samples)
    return MCVolumeResult(vol_b, vol_a, stderr, samples, radius, z_max)
