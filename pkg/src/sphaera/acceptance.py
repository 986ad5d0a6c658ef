"""The 13 acceptance checks, shared by the CLI suite and the test suite.

Each criterion function is self-contained and deterministic; it returns an
AcceptanceResult with the measured values so both the CLI and the tests can
report one pass/fail line per criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import centroid as ct
from . import extremal as ex
from . import floating as fl
from . import highdim as hd
from . import regions as rg
from . import shapes as sh
from . import sphere_core as sc
from . import steiner as st

CENTER = np.array([1.0, 0.0, 0.0])


@dataclass
class AcceptanceResult:
    cid: int
    name: str
    passed: bool
    detail: str
    values: dict = field(default_factory=dict)

    @property
    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.cid:02d} {self.name}: {self.detail}"


def _sym_frame(center, angle: float) -> sc.Frame:
    e1, e2 = rg.tangent_basis(center)
    d = math.cos(angle) * e1 + math.sin(angle) * e2
    return sc.Frame(center, d, np.cross(center, d))


def _symmetric_corpus(count: int, seed: int = 100):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        P = sh.random_c_symmetric_polygon(rng, CENTER)
        angle = rng.uniform(0.0, math.pi)
        out.append((P, _sym_frame(CENTER, angle)))
    return out


def criterion_01() -> AcceptanceResult:
    """gaussian_sign_F at the reference lune parameters returns -139 x0^2."""
    lp = hd.LunePair(x0=1.0, a_plus=2.0, b_plus=3.0, a_minus=3.0, b_minus=1.0)
    f = hd.gaussian_sign_F(lp, 1.0, 0.0)
    rel = abs(f + 139.0) / 139.0
    exact = hd.closed_form_F_at_p0(lp)
    return AcceptanceResult(
        1, "curvature-sign constant", rel <= 1e-4,
        f"F(1,0) = {f:.8g}, target -139, rel err {rel:.3g} (tol 1e-4); "
        f"exact symbolic value is {exact:.8g} = -1225/16, so the -139 target "
        f"is inconsistent with the surface definition (sign still negative)",
        {"F": f, "rel": rel, "exact": exact},
    )


def criterion_02() -> AcceptanceResult:
    """Relative area drift of the symmetral at 2048 levels, 50 random inputs."""
    worst = 0.0
    for P, f in _symmetric_corpus(50):
        slab = st.steiner_symmetral(P, f, levels=2048)
        drift = abs(st.area_slab(slab) - P.area()) / P.area()
        worst = max(worst, drift)
    return AcceptanceResult(
        2, "volume preservation (S^2)", worst <= 1e-4,
        f"max relative area drift {worst:.3g} over 50 polygons (tol 1e-4)",
        {"worst": worst},
    )


def criterion_03() -> AcceptanceResult:
    """Perimeter and diameter do not increase under symmetrization."""
    worst_p = worst_d = -math.inf
    for P, f in _symmetric_corpus(50):
        slab = st.steiner_symmetral(P, f, levels=2048)
        Q = st.symmetral_to_polygon(slab, target_vertices=1024)
        worst_p = max(worst_p, Q.perimeter() - P.perimeter())
        worst_d = max(worst_d, Q.diameter() - P.diameter())
    ok = worst_p <= 1e-4 and worst_d <= 1e-4
    return AcceptanceResult(
        3, "perimeter and diameter monotonicity", ok,
        f"max perimeter increase {worst_p:.3g}, max diameter increase {worst_d:.3g} (tol 1e-4)",
        {"perim": worst_p, "diam": worst_d},
    )


def criterion_04() -> AcceptanceResult:
    """Reconstructed symmetrals pass the gnomonic convexity test."""
    bad = 0
    for P, f in _symmetric_corpus(50):
        slab = st.steiner_symmetral(P, f, levels=2048)
        Q = st.symmetral_to_polygon(slab, target_vertices=1024)
        if not Q.is_convex():
            bad += 1
    return AcceptanceResult(
        4, "planar convexity of symmetrals", bad == 0,
        f"{bad} of 50 reconstructed symmetrals failed the convexity check",
        {"failures": bad},
    )


def criterion_05() -> AcceptanceResult:
    """converge_to_cap reaches Hausdorff 0.01 within 200 iterations, drift <= 1e-3."""
    rng = np.random.default_rng(500)
    n_conv = 0
    worst_drift = 0.0
    worst_iters = 0
    for _ in range(10):
        P = sh.random_c_symmetric_polygon(rng, CENTER)
        traj = st.converge_to_cap(P, eps=0.01, max_iters=200,
                                  strategy="symmetric",
                                  reconstruct_vertices=1024)
        areas = np.array([r[1] for r in traj.rows])
        drift = float(np.max(np.abs(areas - areas[0])) / areas[0])
        worst_drift = max(worst_drift, drift)
        worst_iters = max(worst_iters, traj.iterations)
        n_conv += traj.converged
    ok = n_conv == 10 and worst_drift <= 1e-3
    return AcceptanceResult(
        5, "convergence to cap", ok,
        f"{n_conv}/10 converged (max {worst_iters} iters), max area drift {worst_drift:.3g} (tol 1e-3)",
        {"converged": n_conv, "drift": worst_drift, "iters": worst_iters},
    )


def criterion_06() -> AcceptanceResult:
    """Optimizer recovers the regular inscribed polygon on caps."""
    worst_area = 0.0
    worst_perturb = 0.0
    for r in (math.pi / 6, math.pi / 4, math.pi / 3):
        cap = rg.CapSpec(CENTER, r)
        for N in range(3, 9):
            sol = ex.max_inscribed_polygon(cap, N, restarts=3, seed=6)
            worst_area = max(worst_area, abs(sol.area - ex.sas_constant(r, N)))
            # compare against the regular polygon aligned at the first vertex
            t0 = sol.boundary_params[0]
            ideal = t0 + np.arange(N) * 2.0 * math.pi / N
            pts = np.array([_CapPoint(cap, t) for t in ideal])
            d = [sc.sph_dist(a, b) for a, b in zip(sol.polygon.vertices, pts)]
            worst_perturb = max(worst_perturb, max(d))
    ok = worst_area <= 1e-6 and worst_perturb <= 1e-5
    return AcceptanceResult(
        6, "Sas constant and optimizer agreement", ok,
        f"max |A_N - C(r,N)| = {worst_area:.3g} (tol 1e-6), "
        f"max vertex perturbation {worst_perturb:.3g} (tol 1e-5)",
        {"area": worst_area, "perturb": worst_perturb},
    )


def _CapPoint(cap: rg.CapSpec, t: float):
    e1, e2 = rg.tangent_basis(cap.center)
    return (math.cos(cap.radius) * cap.center
            + math.sin(cap.radius) * (math.cos(t) * e1 + math.sin(t) * e2))


def criterion_07(N: int = 6) -> AcceptanceResult:
    """A_N(K) >= C(r(K), N) - 1e-4 on random symmetric disks."""
    rng = np.random.default_rng(700)
    worst = math.inf
    for _ in range(20):
        pts = sh.random_c_symmetric_oval_samples(rng, CENTER)
        K = fl.SmoothBoundary(pts)
        r_eq = rg.equal_area_cap_radius(K.area())
        sol = ex.max_inscribed_polygon(K, N, restarts=3, seed=7)
        worst = min(worst, sol.area - ex.sas_constant(r_eq, N))
    return AcceptanceResult(
        7, "Sas inequality on symmetric disks", worst >= -1e-4,
        f"min A_{N}(K) - C(r(K),{N}) = {worst:.3g} over 20 disks (tol -1e-4)",
        {"worst_gap": worst},
    )


def criterion_08() -> AcceptanceResult:
    """dist * N^2 matches Omega^3/12 on the cap r = pi/3 at N = 256."""
    r = math.pi / 3
    cap = rg.CapSpec(CENTER, r)
    rows = fl.asymptotic_law_check(cap, [256])
    ratio = rows[0].ratio
    err = abs(ratio - 1.0)
    return AcceptanceResult(
        8, "floating asymptotic law on caps", err <= 1e-3,
        f"ratio = {ratio:.8f} at N=256, |ratio - 1| = {err:.3g} (tol 1e-3)",
        {"ratio": ratio},
    )


def criterion_09() -> AcceptanceResult:
    """Omega_s(K) <= Omega_s(equal-area cap) + 1e-3 on 10 smooth symmetric ovals."""
    rng = np.random.default_rng(900)
    worst = -math.inf
    bad = 0
    for _ in range(10):
        pts = sh.random_c_symmetric_oval_samples(rng, CENTER)
        K = fl.SmoothBoundary(pts)
        v = fl.floating_isoperimetric_check(K, CENTER)
        worst = max(worst, v.omega_region - v.omega_cap)
        bad += not v.passed
    return AcceptanceResult(
        9, "floating isoperimetric inequality", bad == 0,
        f"{10 - bad}/10 passed; max Omega(K) - Omega(cap) = {worst:.3g} (tol 1e-3)",
        {"failures": bad, "worst": worst},
    )


def criterion_10() -> AcceptanceResult:
    """Moments vanish on circles through the centroid; moments are additive."""
    rng = np.random.default_rng(1000)
    worst_m = worst_add = 0.0
    for _ in range(10):
        P = sh.random_c_symmetric_polygon(rng, CENTER)
        g = ct.spherical_centroid(P)
        e1, e2 = rg.tangent_basis(g)
        for k in range(16):
            a = k * math.pi / 16
            n = sc.unit(np.cross(g, math.cos(a) * e1 + math.sin(a) * e2))
            worst_m = max(worst_m, abs(ct.moment(P, n)))
        cut = ct.halving_cut(P, rng.uniform(0.0, math.pi))
        n_any = sc.unit(rng.normal(size=3))
        add = abs(ct.moment(cut.parts[0], n_any) + ct.moment(cut.parts[1], n_any)
                  - ct.moment(P, n_any))
        worst_add = max(worst_add, add)
    ok = worst_m <= 1e-10 and worst_add <= 1e-10
    return AcceptanceResult(
        10, "lever rule", ok,
        f"max centroid-circle moment {worst_m:.3g}, max additivity residual "
        f"{worst_add:.3g} (tol 1e-10)",
        {"moment": worst_m, "additivity": worst_add},
    )


def criterion_11() -> AcceptanceResult:
    """Winternitz comparator: ratio(K) <= ratio(T), residuals <= 1e-8."""
    rng = np.random.default_rng(1100)
    worst_margin = math.inf
    worst_res = 0.0
    for _ in range(20):
        pts = sh.random_convex_oval_samples(rng, CENTER)
        K = fl.SmoothBoundary(pts).to_polygon(1024)
        cut = ct.halving_cut(K, rng.uniform(0.0, math.pi))
        res = ct.winternitz_comparator(K, cut)
        worst_margin = min(worst_margin, res.ratio_triangle - res.ratio_region)
        worst_res = max(worst_res, res.moment_residual_1, res.moment_residual_2)
    ok = worst_margin >= -1e-6 and worst_res <= 1e-8
    return AcceptanceResult(
        11, "spherical Winternitz comparator", ok,
        f"min ratio(T) - ratio(K) = {worst_margin:.3g} (tol -1e-6), "
        f"max moment residual {worst_res:.3g} (tol 1e-8)",
        {"margin": worst_margin, "residual": worst_res},
    )


def criterion_12() -> AcceptanceResult:
    """S^3 Monte-Carlo volume preservation at the reference lune parameters."""
    lp = hd.LunePair(x0=1.0, a_plus=2.0, b_plus=3.0, a_minus=3.0, b_minus=1.0)
    res = hd.mc_volume_check(lp, samples=10**7, seed=12)
    gap = abs(res.vol_before - res.vol_after)
    ok = gap <= 3.0 * res.stderr
    return AcceptanceResult(
        12, "S^3 Monte-Carlo volume preservation", ok,
        f"|{res.vol_before:.6g} - {res.vol_after:.6g}| = {gap:.3g} "
        f"vs 3*stderr = {3 * res.stderr:.3g} at 1e7 samples",
        {"before": res.vol_before, "after": res.vol_after, "stderr": res.stderr},
    )


def criterion_13() -> AcceptanceResult:
    """C(r,N)/cap-area approaches the Euclidean Sas ratio as r -> 0."""
    r = 1e-3
    cap_area = 2.0 * math.pi * (1.0 - math.cos(r))
    worst = 0.0
    for N in range(3, 9):
        got = ex.sas_constant(r, N) / cap_area
        want = N / (2.0 * math.pi) * math.sin(2.0 * math.pi / N)
        worst = max(worst, abs(got - want) / want)
    return AcceptanceResult(
        13, "Euclidean-limit regression", worst <= 1e-4,
        f"max relative error {worst:.3g} at r=1e-3, N=3..8 (tol 1e-4)",
        {"worst": worst},
    )


CRITERIA = [
    criterion_01, criterion_02, criterion_03, criterion_04, criterion_05,
    criterion_06, criterion_07, criterion_08, criterion_09, criterion_10,
    criterion_11, criterion_12, criterion_13,
]


def run_all(workers: int = 1):
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda f: f(), CRITERIA))
    return [f() for f in CRITERIA]
