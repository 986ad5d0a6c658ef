"""Batch experiment front end.

Loads a region file, runs one of the verification commands, and writes CSV
(17 significant digits, byte-stable for a fixed config and seed) plus a
rendered figure next to it.  Exit codes: 0 all checks passed, 2 property
violation (with a machine-readable violations JSON), 1 input/usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import acceptance as ac
from . import centroid as ct
from . import extremal as ex
from . import floating as fl
from . import highdim as hd
from . import plots
from . import regions as rg
from . import sphere_core as sc
from . import steiner as st
from .errors import SphaeraError
from .regionio import load_region

COMMANDS = ("symmetrize", "converge", "sas", "floating", "winternitz",
            "highdim", "suite")


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: str, header: str, rows) -> None:
    lines = [header]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _fmt(v) for v in row))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_violations(out_dir: str, violations) -> None:
    path = os.path.join(out_dir, "violations.json")
    with open(path, "w") as fh:
        json.dump({"violations": violations}, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _region_center(region):
    if isinstance(region, rg.CapSpec):
        return region.center
    if isinstance(region, rg.GeodesicPolygon):
        return rg.circumdisk(region).center
    return rg.circumdisk(region.to_polygon(256)).center


def _as_polygon(region, n: int = 256):
    if isinstance(region, rg.GeodesicPolygon):
        return region
    if isinstance(region, rg.CapSpec):
        return rg.GeodesicPolygon(region.boundary_points(n))
    return region.to_polygon(min(n, len(region.samples)))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_symmetrize(region, args, out_dir):
    P = _as_polygon(region)
    center = rg.circumdisk(P).center
    e1, _ = rg.tangent_basis(center)
    frame = sc.Frame(center, e1, np.cross(center, e1))
    slab = st.steiner_symmetral(P, frame, levels=args.levels)
    Q = st.symmetral_to_polygon(slab)
    area0, area1 = P.area(), st.area_slab(slab)
    rows = [(area0, area1, P.perimeter(), Q.perimeter(), P.diameter(),
             Q.diameter(), "1" if Q.is_convex() else "0")]
    _write_csv(os.path.join(out_dir, "symmetrize.csv"),
               "area_before,area_after,perimeter_before,perimeter_after,"
               "diameter_before,diameter_after,convex_after", rows)
    plots.save_region_figure(
        os.path.join(out_dir, "symmetrize.png"), [P, Q],
        ["input", "symmetral"], center, "Steiner symmetral")
    violations = []
    if abs(area1 - area0) / area0 > 1e-4:
        violations.append({"check": "area_preservation",
                           "value": abs(area1 - area0) / area0, "tol": 1e-4})
    if Q.perimeter() - P.perimeter() > 1e-4:
        violations.append({"check": "perimeter_monotonicity",
                           "value": Q.perimeter() - P.perimeter(), "tol": 1e-4})
    if Q.diameter() - P.diameter() > 1e-4:
        violations.append({"check": "diameter_monotonicity",
                           "value": Q.diameter() - P.diameter(), "tol": 1e-4})
    if not Q.is_convex():
        violations.append({"check": "convexity", "value": False})
    return violations


def _cmd_converge(region, args, out_dir):
    P = _as_polygon(region)
    traj = st.converge_to_cap(P, eps=args.eps, levels=args.levels)
    _write_csv(os.path.join(out_dir, "converge.csv"), traj.header, traj.rows)
    plots.save_trajectory_figure(os.path.join(out_dir, "converge.png"),
                                 traj.rows, traj.cap_radius)
    areas = np.array([r[1] for r in traj.rows])
    drift = float(np.max(np.abs(areas - areas[0])) / areas[0])
    violations = []
    if drift > 1e-3:
        violations.append({"check": "area_drift", "value": drift, "tol": 1e-3})
    if not traj.converged:
        violations.append({"check": "converged", "value": False,
                           "eps": args.eps, "iterations": traj.iterations})
    return violations


def _cmd_sas(region, args, out_dir):
    r_eq = rg.equal_area_cap_radius(region.area())
    n_values = list(range(3, 3 + max(1, args.samples)))
    rows, areas, consts, violations = [], [], [], []
    for N in n_values:
        sol = ex.max_inscribed_polygon(region, N, restarts=args.restarts,
                                       seed=args.seed)
        c = ex.sas_constant(r_eq, N)
        gap = sol.area - c
        rows.append((float(N), r_eq, sol.area, c, gap))
        areas.append(sol.area)
        consts.append(c)
        if gap < -1e-4:
            violations.append({"check": "sas_inequality", "N": N,
                               "value": gap, "tol": -1e-4})
    _write_csv(os.path.join(out_dir, "sas.csv"),
               "N,r_equal_area,A_N,C(r,N),gap", rows)
    plots.save_sas_figure(os.path.join(out_dir, "sas.png"),
                          n_values, areas, consts)
    return violations


def _cmd_floating(region, args, out_dir):
    if isinstance(region, rg.GeodesicPolygon):
        raise SphaeraError("floating-area analysis needs a cap or smooth boundary")
    n_list = [8, 16, 32, 64, 128, 256]
    out = fl.asymptotic_law_check(region, n_list, restarts=args.restarts,
                                  seed=args.seed)
    rows = [(float(r.N), r.dist, r.dist_n2, r.omega_cubed_over_12, r.ratio)
            for r in out]
    _write_csv(os.path.join(out_dir, "floating.csv"),
               "N,dist,distN2,omega_cubed_over_12,ratio", rows)
    plots.save_ratio_figure(os.path.join(out_dir, "floating.png"), n_list,
                            [r.ratio for r in out],
                            "floating-area asymptotic law")
    violations = []
    if isinstance(region, rg.CapSpec) and abs(out[-1].ratio - 1.0) > 1e-3:
        violations.append({"check": "asymptotic_law", "N": out[-1].N,
                           "value": out[-1].ratio, "tol": 1e-3})
    return violations


def _cmd_winternitz(region, args, out_dir):
    K = _as_polygon(region, n=1024)
    directions = np.linspace(0.0, math.pi, max(1, args.samples), endpoint=False)
    rows, violations = [], []
    for d in directions:
        cut = ct.halving_cut(K, float(d))
        res = ct.winternitz_comparator(K, cut)
        margin = res.ratio_triangle - res.ratio_region
        rows.append((float(d), res.ratio_region, res.ratio_triangle, margin))
        if margin < -1e-6:
            violations.append({"check": "winternitz", "direction": float(d),
                               "value": margin, "tol": -1e-6})
    _write_csv(os.path.join(out_dir, "winternitz.csv"),
               "direction,ratio_K,ratio_T,margin", rows)
    plots.save_ratio_figure(
        os.path.join(out_dir, "winternitz.png"),
        [max(1, i + 1) for i in range(len(rows))],
        [r[2] / max(r[1], 1e-12) for r in rows],
        "comparator ratio(T) / ratio(K) by direction index")
    return violations


def _cmd_highdim(region, args, out_dir):
    lp = hd.LunePair(x0=args.x0, a_plus=args.aplus, b_plus=args.bplus,
                     a_minus=args.aminus, b_minus=args.bminus)
    radius = lp.safe_radius()
    g = args.grid
    u = lp.x0 + np.linspace(-0.8 * radius, 0.8 * radius, g)
    v = np.linspace(-0.8 * radius, 0.8 * radius, g)
    zp = np.empty((g, g))
    zm = np.empty((g, g))
    zs = np.empty((g, g))
    ff = np.empty((g, g))
    rows = []
    for i, ui in enumerate(u):
        for j, vj in enumerate(v):
            zp[i, j] = hd.zstar(lp, "+", float(ui), float(vj))
            zm[i, j] = hd.zstar(lp, "-", float(ui), float(vj))
            zs[i, j] = hd.symmetral_surface(lp, float(ui), float(vj))[2]
            try:
                ff[i, j] = hd.gaussian_sign_F(lp, float(ui), float(vj))
            except SphaeraError:
                ff[i, j] = math.nan
            rows.append((float(ui), float(vj), zp[i, j], zm[i, j],
                         zs[i, j], ff[i, j]))
    _write_csv(os.path.join(out_dir, "highdim.csv"),
               "u,v,z_plus,z_minus,z_s,F", rows)
    plots.save_surface_figure(os.path.join(out_dir, "highdim.png"),
                              u, v, zp, zm, zs)
    f0 = hd.gaussian_sign_F(lp, lp.x0, 0.0)
    closed = hd.closed_form_F_at_p0(lp)
    _write_csv(os.path.join(out_dir, "highdim_center.csv"),
               "u,v,F,F_closed_form", [(lp.x0, 0.0, f0, closed)])
    violations = []
    if abs(f0 - closed) / max(abs(closed), 1.0) > 1e-4:
        violations.append({"check": "F_center", "value": f0,
                           "closed_form": closed, "tol": 1e-4})
    mc = hd.mc_volume_check(lp, samples=args.samples, seed=args.seed)
    _write_csv(os.path.join(out_dir, "highdim_mc.csv"),
               "samples,vol_before,vol_after,stderr",
               [(float(mc.samples), mc.vol_before, mc.vol_after, mc.stderr)])
    if abs(mc.vol_before - mc.vol_after) > 3.0 * mc.stderr:
        violations.append({"check": "mc_volume", "before": mc.vol_before,
                           "after": mc.vol_after, "stderr": mc.stderr})
    return violations


def _cmd_suite(region, args, out_dir):
    workers = max(1, int(os.environ.get("SPHAERA_THREADS", "1")))
    results = ac.run_all(workers=workers)
    rows = [(str(r.cid), r.name, "1" if r.passed else "0", r.detail)
            for r in results]
    lines = ["criterion,name,passed,detail"]
    for row in rows:
        detail = row[3].replace('"', "'")
        lines.append(f'{row[0]},{row[1]},{row[2]},"{detail}"')
    with open(os.path.join(out_dir, "suite.csv"), "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    plots.save_suite_figure(os.path.join(out_dir, "suite.png"), results)
    for r in results:
        print(r.line)
    return [{"check": f"criterion_{r.cid:02d}", "name": r.name,
             "detail": r.detail} for r in results if not r.passed]


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sphaera",
        description="Steiner symmetrization experiments on the sphere")
    p.add_argument("--cmd", required=True, choices=COMMANDS)
    p.add_argument("--in", dest="infile", help="region JSON file")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--levels", type=int, default=512)
    p.add_argument("--samples", type=int, default=6,
                   help="N count for sas / directions for winternitz / "
                        "MC samples for highdim")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--aplus", type=float, default=2.0)
    p.add_argument("--bplus", type=float, default=3.0)
    p.add_argument("--aminus", type=float, default=3.0)
    p.add_argument("--bminus", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=21)
    return p


_HANDLERS = {
    "symmetrize": _cmd_symmetrize,
    "converge": _cmd_converge,
    "sas": _cmd_sas,
    "floating": _cmd_floating,
    "winternitz": _cmd_winternitz,
    "highdim": _cmd_highdim,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0

    if args.cmd == "highdim" and args.samples == parser.get_default("samples"):
        args.samples = 10**6  # MC sample count, not an N range

    region = None
    if args.cmd not in ("highdim", "suite"):
        if not args.infile:
            print(f"error: --in is required for --cmd {args.cmd}",
                  file=sys.stderr)
            return 1
        try:
            region = load_region(args.infile)
        except FileNotFoundError:
            print(f"error: no such file: {args.infile}", file=sys.stderr)
            return 1
        except SphaeraError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return 1

    try:
        violations = _HANDLERS[args.cmd](region, args, args.out)
    except SphaeraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if violations:
        _write_violations(args.out, violations)
        print(f"{len(violations)} property violation(s); see "
              f"{os.path.join(args.out, 'violations.json')}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
