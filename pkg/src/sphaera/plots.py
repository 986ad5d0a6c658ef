"""Figure rendering for CLI reports (written next to the CSV outputs)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import regions as rg  # noqa: E402
from . import sphere_core as sc  # noqa: E402


def _chart_outline(region, center, n=512):
    """Gnomonic outline of a region's boundary in the chart at ``center``."""
    if isinstance(region, rg.CapSpec):
        pts = region.boundary_points(n)
    elif isinstance(region, rg.GeodesicPolygon):
        pts = region.boundary_samples(max(n, 4 * len(region)))
    else:  # SmoothBoundary
        s = np.linspace(0.0, region.total_length, n, endpoint=False)
        pts = np.asarray([region.point_at(t) for t in s])
    e1, _ = rg.tangent_basis(center)
    uv = sc.gnomonic_project_many(sc.Frame.from_center_and_axis(center, e1), pts)
    return np.vstack([uv, uv[:1]])


def save_region_figure(path: str, regions, labels, center, title: str):
    fig, ax = plt.subplots(figsize=(6, 6))
    for region, label in zip(regions, labels):
        xy = _chart_outline(region, center)
        ax.plot(xy[:, 0], xy[:, 1], label=label, linewidth=1.2)
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    ax.set_title(title)
    ax.set_xlabel("gnomonic u")
    ax.set_ylabel("gnomonic v")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_trajectory_figure(path: str, rows, cap_radius: float):
    """Convergence diagnostics: Hausdorff distance and shape functionals."""
    rows = np.asarray(rows, dtype=float)
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].semilogy(rows[:, 0], np.maximum(rows[:, 5], 1e-16), "-o", markersize=2)
    axes[0].set_xlabel("iteration")
    axes[0].set_ylabel("Hausdorff distance to equal-area cap")
    axes[0].grid(True, alpha=0.3)
    for col, label in ((2, "perimeter"), (3, "diameter"), (4, "circumradius")):
        axes[1].plot(rows[:, 0], rows[:, col], label=label, linewidth=1.0)
    axes[1].axhline(cap_radius, color="k", linestyle=":", linewidth=0.8,
                    label="cap radius")
    axes[1].set_xlabel("iteration")
    axes[1].legend(fontsize=8)
    axes[1].grid(True, alpha=0.3)
    fig.suptitle("symmetrization trajectory")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_sas_figure(path: str, n_values, areas, constants):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(n_values, areas, "o-", label="A_N(K)", markersize=4)
    ax.plot(n_values, constants, "s--", label="C(r(K), N)", markersize=4)
    ax.set_xlabel("N")
    ax.set_ylabel("area")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title("inscribed-polygon areas vs cap constants")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_ratio_figure(path: str, n_values, ratios, title: str):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(n_values, ratios, "o-", markersize=4)
    ax.axhline(1.0, color="k", linestyle=":", linewidth=0.8)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("N")
    ax.set_ylabel("dist * N^2 / (Omega^3 / 12)")
    ax.grid(True, alpha=0.3)
    ax.set_title(title)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_surface_figure(path: str, u, v, z_plus, z_minus, z_sym):
    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    extent = [u.min(), u.max(), v.min(), v.max()]
    for ax, grid, name in zip(axes, (z_plus, z_minus, z_sym),
                              ("z+", "z-", "z_s")):
        im = ax.imshow(grid.T, origin="lower", extent=extent, aspect="equal")
        fig.colorbar(im, ax=ax, shrink=0.8)
        ax.set_title(name)
        ax.set_xlabel("u")
        ax.set_ylabel("v")
    fig.suptitle("lune-pair height fields and symmetrized surface")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_suite_figure(path: str, results):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ids = [r.cid for r in results]
    ok = [1.0 if r.passed else 0.0 for r in results]
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    ax.bar(ids, ok, color=colors)
    ax.set_xticks(ids)
    ax.set_yticks([0, 1])
    ax.set_yticklabels(["fail", "pass"])
    ax.set_xlabel("criterion")
    ax.set_title(f"acceptance suite: {sum(r.passed for r in results)}/{len(results)} passed")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
