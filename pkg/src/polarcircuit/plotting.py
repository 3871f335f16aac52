"""Static SVG figures: half-disk trajectories and gate-count scaling plots.

All figures are rendered with the Agg backend and written as self-contained
SVG files.  The SVG hash salt and metadata are pinned so that identical
inputs produce byte-identical files.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_trajectory_figure", "save_sweep_figure"]

matplotlib.rcParams["svg.hashsalt"] = "polarcircuit"


def _save(fig, path: str, description: str):
    fig.savefig(
        path,
        format="svg",
        metadata={"Date": None, "Description": description},
    )
    plt.close(fig)


def _draw_half_disk(ax):
    th = np.linspace(0.0, math.pi, 256)
    ax.plot(np.cos(th), np.sin(th), color="0.6", lw=0.8)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-0.05, 1.05)
    ax.set_xlabel(r"$r\cos\phi$")
    ax.set_ylabel(r"$r\sin\phi$")


def save_trajectory_figure(
    path: str,
    traj,
    geodesic=None,
    events=None,
    title: str = "",
    description: str = "",
):
    """Trajectory on the half disk, optionally with the geodesic chord and
    gate-event markers."""
    fig, ax = plt.subplots(figsize=(5.2, 3.2))
    _draw_half_disk(ax)
    x = traj.r * np.cos(traj.phi)
    y = traj.r * np.sin(traj.phi)
    ax.plot(x, y, color="tab:blue", lw=1.0, label="state")
    if geodesic is not None:
        rr, tt = geodesic.ref_state, geodesic.target_state
        ax.plot(
            [rr.r * math.cos(rr.phi), tt.r * math.cos(tt.phi)],
            [rr.r * math.sin(rr.phi), tt.r * math.sin(tt.phi)],
            color="black",
            lw=1.2,
            label="geodesic",
        )
    if events:
        ex = [e.r_before * math.cos(e.phi_before) for e in events]
        ey = [e.r_before * math.sin(e.phi_before) for e in events]
        ax.plot(ex, ey, "r.", ms=4, label=f"gates ({len(events)})")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8, loc="upper left")
    fig.tight_layout()
    _save(fig, path, description)


def save_sweep_figure(path: str, rows, fit, title: str = "", description: str = ""):
    """Log-log gate count versus accuracy, with the fitted power law."""
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    eps = np.array([e for e, _ in rows])
    counts = np.array([n for _, n in rows])
    keep = counts >= 1
    ax.loglog(eps[keep], counts[keep], "o", ms=4, color="tab:blue", label="data")
    if fit is not None:
        m, n = fit
        grid = np.array([eps[keep].min(), eps[keep].max()])
        ax.loglog(
            grid,
            10.0**m * grid**n,
            "-",
            color="black",
            lw=1.0,
            label=rf"$10^{{{m:.2f}}}\,\epsilon^{{{n:.2f}}}$",
        )
    ax.set_xlabel(r"accuracy $\epsilon$")
    ax.set_ylabel(r"gate count $N_g$")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path, description)
