"""Figures for simulation campaigns, written straight to files (Agg backend)."""

from __future__ import annotations

import math
from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .channel_sim import ExperimentSummary, reference_curves  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.grid": True,
    "grid.linestyle": ":",
    "grid.linewidth": 0.5,
    "lines.linewidth": 1.2,
    "savefig.dpi": 150,
}


def figsize(scale: float = 1.0, ratio: float | None = None) -> tuple[float, float]:
    width = 6.4 * scale
    ratio = ratio or (math.sqrt(5.0) - 1.0) / 2.0
    return width, width * ratio


def crossing_p(summaries: Sequence[ExperimentSummary], target: float) -> float | None:
    """Largest ``p`` at which the failure rate is still below ``target``, interpolated on log axes."""
    pts = sorted((s.p, s.failure_rate) for s in summaries if s.p > 0)
    best = None
    for (p0, f0), (p1, f1) in zip(pts, pts[1:]):
        if f0 <= target < f1:
            if f0 <= 0:
                best = p0
            else:
                w = (math.log(target) - math.log(f0)) / (math.log(f1) - math.log(f0))
                best = math.exp(math.log(p0) + w * (math.log(p1) - math.log(p0)))
    if best is None and pts and pts[-1][1] <= target:
        best = pts[-1][0]
    return best


def plot_campaign(summaries: Sequence[ExperimentSummary], path, target: float = 1e-2, label: str | None = None):
    """Two panels: failure rate versus ``p`` with 95% intervals, and the code's
    rate at the target failure rate against the ``1-2h(p)`` and ``1-2h(2p)`` curves."""
    pts = [s for s in summaries if s.p > 0]
    with plt.rc_context(STYLE):
        fig, (ax0, ax1) = plt.subplots(1, 2, figsize=figsize(1.4, 0.42))
        if pts:
            p = np.array([s.p for s in pts])
            f = np.array([s.failure_rate for s in pts])
            ci = np.array([s.ci_halfwidth for s in pts])
            shown = f > 0
            ax0.errorbar(p[shown], f[shown], yerr=np.minimum(ci[shown], f[shown] * 0.999), fmt="o-", ms=3, capsize=2, label=label)
            if (~shown).any():
                ax0.plot(p[~shown], np.full((~shown).sum(), 1.0 / max(s.trials for s in pts)), "v", ms=4, color="gray", label="no failures (1/trials)")
            ax0.set_xscale("log")
            ax0.set_yscale("log")
            ax0.axhline(target, color="k", lw=0.6, ls="--")
        ax0.set_xlabel("crossover probability p")
        ax0.set_ylabel("failure rate")
        if label or (pts and (~shown).any()):
            ax0.legend()

        grid = np.linspace(1e-4, 0.11, 400)
        shannon, bdd = zip(*(reference_curves(x) for x in grid))
        ax1.plot(grid, shannon, "-", color="C2", label="1-2h(p)")
        ax1.plot(grid, bdd, ":", color="C3", label="1-2h(2p)")
        if summaries:
            pc = crossing_p(summaries, target)
            if pc is not None:
                ax1.plot([pc], [summaries[0].rate], "s", color="C0", label=f"code (failure {target:g})")
        ax1.set_ylim(0, 1)
        ax1.set_xlim(0, grid[-1])
        ax1.set_xlabel("crossover probability p")
        ax1.set_ylabel("quantum rate")
        ax1.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
