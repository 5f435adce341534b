"""Figures for the bench and check reports.

Uses the object-oriented Matplotlib API (no pyplot state), so it is safe
to call from scripts and tests without a display.
"""

from __future__ import annotations

import math
from typing import Dict, Sequence

import matplotlib as mpl
from matplotlib.figure import Figure

STYLE = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.markersize": 4,
    "savefig.bbox": "tight",
}


def _figure(ncols=1, width=4.5, height=3.0):
    fig = Figure(figsize=(width * ncols, height))
    axes = fig.subplots(1, ncols)
    return fig, axes


def plot_bench(rows: Sequence[dict], k: int, path: str) -> None:
    """Node counts and wall times against operand size, log-log.

    ``rows`` carry the bench CSV columns.  The node panel includes the
    reference slope ``log_k(2k-1)`` anchored at the first row.
    """
    sizes = [r["size_digits"] for r in rows]
    nodes = [r["toomk_nodes"] for r in rows]
    with mpl.rc_context(STYLE):
        fig, (ax_n, ax_t) = _figure(ncols=2)
        ax_n.loglog(sizes, nodes, "o-", label="recursion nodes")
        if len(rows) > 1 and nodes[0] > 1:
            slope = math.log(2 * k - 1, k)
            ref = [nodes[0] * (s / sizes[0]) ** slope for s in sizes]
            ax_n.loglog(sizes, ref, "--", color="0.5", label=f"n^{slope:.3f}")
        ax_n.set_xlabel("operand size (digits)")
        ax_n.set_ylabel("nodes")
        ax_n.legend()

        ax_t.loglog(sizes, [r["toomk_time"] for r in rows], "o-", label="toomk")
        ax_t.loglog(sizes, [r["schoolbook_time"] for r in rows], "s-", label="schoolbook")
        ax_t.set_xlabel("operand size (digits)")
        ax_t.set_ylabel("seconds")
        ax_t.legend()
        fig.savefig(path)


def plot_depth_profile(max_p_by_depth: Dict[int, int], bounds: Dict[int, float],
                       theta: float, path: str, title: str = "") -> None:
    """Observed largest problem size per depth against the geometric bound."""
    depths = sorted(max_p_by_depth)
    with mpl.rc_context(STYLE):
        fig, ax = _figure()
        ax.semilogy(depths, [max(max_p_by_depth[d], 1) for d in depths], "o-", label="max P observed")
        ax.semilogy(depths, [bounds[d] for d in depths], "--", label="bound")
        ax.axhline(theta, color="0.4", lw=0.8, label="theta")
        ax.set_xlabel("recursion depth")
        ax.set_ylabel("problem size (digits)")
        if title:
            ax.set_title(title)
        ax.legend()
        fig.savefig(path)
