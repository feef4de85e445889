"""Figure rendering for scan reports (matplotlib, file output only)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

KIND_COLORS = {
    "rational": "#1f77b4",
    "quadratic": "#d62728",
    "undetermined": "#7f7f7f",
}


def render_scan_figure(records, path: str) -> None:
    """Scatter of the (r, q) grid colored by rotation-number kind, written
    alongside the delimited scan output."""
    fig, ax = plt.subplots(figsize=(9, 6))
    for kind, color in KIND_COLORS.items():
        xs = [float(rec.r) for rec in records if rec.kind == kind]
        ys = [float(rec.q) for rec in records if rec.kind == kind]
        if xs:
            ax.scatter(xs, ys, s=6, color=color, label=kind, linewidths=0)
    ax.set_xlabel("r")
    ax.set_ylabel("q")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_title("rotation-number kind over the (q, r) grid")
    ax.legend(loc="upper right", markerscale=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
