"""Figure rendering for analysis reports (matplotlib, file output only)."""

from __future__ import annotations

import math


def plot_weight_distribution(wd, dual_wd, path: str, title: str = "") -> str:
    """Render primal/dual weight distributions as log10 bar charts.

    Counts are exact big integers; bars show log10(A_i) so the 10^34-scale
    counts of the primal code stay readable next to the dual's.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(9.6, 3.6), sharex=True)
    for ax, dist, name in ((axes[0], wd, "code"), (axes[1], dual_wd, "dual code")):
        xs = [i for i in range(dist.n + 1) if dist.counts[i] > 0]
        ys = [math.log10(dist.counts[i]) if dist.counts[i] > 1 else 0.0
              for i in xs]
        ax.bar(xs, ys, width=0.8, color="#30607f")
        ax.set_xlabel("Hamming weight")
        ax.set_ylabel("log10 count")
        ax.set_title(name)
        ax.set_xlim(-1, dist.n + 1)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
