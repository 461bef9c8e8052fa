"""Figure rendering for the report paths.

matplotlib is imported lazily (Agg backend) so library users never pull
in a GUI stack.
"""

from __future__ import annotations

from typing import Sequence

from .analysis import ExperimentRow, soft_bound


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_experiment(rows: Sequence[ExperimentRow], path: str) -> None:
    """Observed minimal N per degree, one panel per order, with the
    soft-bound curve underneath."""
    plt = _pyplot()
    orders = sorted({row.order for row in rows})
    fig, axes = plt.subplots(1, len(orders), figsize=(4.2 * len(orders), 3.4),
                             squeeze=False)
    for ax, r in zip(axes[0], orders):
        mine = [row for row in rows if row.order == r]
        degrees = sorted({row.degree for row in mine})
        xs = [d / 10 for d in range(0, 10 * max(degrees) + 1)]
        ax.plot(xs, [soft_bound(r, x) for x in xs], "-", color="black",
                linewidth=1.2, label="soft bound")
        ax.scatter([row.degree for row in mine], [row.min_n for row in mine],
                   s=14, color="tab:blue", alpha=0.45, label="trials")
        medians = []
        for d in degrees:
            vals = sorted(row.min_n for row in mine if row.degree == d)
            medians.append(vals[len(vals) // 2])
        ax.plot(degrees, medians, "o", color="tab:red", markersize=5,
                label="median")
        ax.set_title(f"order r = {r}")
        ax.set_xlabel("degree d")
        ax.set_ylabel("minimal N")
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_compare(entries: Sequence[tuple[str, int, int]], path: str) -> None:
    """Horizontal bars: classical vs lattice term counts per sequence."""
    plt = _pyplot()
    names = [name for name, _, _ in entries]
    classical = [c for _, c, _ in entries]
    lll = [l for _, _, l in entries]
    pos = range(len(names))
    fig, ax = plt.subplots(figsize=(7, 0.38 * len(names) + 1.4))
    ax.barh([p + 0.2 for p in pos], classical, height=0.38,
            color="tab:gray", label="classical")
    ax.barh([p - 0.2 for p in pos], lll, height=0.38,
            color="tab:blue", label="lattice")
    ax.set_yticks(list(pos))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("terms needed")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
