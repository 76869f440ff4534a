"""SVG plot helpers.

matplotlib is imported lazily so that headless metric runs never pay for it.
SVG output is pinned (fixed hashsalt, no date metadata) so identical inputs
produce identical files.
"""
from __future__ import annotations


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "skybeam"
    import matplotlib.pyplot as plt

    return plt


def save_ecdf_svg(curves: dict[str, list[tuple[float, float]]], xlabel: str, path: str) -> None:
    """One ECDF step curve per label; labels containing "static" are dashed."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, points in curves.items():
        if not points:
            continue
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        style = "--" if "static" in label.lower() else "-"
        ax.step(xs, ys, where="post", linestyle=style, label=str(label))
    ax.set_xlabel(xlabel)
    ax.set_ylabel("cumulative fraction")
    ax.set_ylim(0.0, 1.02)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def save_pattern_cut_svg(
    cuts: dict[str, list[tuple[float, float]]], plane: str, path: str
) -> None:
    """Gain-vs-angle line plots for one or more pattern cuts."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, points in cuts.items():
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        ax.plot(xs, ys, label=str(label))
    if plane == "azimuth":
        ax.set_xlabel("azimuth offset from boresight (deg)")
    else:
        ax.set_xlabel("zenith angle (deg)")
    ax.set_ylabel("composite gain (dBi)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
