"""Figures written next to CLI reports (Agg backend, files only)."""

from __future__ import annotations

import math
import os
from collections import defaultdict
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .report import InequalityReport  # noqa: E402


def relative_slacks(reports: Sequence[InequalityReport]) -> dict[str, list[float]]:
    """log10 of the relative slack ``(right - left) / max(|right|, tiny)`` per suite.

    Tight links (equalities, sharp cases) sit near -16; the floor keeps them
    on the plot.
    """
    out = defaultdict(list)
    for rep in reports:
        for v in rep.verdicts:
            if v.left not in rep.labels():
                continue  # entrywise verdicts carry no scalar scale
            scale = max(abs(rep.value(v.right)), 1e-300)
            out[rep.suite].append(math.log10(max(v.slack / scale, 1e-17)))
    return dict(out)


def plot_slack_histograms(reports: Sequence[InequalityReport], path) -> str:
    data = relative_slacks(reports)
    names = sorted(data)
    cols = min(len(names), 4) or 1
    rows = max(1, math.ceil(len(names) / cols))
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.4 * rows), squeeze=False)
    for ax, name in zip(axes.flat, names):
        ax.hist(data[name], bins=40, color="#3b6ea8")
        ax.set_title(name, fontsize=9)
        ax.set_xlabel("log10 relative slack", fontsize=8)
        ax.tick_params(labelsize=7)
    for ax in list(axes.flat)[len(names):]:
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return str(path)


def plot_refinement(reports: Sequence[InequalityReport], path) -> str:
    """Each quantity against grid size, and the change between successive levels."""
    grids = [r.digest["grid_n"] for r in reports]
    labels = reports[0].labels()
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.5))
    for label in labels:
        q = [r.value(label) for r in reports]
        left.plot(grids, q, marker="o", lw=1, label=label)
        diffs = [max(abs(b - a), 1e-17) for a, b in zip(q, q[1:])]
        if diffs:
            right.plot(grids[1:], diffs, marker="o", lw=1)
    for ax in (left, right):
        ax.set_xscale("log", base=2)
        ax.set_xlabel("grid_n")
    left.set_ylabel("value")
    right.set_yscale("log")
    right.set_ylabel("|change from previous level|")
    fig.suptitle(f"{reports[0].suite}: {', '.join(reports[0].digest.get('kernels', []))}")
    if len(labels) <= 12:
        left.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return str(path)


def write_figures(reports: Sequence[InequalityReport], directory, kind: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    if kind == "kernels":
        return [plot_refinement(reports, os.path.join(directory, "refinement.png"))]
    return [plot_slack_histograms(reports, os.path.join(directory, "slack.png"))]
