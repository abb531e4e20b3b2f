"""Figure rendering for the report path (value-space scatters)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_pareto_scatter(points: np.ndarray, out_path, title: str = "",
                        clusters: int | None = None):
    """Scatter of terminal objective values, one marker per run."""
    fig, ax = plt.subplots(figsize=(5, 4))
    if len(points):
        ax.scatter(points[:, 0], points[:, 1], s=14, alpha=0.7,
                   edgecolors="none")
    ax.set_xlabel("$F_1$")
    ax.set_ylabel("$F_2$")
    label = title
    if clusters is not None:
        label = f"{title} ({clusters} clusters)" if title else f"{clusters} clusters"
    if label:
        ax.set_title(label)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def save_benchmark_bars(rows, out_path):
    """Mean-iteration bars grouped by problem, one bar per algorithm cell."""
    problems = sorted({r.problem for r in rows})
    cells = sorted({(r.algorithm, r.transform) for r in rows})
    width = 0.8 / max(1, len(cells))
    fig, ax = plt.subplots(figsize=(max(6, len(problems) * 1.1), 4))
    xs = np.arange(len(problems))
    for ci, (algo, transform) in enumerate(cells):
        means = []
        for prob in problems:
            match = [r.iterations for r in rows
                     if r.problem == prob and r.algorithm == algo
                     and r.transform == transform]
            means.append(match[0] if match else np.nan)
        label = algo if transform == "A" else f"{algo} ({transform})"
        ax.bar(xs + ci * width, means, width, label=label)
    ax.set_xticks(xs + 0.4 - width / 2)
    ax.set_xticklabels(problems, rotation=30, ha="right")
    ax.set_ylabel("mean iterations")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
