"""Matplotlib figures for rendered reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .report import HEADERS, ReportDocument  # noqa: E402

SCORE_METRICS = ("node_precision", "node_recall", "edge_precision", "edge_recall", "f1", "nshd")


def setup_style() -> None:
    plt.rcParams.update({
        "font.size": 9,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "axes.titlesize": 10,
        "legend.frameon": False,
        "savefig.dpi": 150,
        # keep output bytes stable between invocations
        "svg.hashsalt": "disaster-causal",
    })


def _bars(ax, doc: ReportDocument, metrics: Sequence[str]) -> None:
    scored = [a for a in doc.aggregates if a.metrics]
    x = np.arange(len(metrics))
    width = 0.8 / max(len(scored), 1)
    marked = doc.marked()
    for k, agg in enumerate(scored):
        means = [agg.metrics[m].mean for m in metrics]
        stds = [agg.metrics[m].std for m in metrics]
        bars = ax.bar(x + (k - (len(scored) - 1) / 2) * width, means, width, yerr=stds,
                      capsize=2, label=agg.condition_label)
        for bar, m in zip(bars, metrics):
            if (agg.condition_label, m) in marked:
                ax.annotate("*", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                            ha="center", va="bottom")
    ax.set_xticks(x)
    ax.set_xticklabels([HEADERS[m] for m in metrics], rotation=30, ha="right")


def report_figure(doc: ReportDocument, path: str | Path) -> Path:
    """Grouped bars (mean with std error bars) per condition; N/A rows are listed in the title."""
    setup_style()
    fig, (ax_scores, ax_shd) = plt.subplots(
        1, 2, figsize=(9, 3.6), gridspec_kw={"width_ratios": [len(SCORE_METRICS), 1.6]}
    )
    _bars(ax_scores, doc, SCORE_METRICS)
    ax_scores.set_ylim(0, 1.1)
    ax_scores.set_ylabel("score")
    _bars(ax_shd, doc, ["shd"])
    ax_shd.set_ylabel("edge edits")
    if any(a.metrics for a in doc.aggregates):
        ax_scores.legend(loc="upper right", fontsize=7)
    refused = [a.condition_label for a in doc.aggregates if not a.metrics]
    if refused:
        fig.suptitle("N/A (refused): " + ", ".join(refused), fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path

