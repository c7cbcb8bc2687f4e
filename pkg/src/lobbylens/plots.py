"""Presentation plots generated from already-written CSV-able data.

Everything here is cosmetic; analyses and acceptance checks target the CSV
artifacts, never the images.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .interpret import FeatureReport
from .unlabeled import QuarterSeries


def plot_word_count_histogram(path: str | Path, word_counts: Sequence[int],
                              bins: int = 50) -> None:
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.hist(word_counts, bins=bins, color="#4878a8")
    ax.set_xlabel("words per bill")
    ax.set_ylabel("bills")
    ax.set_title("Distribution of bill lengths")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_feature_report(base_path: str | Path, report: FeatureReport) -> list[Path]:
    """One horizontal bar chart per sign: features_<scope>_<sign>.png."""
    base = Path(base_path)
    scope_tag = report.scope.replace(" ", "_").replace("/", "_")
    written = []
    for sign, entries, color in (
        ("positive", report.positive, "#2e7d32"),
        ("negative", report.negative, "#c62828"),
    ):
        out = base / f"features_{scope_tag}_{sign}.png"
        fig, ax = plt.subplots(figsize=(8, max(3, 0.3 * len(entries) + 1)))
        if entries:
            grams = [g for g, _ in entries][::-1]
            coefs = [c for _, c in entries][::-1]
            ax.barh(grams, coefs, color=color)
        ax.set_xlabel("coefficient")
        ax.set_title(f"Top {sign} features ({report.scope})")
        fig.tight_layout()
        fig.savefig(out, dpi=120)
        plt.close(fig)
        written.append(out)
    return written


def plot_quarter_trend(path: str | Path, series: QuarterSeries) -> None:
    fig, ax = plt.subplots(figsize=(9, 4.5))
    labels = [f"{e.year}Q{e.quarter}" for e in series.entries]
    x = range(len(series.entries))
    for t in series.thresholds:
        ax.plot(x, [e.share_above[t] for e in series.entries],
                marker="o", label=f"share > {t:g}")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=60, fontsize=7)
    ax.set_ylabel("share of pool bills")
    ax.set_title("Evidence of lobbying in undisclosed bills")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
