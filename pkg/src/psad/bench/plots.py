"""Figures for a benchmark report."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _kappa_prefix(records):
    return "" if any(r.kappa1 is not None for r in records) else "ops_"


def plot_kappas(records, path):
    """Grouped bars of kappa1 and both kappa2 values per problem and size."""
    prefix = _kappa_prefix(records)
    families = [prefix + k for k in ("kappa1", "kappa2_dir", "kappa2_sub")]
    labels = [f"{r.problem}\nn={r.n}" for r in records]
    x = np.arange(len(records))
    width = 0.8 / len(families)
    fig, ax = plt.subplots(figsize=(max(6.0, 0.55 * len(records)), 4.5))
    for k, family in enumerate(families):
        vals = [np.nan if getattr(r, family) is None else getattr(r, family) for r in records]
        ax.bar(x + (k - 1) * width, vals, width, label=family)
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=70, ha="right", fontsize=7)
    ax.set_ylabel("kappa")
    ax.set_title("Cost ratios per problem")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_quartiles(records, path):
    """Box plots of each kappa family over all records."""
    prefix = _kappa_prefix(records)
    families = [prefix + k for k in ("kappa1", "kappa2_dir", "kappa2_sub")]
    data, names = [], []
    for family in families:
        vals = [getattr(r, family) for r in records if getattr(r, family) is not None]
        if vals:
            data.append(vals)
            names.append(family)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if data:
        # whiskers at the extremes so the box edges are min, q1, q2, q3, max
        ax.boxplot(data, whis=(0, 100))
        ax.set_xticks(range(1, len(names) + 1))
        ax.set_xticklabels(names)
    ax.set_ylabel("kappa")
    ax.set_title("Quartiles over the catalog")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def write_plots(records, out):
    """Write both figures beside ``out``; returns their paths."""
    out = Path(out)
    stem = out.with_suffix("")
    return [plot_kappas(records, f"{stem}_kappa.png"),
            plot_quartiles(records, f"{stem}_quartiles.png")]
