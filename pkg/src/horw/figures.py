"""File-rendered matplotlib figures accompanying the delimited outputs.

Rendering is headless (Agg) and deterministic: fixed canvas geometry,
no timestamps in the PNG (the only text chunks are ours), identical
bytes for identical inputs.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import __version__

_DPI = 120


def _save(fig, path: Path, metadata: Mapping) -> Path:
    fig.savefig(
        path,
        format="png",
        dpi=_DPI,
        metadata={
            "Software": f"horw {__version__}",
            "Comment": f"config {metadata.get('config_hash', '')}",
        },
    )
    plt.close(fig)
    return path


def rank_profile_figure(path: Path, metadata: Mapping, scores, method: str) -> Path:
    """Descending normalized score profile against the linear reference."""
    y = np.sort(np.asarray(scores, dtype=float))[::-1]
    span = y.max() - y.min()
    if span > 0:
        y = (y - y.min()) / span
    x = np.linspace(0.0, 1.0, len(y))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x, 1.0 - x, color="0.6", linestyle="--", label="linear reference")
    ax.plot(x, y, color="tab:blue", label=method)
    ax.set_xlabel("normalized rank")
    ax.set_ylabel("normalized score")
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, path, metadata)


def epidemic_curves_figure(
    path: Path, metadata: Mapping, curves: Sequence[tuple[str, np.ndarray]]
) -> Path:
    """Mean infection-rate trajectories, one line per labeled run."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, curve in curves:
        ax.plot(np.arange(len(curve)), curve, marker="o", markersize=3, label=label)
    ax.set_xlabel("step")
    ax.set_ylabel("infected + recovered fraction")
    ax.set_ylim(0.0, 1.05)
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, path, metadata)


def dismantle_figure(
    path: Path, metadata: Mapping, trajectory: Sequence[int], n: int, threshold: int
) -> Path:
    """Giant-component decay during the removal phase."""
    y = np.asarray(trajectory, dtype=float) / n
    x = np.arange(1, len(y) + 1) / n
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x, y, color="tab:red")
    ax.axhline(threshold / n, color="0.6", linestyle="--", label="target")
    ax.set_xlabel("removed fraction")
    ax.set_ylabel("giant component fraction")
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, path, metadata)


def sweep_figure(
    path: Path, metadata: Mapping, s_grid: Sequence[float], kl_values: Sequence[float], best_s: float
) -> Path:
    """Resolution KL across the mixing-parameter grid."""
    s = np.asarray(s_grid, dtype=float)
    kl = np.asarray(kl_values, dtype=float)
    finite = np.isfinite(kl)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(s[finite], kl[finite], color="tab:green")
    if math.isfinite(best_s):
        ax.axvline(best_s, color="0.6", linestyle="--", label=f"argmin s = {best_s:g}")
        ax.legend(frameon=False)
    ax.set_xlabel("s")
    ax.set_ylabel("KL divergence to linear reference")
    fig.tight_layout()
    return _save(fig, path, metadata)
