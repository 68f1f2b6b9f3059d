"""How well a score vector separates nodes: distance from the ideal
linear ranking profile and local slopes of the ranked score curve.

A method with high resolution spreads normalized scores evenly between 1
and 0 when nodes are laid out by rank; the reference profile is the
straight line y = -x + 1 on [0,1]. Proximity is measured by KL
divergence after turning both profiles into distributions, and by
least-squares slopes over the top, middle and bottom rank windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .simplicial import build_cover
from .walk import RankResult, augmented_transition, bipartite_transition, pairwise_transition, stationary

KL_EPS = 1e-12


def minmax_normalize(scores) -> tuple[np.ndarray, bool]:
    """Affine rescale to [0,1]: (x - min)/(max - min).

    Returns (normalized, degenerate). A constant vector has no spread to
    rescale; it maps to all-zeros with degenerate=True.
    """
    x = np.asarray(scores, dtype=float)
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("need a 1-d vector of length >= 2")
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        return np.zeros_like(x), True
    return (x - lo) / (hi - lo), False


def _ranked_profile(rank: RankResult) -> tuple[np.ndarray, bool]:
    """Scores in descending order, min-max normalized."""
    ordered = np.sort(np.asarray(rank.scores, dtype=float))[::-1]
    return minmax_normalize(ordered)


def benchmark_profile(n: int) -> np.ndarray:
    """The ideal resolution profile 1 - x sampled at x_i = i/(n-1)."""
    return 1.0 - np.arange(n) / (n - 1)


def kl_to_benchmark(rank: RankResult) -> float:
    """KL divergence between the ranked score profile and the linear
    benchmark, both smoothed and sum-normalized into distributions.

    Degenerate (all-equal) scores carry no ranking information; the
    sentinel +inf is returned for them.
    """
    y, degenerate = _ranked_profile(rank)
    if degenerate:
        return math.inf
    n = len(y)
    p = y + KL_EPS
    q = benchmark_profile(n) + KL_EPS
    p /= p.sum()
    q /= q.sum()
    return float(np.sum(p * np.log(p / q)))


def segment_slopes(rank: RankResult, window: int = 50) -> tuple[float, float, float]:
    """Least-squares slopes of the normalized ranked profile over the
    first, middle and last `window` ranks (abscissa i/(n-1), so a
    benchmark-shaped profile gives -1 everywhere)."""
    y, _ = _ranked_profile(rank)
    n = len(y)
    if window < 2:
        raise ValueError("window must be at least 2")
    if n < 3 * window:
        raise ValueError(f"need at least {3 * window} nodes for window {window}")
    x = np.arange(n) / (n - 1)
    mid_start = n // 2 - window // 2
    segments = (
        slice(0, window),
        slice(mid_start, mid_start + window),
        slice(n - window, n),
    )
    return tuple(float(np.polyfit(x[sl], y[sl], 1)[0]) for sl in segments)


def default_window(n: int) -> int:
    """1% of n rounded to the nearest even count, but at least 2."""
    return max(2, 2 * round(0.005 * n))


@dataclass(frozen=True)
class ResolutionReport:
    """Resolution diagnostics of one ranking."""

    method: str
    kl: float
    slope_top: float
    slope_mid: float
    slope_bottom: float
    window: int
    degenerate: bool


def analyze(rank: RankResult, window: int = 50) -> ResolutionReport:
    kl = kl_to_benchmark(rank)
    top, mid, bottom = segment_slopes(rank, window=window)
    return ResolutionReport(
        method=rank.method if rank.s is None else f"{rank.method}(s={rank.s:g})",
        kl=kl,
        slope_top=top,
        slope_mid=mid,
        slope_bottom=bottom,
        window=window,
        degenerate=not math.isfinite(kl),
    )


@dataclass(frozen=True)
class SweepResult:
    """KL across a grid of mixing parameters, with the argmin."""

    s_grid: tuple[float, ...]
    kl_values: tuple[float, ...]
    best_s: float
    best_kl: float


def sweep_s(g: Graph, s_grid, tol: float = 1e-10, max_iter: int = 100_000) -> SweepResult:
    """Evaluate the walk's KL resolution over a grid of s values.

    The clique cover and both transition operators are built once; each
    grid point only mixes them and re-solves the stationary vector. Ties
    for the minimum go to the smallest s; an all-degenerate sweep (every
    KL infinite) reports the first grid point.
    """
    s_values = [float(s) for s in s_grid]
    if not s_values:
        raise ValueError("empty s grid")
    C = pairwise_transition(g)
    W = bipartite_transition(build_cover(g))
    kls = []
    for s in s_values:
        M = augmented_transition(C, W, s)
        r = stationary(M, tol=tol, max_iter=max_iter, g=g, method="horw", s=s)
        kls.append(kl_to_benchmark(r))
    best_idx = int(np.argmin(kls))
    return SweepResult(
        s_grid=tuple(s_values),
        kl_values=tuple(kls),
        best_s=s_values[best_idx],
        best_kl=kls[best_idx],
    )
