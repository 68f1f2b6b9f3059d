"""Discrete-time SIR epidemics, with and without triangle contagion.

Both simulators share one synchronous engine. Per step, every
susceptible node is exposed through its infected neighbors (probability
beta per edge) and, in the higher-order variant, through each triangle
whose other two members are both infected (probability beta2 per
triangle); the combined infection probability is
1 - (1-beta)^{n1} * (1-beta2)^{n2}. Infected nodes then recover with
probability gamma, evaluated on the same step-start state. The draw
order is fixed (all susceptible nodes ascending, then all infected
ascending) so that runs with the same seed are bitwise reproducible and
the beta2 = 0 case reproduces plain SIR exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphStats
from .walk import RankResult

_MAX_STEPS = 100_000


@dataclass(frozen=True)
class EpidemicParams:
    """Monte-Carlo configuration, shared by both simulators."""

    beta: float
    beta2: float = 0.0
    gamma: float = 1.0
    seed_fraction: float = 0.10
    runs: int = 100
    rng_seed: int = 42

    def __post_init__(self):
        for name in ("beta", "beta2", "gamma"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0,1], got {v}")
        if not 0.0 < self.seed_fraction < 1.0:
            raise ValueError("seed_fraction must lie in (0,1)")
        if self.runs < 1:
            raise ValueError("runs must be positive")


@dataclass(frozen=True)
class EpidemicTrace:
    """One run: per-step compartment counts, step 0 being the seeding."""

    s: np.ndarray
    i: np.ndarray
    r: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.i) - 1

    @property
    def n(self) -> int:
        return int(self.s[0] + self.i[0] + self.r[0])

    @property
    def final_r(self) -> float:
        """Fraction ever infected at absorption (recovered plus infected)."""
        return float((self.i[-1] + self.r[-1]) / self.n)

    def infection_rate(self) -> np.ndarray:
        """r(t) = (I_t + R_t)/n per step."""
        return (self.i + self.r) / self.n


@dataclass(frozen=True)
class EpidemicEnsemble:
    """All runs of one configuration plus the padded mean curve."""

    traces: tuple[EpidemicTrace, ...]
    mean_curve: np.ndarray
    final_r: np.ndarray

    @property
    def final_r_mean(self) -> float:
        return float(self.final_r.mean())

    @property
    def final_r_std(self) -> float:
        return float(self.final_r.std(ddof=1)) if len(self.final_r) > 1 else 0.0

    @property
    def final_r_sem(self) -> float:
        return self.final_r_std / math.sqrt(len(self.final_r))


def spreading_threshold(gs: GraphStats) -> float:
    """Epidemic threshold <k> / (<k^2> - <k>) of the degree distribution."""
    if gs.mean_sq_degree <= gs.mean_degree:
        raise ValueError("degenerate degree distribution: <k^2> <= <k>")
    return gs.mean_degree / (gs.mean_sq_degree - gs.mean_degree)


def select_seeds(rank: RankResult, fraction: float) -> np.ndarray:
    """Top ceil(fraction*n) ranked nodes as initial infecteds."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("seed fraction must lie in (0,1)")
    n = len(rank.scores)
    k = math.ceil(fraction * n)
    return np.array(rank.order[:k], dtype=np.int64)


def _single_run(
    g: Graph,
    tri: np.ndarray | None,
    seeds: np.ndarray,
    params: EpidemicParams,
    rng: np.random.Generator,
) -> EpidemicTrace:
    n = g.n
    A = g.adjacency()
    state_i = np.zeros(n, dtype=bool)
    state_i[seeds] = True
    state_r = np.zeros(n, dtype=bool)

    s_hist = [n - int(state_i.sum())]
    i_hist = [int(state_i.sum())]
    r_hist = [0]

    one_minus_b = 1.0 - params.beta
    one_minus_b2 = 1.0 - params.beta2

    for _ in range(_MAX_STEPS):
        if not state_i.any():
            break
        susceptible = ~(state_i | state_r)
        sus_idx = np.nonzero(susceptible)[0]
        inf_idx = np.nonzero(state_i)[0]

        n1 = (A @ state_i.astype(float))[sus_idx]
        q = one_minus_b**n1
        if tri is not None and len(tri):
            inf_in_tri = state_i[tri]
            hot = inf_in_tri.sum(axis=1) == 2
            if hot.any():
                n2_all = np.zeros(n)
                third = tri[hot][~inf_in_tri[hot]]
                np.add.at(n2_all, third, 1.0)
                q = q * one_minus_b2 ** n2_all[sus_idx]
        p_infect = 1.0 - q

        # fixed draw order: susceptibles ascending, then infecteds ascending
        new_inf = sus_idx[rng.random(len(sus_idx)) < p_infect]
        recovered = inf_idx[rng.random(len(inf_idx)) < params.gamma]

        state_i[new_inf] = True
        state_i[recovered] = False
        state_r[recovered] = True

        i_count = int(state_i.sum())
        r_count = int(state_r.sum())
        s_hist.append(n - i_count - r_count)
        i_hist.append(i_count)
        r_hist.append(r_count)
    else:
        raise RuntimeError(f"epidemic did not absorb within {_MAX_STEPS} steps")

    return EpidemicTrace(
        s=np.array(s_hist, dtype=np.int64),
        i=np.array(i_hist, dtype=np.int64),
        r=np.array(r_hist, dtype=np.int64),
    )


def _ensemble(
    g: Graph, tri: np.ndarray | None, seeds, params: EpidemicParams
) -> EpidemicEnsemble:
    seeds = np.unique(np.asarray(seeds, dtype=np.int64))
    if len(seeds) == 0:
        raise ValueError("at least one seed node is required")
    if seeds.min() < 0 or seeds.max() >= g.n:
        raise ValueError("seed index out of range")

    streams = np.random.SeedSequence(params.rng_seed).spawn(params.runs)
    traces = tuple(
        _single_run(g, tri, seeds, params, np.random.default_rng(ss))
        for ss in streams
    )
    horizon = max(len(t.i) for t in traces)
    curves = np.empty((len(traces), horizon))
    for k, t in enumerate(traces):
        r = t.infection_rate()
        curves[k, : len(r)] = r
        curves[k, len(r) :] = r[-1]  # absorbed runs hold their final value
    final = np.array([t.final_r for t in traces])
    return EpidemicEnsemble(traces=traces, mean_curve=curves.mean(axis=0), final_r=final)


def simulate_sir(g: Graph, seeds, params: EpidemicParams) -> EpidemicEnsemble:
    """Monte-Carlo SIR over edges only."""
    return _ensemble(g, None, seeds, params)


def simulate_hsir(
    g: Graph, triangle_list: np.ndarray, seeds, params: EpidemicParams
) -> EpidemicEnsemble:
    """Monte-Carlo SIR with the additional triangle infection channel.

    triangle_list holds every triangle of the graph as a (t, 3) index
    array (see simplicial.all_triangles); a triangle transmits with
    probability beta2 only when its other two members are both infected.
    """
    tri = np.asarray(triangle_list, dtype=np.int64).reshape(-1, 3)
    return _ensemble(g, tri, seeds, params)
