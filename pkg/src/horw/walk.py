"""Random-walk transition matrices on the multi-order graph and their
stationary distributions.

The walk mixes two column-stochastic operators: the plain pairwise walk
(adjacency normalized by degree) and a two-step walk through the
node-simplex bipartite graph (up to a uniformly chosen containing
simplex, down to a uniformly chosen member). A tuning parameter s in
[0,1] interpolates between them; the stationary distribution of the
mixture is the node score vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .errors import ConvergenceError
from .graph import Graph
from .simplicial import SimplicialCover, build_cover

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000

# iterations with no residual improvement before the stall fallback kicks in
_STALL_WINDOW = 16


@dataclass(frozen=True)
class RankResult:
    """Node scores normalized to sum 1, with the induced ranking.

    order[r] is the node index holding rank r (best first); ties in score
    are broken by ascending original label. iterations and residual are 0
    for closed-form methods.
    """

    method: str
    scores: np.ndarray
    order: np.ndarray
    labels: tuple[str, ...]
    s: float | None = None
    iterations: int = 0
    residual: float = 0.0
    degenerate: bool = field(default=False)

    def top(self, k: int) -> list[str]:
        """Labels of the k best-ranked nodes."""
        return [self.labels[i] for i in self.order[:k]]


def make_rank_result(
    scores: np.ndarray,
    g: Graph,
    method: str,
    s: float | None = None,
    iterations: int = 0,
    residual: float = 0.0,
) -> RankResult:
    """Normalize raw scores to a distribution and attach the ranking.

    An all-zero score vector is degenerate (no information); it maps to
    the uniform distribution and the result is flagged.
    """
    scores = np.asarray(scores, dtype=float)
    if scores.shape != (g.n,):
        raise ValueError("score vector length must equal node count")
    if (scores < 0).any():
        raise ValueError("scores must be nonnegative")
    total = scores.sum()
    degenerate = total == 0.0
    if degenerate:
        scores = np.full(g.n, 1.0 / g.n)
    else:
        scores = scores / total
    order = np.lexsort((g.label_rank, -scores))
    return RankResult(
        method=method,
        scores=scores,
        order=order,
        labels=g.labels,
        s=s,
        iterations=iterations,
        residual=residual,
        degenerate=degenerate,
    )


def pairwise_transition(g: Graph) -> sparse.csc_matrix:
    """Column-stochastic transition matrix of the ordinary walk: entry
    (i, j) is A_ij / degree(j)."""
    if (g.degree == 0).any():
        raise ValueError("graph has an isolated node; pairwise walk undefined")
    inv_deg = sparse.diags(1.0 / g.degree.astype(float))
    return (g.adjacency() @ inv_deg).tocsc()


def upstream_transition(cover: SimplicialCover) -> sparse.csc_matrix:
    """Node -> simplex step: from node j, move to one of its containing
    simplices uniformly. Columns sum to 1."""
    inv = sparse.diags(1.0 / cover.node_degrees)
    return (cover.incidence @ inv).tocsc()


def downstream_transition(cover: SimplicialCover) -> sparse.csc_matrix:
    """Simplex -> node step: from a simplex, move to one of its members
    uniformly. Columns sum to 1."""
    inv = sparse.diags(1.0 / cover.simplex_sizes)
    return (cover.incidence.T @ inv).tocsc()


def bipartite_transition(cover: SimplicialCover) -> sparse.csc_matrix:
    """Two-step walk through the bipartite graph, explicitly D @ U.

    Column-stochastic; every diagonal entry is positive because a node
    can always come back to itself through a containing simplex.
    """
    return (downstream_transition(cover) @ upstream_transition(cover)).tocsc()


def augmented_transition(
    C: sparse.spmatrix, W: sparse.spmatrix, s: float
) -> sparse.csc_matrix:
    """Mix the pairwise and bipartite walks: s*W + (1-s)*C."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("s out of range [0,1]")
    if C.shape != W.shape:
        raise ValueError("C and W must have the same shape")
    return (s * W + (1.0 - s) * C).tocsc()


@dataclass(frozen=True)
class TransitionSystem:
    """The two walk operators plus the mixing parameter."""

    C: sparse.csc_matrix
    W: sparse.csc_matrix
    s: float

    @property
    def matrix(self) -> sparse.csc_matrix:
        return augmented_transition(self.C, self.W, self.s)


def build_transition_system(
    g: Graph, s: float, cover: SimplicialCover | None = None
) -> TransitionSystem:
    """Assemble C and W for a graph; the cover can be passed in to amortize
    clique enumeration across several values of s."""
    if not 0.0 <= s <= 1.0:
        raise ValueError("s out of range [0,1]")
    C = pairwise_transition(g)
    if cover is None:
        cover = build_cover(g)
    W = bipartite_transition(cover)
    return TransitionSystem(C=C, W=W, s=s)


def _power_iteration(
    M: sparse.spmatrix, x0: np.ndarray, tol: float, budget: int, lazy: bool
) -> tuple[np.ndarray, int, float, bool]:
    """Iterate x <- Mx (or the lazy (M+I)/2 average) until the L1 update
    norm drops below tol. Returns (x, iterations, residual, stalled)."""
    x = x0
    residuals: list[float] = []
    for it in range(1, budget + 1):
        y = M @ x
        if lazy:
            y = 0.5 * (y + x)
        res = float(np.abs(y - x).sum())
        x = y
        residuals.append(res)
        if res < tol:
            return x, it, res, False
        if (
            not lazy
            and len(residuals) > _STALL_WINDOW
            and res >= residuals[-1 - _STALL_WINDOW]
        ):
            # update norm is non-increasing for a stochastic matrix, so a
            # flat window means the iteration is cycling, not converging
            return x, it, res, True
    raise ConvergenceError(
        f"stationary vector did not converge in {budget} iterations", residual=res
    )


def stationary(
    M: sparse.spmatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    *,
    g: Graph | None = None,
    method: str = "horw",
    s: float | None = None,
    x0: np.ndarray | None = None,
) -> RankResult:
    """Stationary distribution of a column-stochastic matrix by power
    iteration from the uniform vector.

    If the update norm stalls (it cycles on periodic chains, e.g. the
    pairwise walk on a bipartite graph), the iteration restarts under the
    lazy operator (M + I)/2, which has the same fixed points but is
    aperiodic.

    Pass g to rank against original labels; otherwise indices label the
    rows. x0 overrides the uniform start (used to check that the fixed
    point does not depend on it).

    Raises:
        ConvergenceError: iteration budget exhausted.
    """
    n = M.shape[0]
    if x0 is None:
        start = np.full(n, 1.0 / n)
    else:
        start = np.asarray(x0, dtype=float)
        if start.shape != (n,) or (start < 0).any() or start.sum() <= 0:
            raise ValueError("x0 must be a nonnegative vector with positive sum")
        start = start / start.sum()

    x, used, res, stalled = _power_iteration(M, start, tol, max_iter, lazy=False)
    if stalled:
        x, more, res, _ = _power_iteration(M, start, tol, max_iter - used, lazy=True)
        used += more

    x = np.maximum(x, 0.0)
    x /= x.sum()
    if g is None:
        # edge-free placeholder: only its labels and tie order are used
        g = Graph(n, [])
    return make_rank_result(x, g, method=method, s=s, iterations=used, residual=res)


def rank(
    g: Graph,
    s: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    cover: SimplicialCover | None = None,
) -> RankResult:
    """Score nodes by the stationary distribution of the mixed walk.

    s = 0 reduces to the pairwise walk (degree-proportional scores) and
    needs no simplex enumeration; any s > 0 engages the bipartite walk.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError("s out of range [0,1]")
    if s == 0.0:
        M = pairwise_transition(g)
    else:
        M = build_transition_system(g, s, cover=cover).matrix
    return stationary(M, tol=tol, max_iter=max_iter, g=g, method="horw", s=s)
