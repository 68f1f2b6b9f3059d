"""Node-removal attack harness: remove ranked nodes until the giant
component falls to a target fraction, then give back removals that turn
out to be unnecessary.

The removal phase walks a fixed order (a centrality ranking, or the
adaptive CoreHD sequence) and stops at the first prefix whose residual
giant component is small enough. Prefix GCC sizes are obtained in one
reverse sweep with a union-find: nodes are added back from the end of
the order, so the GCC after removing k nodes is read off as the largest
component once n-k nodes have been restored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .centrality import (
    betweenness_centrality,
    closeness_centrality,
    coreness,
    corehd_order,
    degree_centrality,
    eigenvector_centrality,
    pagerank,
)
from .graph import Graph
from .walk import rank as horw_rank


class _UnionFind:
    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra


@dataclass(frozen=True)
class DismantleResult:
    """Outcome of one dismantling experiment.

    removed keeps the original removal order, with reinserted nodes
    dropped; gcc_trajectory[k] is the giant-component size after the
    (k+1)-th removal of the removal phase, before reinsertion.
    """

    removed: tuple[int, ...]
    gcc_trajectory: tuple[int, ...]
    proportion: float
    target: float
    threshold: int


def gcc_after_prefix_removals(g: Graph, order: np.ndarray) -> np.ndarray:
    """sizes[k] = giant-component size after deleting order[:k].

    Computed backwards: restore nodes from the tail of the order,
    union-find them with already-restored neighbors, and record the
    running maximum component size.
    """
    n = g.n
    uf = _UnionFind(n)
    present = np.zeros(n, dtype=bool)
    sizes = np.zeros(n + 1, dtype=np.int64)
    best = 0
    for k in range(n - 1, -1, -1):
        v = int(order[k])
        present[v] = True
        best = max(best, 1)
        for u in g.neighbors[v]:
            u = int(u)
            if present[u]:
                root = uf.union(v, u)
                best = max(best, uf.size[root])
        sizes[k] = best
    return sizes


def dismantle(g: Graph, order, target: float) -> DismantleResult:
    """Remove nodes in the given order until GCC <= ceil(target*n).

    order must be a permutation of all node indices.
    """
    if not 0.0 < target < 1.0:
        raise ValueError("target must lie in (0,1)")
    order = np.asarray(order, dtype=np.int64)
    if sorted(order.tolist()) != list(range(g.n)):
        raise ValueError("removal order must be a permutation of all nodes")
    threshold = math.ceil(target * g.n)
    sizes = gcc_after_prefix_removals(g, order)
    qualifying = np.nonzero(sizes <= threshold)[0]
    k = int(qualifying[0])
    removed = tuple(int(v) for v in order[:k])
    return DismantleResult(
        removed=removed,
        gcc_trajectory=tuple(int(x) for x in sizes[1 : k + 1]),
        proportion=len(removed) / g.n,
        target=target,
        threshold=threshold,
    )


def reinsert(g: Graph, removed, target: float) -> list[int]:
    """Greedily hand back removed nodes while the GCC stays at or below
    ceil(target*n).

    Each round reinserts the candidate whose return yields the smallest
    resulting GCC (ties by ascending label); it stops when any further
    return would break the target. Returns the nodes still removed, in
    the order given.
    """
    removed = list(removed)
    threshold = math.ceil(target * g.n)
    uf = _UnionFind(g.n)
    present = np.ones(g.n, dtype=bool)
    present[list(removed)] = False
    gcc = 1 if present.any() else 0
    for i, j in g.edges:
        i, j = int(i), int(j)
        if present[i] and present[j]:
            gcc = max(gcc, uf.size[uf.union(i, j)])
    if gcc > threshold:
        raise ValueError("removed set does not meet the target to begin with")

    while removed:
        best_v, best_key = None, None
        for v in removed:
            roots = {uf.find(int(u)) for u in g.neighbors[v] if present[u]}
            joined = 1 + sum(uf.size[r] for r in roots)
            resulting = max(gcc, joined)
            key = (resulting, int(g.label_rank[v]))
            if best_key is None or key < best_key:
                best_key, best_v = key, v
        if best_key[0] > threshold:
            break
        v = best_v
        present[v] = True
        for u in g.neighbors[v]:
            u = int(u)
            if present[u]:
                uf.union(v, u)
        gcc = best_key[0]
        removed.remove(v)
    return removed


_RANKERS = {
    "degree": degree_centrality,
    "closeness": closeness_centrality,
    "betweenness": betweenness_centrality,
    "eigenvector": eigenvector_centrality,
    "pagerank": pagerank,
    "coreness": coreness,
}


def removal_order(g: Graph, method: str, s: float = 0.5, damping: float = 0.85) -> np.ndarray:
    """Node removal order for a method name.

    Rankings are static (computed once on the intact graph); corehd is
    the adaptive exception.
    """
    if method == "corehd":
        return corehd_order(g)
    if method == "horw":
        return np.asarray(horw_rank(g, s).order)
    if method == "pagerank":
        return np.asarray(pagerank(g, damping=damping).order)
    if method in _RANKERS:
        return np.asarray(_RANKERS[method](g).order)
    raise ValueError(f"unknown dismantling method {method!r}")


def run_dismantling(
    g: Graph, method: str, s: float = 0.5, target: float = 0.01, damping: float = 0.85
) -> DismantleResult:
    """Rank, remove until the GCC target holds, then reinsert extras."""
    order = removal_order(g, method, s=s, damping=damping)
    first = dismantle(g, order, target)
    kept_removed = reinsert(g, first.removed, target)
    return DismantleResult(
        removed=tuple(kept_removed),
        gcc_trajectory=first.gcc_trajectory,
        proportion=len(kept_removed) / g.n,
        target=target,
        threshold=first.threshold,
    )
