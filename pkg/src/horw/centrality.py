"""Classical node-importance baselines, all reported as RankResult.

Includes the scores used for comparison rankings (degree, closeness,
betweenness, eigenvector, PageRank, coreness) and the adaptive CoreHD
removal order used only by the dismantling harness.
"""

from __future__ import annotations

import heapq
from collections import deque

import numpy as np
from scipy.sparse import csgraph

from .errors import ConvergenceError
from .graph import Graph, is_connected
from .walk import RankResult, make_rank_result, DEFAULT_TOL, DEFAULT_MAX_ITER


def degree_centrality(g: Graph) -> RankResult:
    """Scores proportional to node degree."""
    return make_rank_result(g.degree.astype(float), g, method="degree")


def closeness_centrality(g: Graph) -> RankResult:
    """Inverse of the summed shortest-path distances to all other nodes.

    Distances are hop counts; the graph must be connected.
    """
    if not is_connected(g):
        raise ValueError("closeness centrality requires a connected graph")
    if g.n == 1:
        return make_rank_result(np.ones(1), g, method="closeness")
    scores = np.empty(g.n)
    # batch the all-pairs BFS so the dense distance block stays small
    batch = max(1, min(g.n, 2_000_000 // g.n))
    for start in range(0, g.n, batch):
        idx = np.arange(start, min(start + batch, g.n))
        dist = csgraph.shortest_path(
            g.adjacency(), method="D", directed=False, unweighted=True, indices=idx
        )
        scores[idx] = 1.0 / dist.sum(axis=1)
    return make_rank_result(scores, g, method="closeness")


def betweenness_centrality(g: Graph) -> RankResult:
    """Fraction-of-shortest-paths betweenness (Brandes accumulation).

    Pair-summed with each unordered pair counted once; the all-zero case
    (complete graphs) degrades to uniform via the RankResult rule.
    """
    n = g.n
    acc = np.zeros(n)
    for src in range(n):
        # single-source shortest-path DAG
        sigma = np.zeros(n)
        sigma[src] = 1.0
        dist = np.full(n, -1, dtype=np.int64)
        dist[src] = 0
        preds: list[list[int]] = [[] for _ in range(n)]
        stack: list[int] = []
        queue: deque[int] = deque([src])
        while queue:
            u = queue.popleft()
            stack.append(u)
            for v in g.neighbors[u]:
                v = int(v)
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        # dependency accumulation in reverse BFS order
        delta = np.zeros(n)
        for v in reversed(stack):
            for u in preds[v]:
                delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v])
            if v != src:
                acc[v] += delta[v]
    return make_rank_result(acc / 2.0, g, method="betweenness")


def eigenvector_centrality(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> RankResult:
    """Principal eigenvector of the adjacency matrix by power iteration.

    Iterates on A + I, which shares eigenvectors with A but has a
    strictly dominant top eigenvalue even on bipartite graphs.
    """
    if not is_connected(g):
        raise ValueError("eigenvector centrality requires a connected graph")
    A = g.adjacency()
    x = np.full(g.n, 1.0 / g.n)
    for it in range(1, max_iter + 1):
        y = A @ x + x
        y /= y.sum()
        res = float(np.abs(y - x).sum())
        x = y
        if res < tol:
            return make_rank_result(x, g, method="eigenvector", iterations=it, residual=res)
    raise ConvergenceError(
        f"eigenvector iteration did not converge in {max_iter} iterations", residual=res
    )


def pagerank(
    g: Graph,
    damping: float = 0.85,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RankResult:
    """PageRank on the undirected graph: fixed point of
    PR = (1-a)/n + a * C * PR with C the degree-normalized walk."""
    if not 0.0 <= damping < 1.0:
        raise ValueError("damping must lie in [0,1)")
    from .walk import pairwise_transition

    C = pairwise_transition(g)
    teleport = (1.0 - damping) / g.n
    x = np.full(g.n, 1.0 / g.n)
    for it in range(1, max_iter + 1):
        y = teleport + damping * (C @ x)
        res = float(np.abs(y - x).sum())
        x = y
        if res < tol:
            return make_rank_result(x, g, method="pagerank", iterations=it, residual=res)
    raise ConvergenceError(
        f"pagerank did not converge in {max_iter} iterations", residual=res
    )


def core_numbers(g: Graph) -> np.ndarray:
    """k-core number per node by iterative minimum-degree peeling."""
    deg = g.degree.copy()
    core = np.zeros(g.n, dtype=np.int64)
    alive = np.ones(g.n, dtype=bool)
    # lazy-deletion heap: stale entries are skipped on pop
    heap = [(int(deg[v]), v) for v in range(g.n)]
    heapq.heapify(heap)
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        k = max(k, d)
        core[v] = k
        alive[v] = False
        for u in g.neighbors[v]:
            u = int(u)
            if alive[u]:
                deg[u] -= 1
                heapq.heappush(heap, (int(deg[u]), u))
    return core


def coreness(g: Graph) -> RankResult:
    """Scores proportional to k-core numbers (heavy ties by construction)."""
    return make_rank_result(core_numbers(g).astype(float), g, method="coreness")


def _two_core_mask(deg: np.ndarray, alive: np.ndarray, neighbors):
    """Peel alive nodes of degree < 2; returns the 2-core membership mask
    and the degrees within the 2-core."""
    core_deg = deg.copy()
    in_core = alive.copy()
    stack = [v for v in np.nonzero(alive)[0] if core_deg[v] < 2]
    while stack:
        v = int(stack.pop())
        if not in_core[v]:
            continue
        in_core[v] = False
        for u in neighbors[v]:
            u = int(u)
            if in_core[u]:
                core_deg[u] -= 1
                if core_deg[u] < 2:
                    stack.append(u)
    return in_core, core_deg


def corehd_order(g: Graph) -> np.ndarray:
    """CoreHD removal sequence covering every node.

    Phase 1 repeatedly deletes the highest-degree node of the current
    2-core (degree measured inside the 2-core, ties by ascending label)
    until no 2-core remains. Phase 2 breaks the leftover forest by
    deleting the node that minimizes the largest remaining component
    (same tie rule). Leftover isolated nodes are appended in label order.
    """
    n = g.n
    alive = np.ones(n, dtype=bool)
    deg = g.degree.copy()
    order: list[int] = []

    def delete(v: int) -> None:
        alive[v] = False
        order.append(v)
        for u in g.neighbors[v]:
            u = int(u)
            if alive[u]:
                deg[u] -= 1

    # phase 1: adaptive 2-core decimation
    in_core, core_deg = _two_core_mask(deg, alive, g.neighbors)
    while in_core.any():
        members = np.nonzero(in_core)[0]
        d = core_deg[members]
        best = members[d == d.max()]
        v = int(best[np.argmin(g.label_rank[best])])
        delete(v)
        # cascade the peel from the deleted node's core neighbors
        in_core[v] = False
        stack = []
        for u in g.neighbors[v]:
            u = int(u)
            if in_core[u]:
                core_deg[u] -= 1
                if core_deg[u] < 2:
                    stack.append(u)
        while stack:
            w = int(stack.pop())
            if not in_core[w]:
                continue
            in_core[w] = False
            for u in g.neighbors[w]:
                u = int(u)
                if in_core[u]:
                    core_deg[u] -= 1
                    if core_deg[u] < 2:
                        stack.append(u)

    # phase 2: the remaining graph is a forest; break the largest tree at
    # the node whose removal leaves the smallest maximal component
    comp = np.full(n, -1, dtype=np.int64)
    comp_sizes: dict[int, int] = {}
    next_comp = 0
    for seed in np.nonzero(alive)[0]:
        if comp[seed] >= 0:
            continue
        cid, next_comp = next_comp, next_comp + 1
        stack = [int(seed)]
        comp[seed] = cid
        size = 0
        while stack:
            u = stack.pop()
            size += 1
            for w in g.neighbors[u]:
                w = int(w)
                if alive[w] and comp[w] < 0:
                    comp[w] = cid
                    stack.append(w)
        comp_sizes[cid] = size

    while comp_sizes and max(comp_sizes.values()) >= 2:
        sizes = sorted(comp_sizes.values(), reverse=True)
        largest = sizes[0]
        ties = [c for c, sz in comp_sizes.items() if sz == largest]
        if len(ties) > 1:
            # deleting anything leaves another component of the same size,
            # so every node scores equally; fall back to the label rule
            cand = np.nonzero(alive)[0]
            v = int(cand[np.argmin(g.label_rank[cand])])
        else:
            cid = ties[0]
            second = sizes[1] if len(sizes) > 1 else 0
            members = [int(u) for u in np.nonzero(alive)[0] if comp[u] == cid]
            v = _best_tree_break(g, members, alive, second, g.label_rank)
        # split v's component into new components
        old = comp[v]
        delete(v)
        comp[v] = -1
        del comp_sizes[old]
        for u in g.neighbors[v]:
            u = int(u)
            if not alive[u] or comp[u] != old:
                continue
            cid, next_comp = next_comp, next_comp + 1
            stack = [u]
            comp[u] = cid
            size = 0
            while stack:
                w = stack.pop()
                size += 1
                for t in g.neighbors[w]:
                    t = int(t)
                    if alive[t] and comp[t] == old:
                        comp[t] = cid
                        stack.append(t)
            comp_sizes[cid] = size

    rest = np.nonzero(alive)[0]
    for v in sorted(rest, key=lambda u: g.label_rank[u]):
        order.append(int(v))
    return np.array(order, dtype=np.int64)


def _best_tree_break(
    g: Graph, members: list[int], alive: np.ndarray, other_max: int, label_rank
) -> int:
    """Node of a tree whose deletion minimizes the largest remaining
    component globally (the floor from other components included)."""
    root = members[0]
    t = len(members)
    # iterative rooted DFS for subtree sizes
    parent = {root: -1}
    dfs_order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for w in g.neighbors[u]:
            w = int(w)
            if alive[w] and w != parent[u] and w not in parent:
                parent[w] = u
                dfs_order.append(w)
                stack.append(w)
    sub = {u: 1 for u in members}
    for u in reversed(dfs_order):
        if parent[u] != -1:
            sub[parent[u]] += sub[u]
    best_v, best_val = None, None
    for u in members:
        pieces = [t - sub[u]]
        for w in g.neighbors[u]:
            w = int(w)
            if alive[w] and parent.get(w) == u:
                pieces.append(sub[w])
        val = max(max(pieces), other_max)
        key = (val, int(label_rank[u]))
        if best_val is None or key < best_val:
            best_val, best_v = key, u
    return int(best_v)
