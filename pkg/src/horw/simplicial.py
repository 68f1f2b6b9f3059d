"""Maximal simplices of a graph and the node-simplex bipartite structure.

A graph's higher-order structure is read as its clique complex: the
maximal simplices are exactly the maximal cliques of size >= 2. The
bipartite membership graph between nodes and simplices is summarized by
an incidence matrix together with the two degree vectors (per-node
membership counts and per-simplex sizes).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy import sparse

from .errors import CliqueCapError
from .graph import Graph, triangles as _graph_triangles

DEFAULT_CLIQUE_CAP = 1_000_000


@dataclass(frozen=True)
class Simplex:
    """One maximal simplex: an ordinal id and a strictly increasing member tuple."""

    id: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


def _degeneracy_order(g: Graph) -> list[int]:
    """Order nodes by repeatedly extracting a minimum-degree node.

    Bucket queue, O(n + m). Tie handling is fixed (FIFO buckets) so the
    order is deterministic.
    """
    n = g.n
    deg = g.degree.copy()
    removed = np.zeros(n, dtype=bool)
    buckets: list[list[int]] = [[] for _ in range(int(deg.max()) + 1 if n else 1)]
    for v in range(n):
        buckets[deg[v]].append(v)
    order = []
    d = 0
    while len(order) < n:
        while d < len(buckets) and not buckets[d]:
            d += 1
        if d >= len(buckets):
            break
        v = buckets[d].pop(0)
        if removed[v] or deg[v] != d:
            continue
        removed[v] = True
        order.append(v)
        for u in g.neighbors[v]:
            u = int(u)
            if not removed[u]:
                deg[u] -= 1
                buckets[deg[u]].append(u)
        d = 0 if d == 0 else d - 1
    return order


def _bron_kerbosch_pivot(
    nbrs: Sequence[set[int]], r: list[int], p: set[int], x: set[int]
) -> Iterator[tuple[int, ...]]:
    if not p and not x:
        if len(r) >= 2:
            yield tuple(sorted(r))
        return
    # pivot on the vertex covering most of P; its neighbors can be skipped
    pivot = max(sorted(p | x), key=lambda u: len(p & nbrs[u]))
    for v in sorted(p - nbrs[pivot]):
        r.append(v)
        yield from _bron_kerbosch_pivot(nbrs, r, p & nbrs[v], x & nbrs[v])
        r.pop()
        p.remove(v)
        x.add(v)


def maximal_cliques(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> list[Simplex]:
    """All maximal cliques of size >= 2, as Simplex records.

    Members are sorted within each clique and the cliques themselves come
    out in lexicographic order of their member lists, so ids are stable
    across runs. Enumeration uses Bron-Kerbosch with pivoting over a
    degeneracy ordering of the outer level.

    Raises:
        CliqueCapError: when more than ``cap`` cliques are produced.
    """
    nbrs = [set(int(x) for x in a) for a in g.neighbors]
    pos = {v: i for i, v in enumerate(_degeneracy_order(g))}
    found: list[tuple[int, ...]] = []
    for v in sorted(pos, key=pos.get):
        later = {u for u in nbrs[v] if pos[u] > pos[v]}
        earlier = nbrs[v] - later
        for clique in _bron_kerbosch_pivot(nbrs, [v], later, earlier):
            found.append(clique)
            if len(found) > cap:
                raise CliqueCapError(
                    f"more than {cap} maximal cliques; raise the cap to proceed"
                )
    found.sort()
    return [Simplex(i, members) for i, members in enumerate(found)]


@dataclass(frozen=True)
class SimplicialCover:
    """The maximal simplices of a graph plus bipartite degree structure.

    incidence is the (num simplices) x (num nodes) 0/1 sparse matrix with
    a 1 wherever a node belongs to a simplex. node_degrees counts, per
    node, the simplices containing it (column sums); simplex_sizes is the
    cardinality of each simplex (row sums).
    """

    n: int
    simplices: tuple[Simplex, ...]
    incidence: sparse.csr_matrix
    node_degrees: np.ndarray
    simplex_sizes: np.ndarray


def build_cover(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> SimplicialCover:
    """Enumerate maximal simplices and assemble the incidence structure.

    Requires a connected graph (every node must belong to at least one
    simplex of size >= 2; an uncovered node means the precondition was
    violated).
    """
    simplices = maximal_cliques(g, cap=cap)
    rows, cols = [], []
    for s in simplices:
        rows.extend([s.id] * len(s.members))
        cols.extend(s.members)
    m = len(simplices)
    incidence = sparse.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(m, g.n)
    )
    node_degrees = np.asarray(incidence.sum(axis=0)).ravel()
    simplex_sizes = np.asarray(incidence.sum(axis=1)).ravel()
    if (node_degrees == 0).any():
        uncovered = int(np.argmin(node_degrees))
        raise ValueError(
            f"node {g.labels[uncovered]!r} belongs to no simplex; graph must be connected"
        )
    return SimplicialCover(
        n=g.n,
        simplices=tuple(simplices),
        incidence=incidence,
        node_degrees=node_degrees,
        simplex_sizes=simplex_sizes,
    )


def all_triangles(g: Graph) -> np.ndarray:
    """Every triangle of the graph, i.e. all 2-simplex faces of the clique
    complex, as a (t, 3) index array with increasing rows."""
    return _graph_triangles(g)
