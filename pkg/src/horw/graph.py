"""Undirected simple graphs over contiguous node indices.

Input files use arbitrary labels; internally every node is an index in
``[0, n)`` and the label mapping is kept for reporting. Graphs are
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import ParseError

log = logging.getLogger(__name__)


def label_sort_key(label: str) -> tuple:
    """Sort key for original node labels: numeric labels in numeric order,
    everything else lexicographic after the numbers."""
    try:
        return (0, int(label), "")
    except ValueError:
        return (1, 0, label)


class Graph:
    """Immutable undirected simple graph.

    Attributes:
        n: node count.
        edges: (m, 2) int array, each row (i, j) with i < j, lexicographically sorted.
        labels: original label per node index.
        degree: (n,) int array.
    """

    __slots__ = ("n", "edges", "labels", "degree", "neighbors", "label_rank", "_adj_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n <= 0:
            raise ValueError("graph must have at least one node")
        edge_arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edge_arr.size:
            if edge_arr.min() < 0 or edge_arr.max() >= n:
                raise ValueError("edge endpoint out of range")
            if (edge_arr[:, 0] == edge_arr[:, 1]).any():
                raise ValueError("self-loops are not allowed")
            edge_arr = np.sort(edge_arr, axis=1)
            edge_arr = edge_arr[np.lexsort((edge_arr[:, 1], edge_arr[:, 0]))]
            if len(edge_arr) > 1 and (np.diff(edge_arr, axis=0) == 0).all(axis=1).any():
                raise ValueError("duplicate edges are not allowed")
        self.n = n
        self.edges = edge_arr
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("labels length must equal node count")
        self.labels = labels

        deg = np.zeros(n, dtype=np.int64)
        if edge_arr.size:
            np.add.at(deg, edge_arr[:, 0], 1)
            np.add.at(deg, edge_arr[:, 1], 1)
        self.degree = deg
        self.degree.setflags(write=False)

        nbrs: list[list[int]] = [[] for _ in range(n)]
        for i, j in edge_arr:
            nbrs[i].append(j)
            nbrs[j].append(i)
        self.neighbors = tuple(np.array(sorted(a), dtype=np.int64) for a in nbrs)

        order = sorted(range(n), key=lambda i: label_sort_key(labels[i]))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        self.label_rank = rank
        self.label_rank.setflags(write=False)
        self._adj_csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        a = self.neighbors[i]
        k = np.searchsorted(a, j)
        return k < len(a) and a[k] == j

    def adjacency(self):
        """Sparse symmetric adjacency matrix (CSR, float), cached."""
        if self._adj_csr is None:
            from scipy import sparse

            if self.m:
                i, j = self.edges[:, 0], self.edges[:, 1]
                data = np.ones(2 * self.m)
                rows = np.concatenate([i, j])
                cols = np.concatenate([j, i])
            else:
                data = np.empty(0)
                rows = cols = np.empty(0, dtype=np.int64)
            self._adj_csr = sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._adj_csr

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeListFormat:
    """Parsing options for edge-list files.

    delimiter None means any-whitespace splitting; "," switches to comma
    separation. Lines starting with one of the comment prefixes are skipped.
    """

    delimiter: str | None = None
    comments: tuple[str, ...] = ("#", "%")


def load_edge_list(source: str | Path | TextIO, fmt: EdgeListFormat = EdgeListFormat()) -> Graph:
    """Read an undirected graph from an edge-list text stream or path.

    Each non-comment line must hold exactly two label tokens. Duplicate
    edges collapse and self-loops are dropped (counts are logged). Labels
    are mapped to contiguous indices in order of first appearance.

    Raises:
        ParseError: on a malformed line (with its line number) or when no
            usable edge remains.
    """
    if isinstance(source, (str, Path)):
        with io.open(source, "r", encoding="utf-8") as fh:
            return load_edge_list(fh, fmt)

    index: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    n_self_loops = 0
    n_duplicates = 0

    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or any(line.startswith(p) for p in fmt.comments):
            continue
        if fmt.delimiter is None:
            tokens = line.split()
        else:
            tokens = [t.strip() for t in line.split(fmt.delimiter)]
        if len(tokens) != 2 or not tokens[0] or not tokens[1]:
            raise ParseError(f"expected two tokens, got {len(tokens)}: {line!r}", line=lineno)
        a, b = tokens
        if a == b:
            n_self_loops += 1
            continue
        u = index.setdefault(a, len(index))
        v = index.setdefault(b, len(index))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            n_duplicates += 1
            continue
        seen.add(key)
        edges.append(key)

    if not edges:
        raise ParseError("no edges found in input")
    if n_self_loops or n_duplicates:
        log.warning(
            "normalized input: dropped %d self-loop(s), %d duplicate edge(s)",
            n_self_loops,
            n_duplicates,
        )
    labels = [None] * len(index)
    for lab, idx in index.items():
        labels[idx] = lab
    return Graph(len(index), edges, labels)


def connected_components(g: Graph) -> list[np.ndarray]:
    """Connected components as sorted index arrays, in order of their
    smallest member (so the component of node 0 comes first)."""
    comp = np.full(g.n, -1, dtype=np.int64)
    components: list[np.ndarray] = []
    for seed in range(g.n):
        if comp[seed] >= 0:
            continue
        cid = len(components)
        comp[seed] = cid
        queue = [seed]
        members = [seed]
        while queue:
            u = queue.pop()
            for v in g.neighbors[u]:
                v = int(v)
                if comp[v] < 0:
                    comp[v] = cid
                    queue.append(v)
                    members.append(v)
        components.append(np.array(sorted(members), dtype=np.int64))
    return components


def subgraph(g: Graph, nodes: np.ndarray) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on ``nodes`` (sorted unique indices).

    Returns the new graph plus the array mapping new index -> old index.
    Labels carry over.
    """
    nodes = np.asarray(sorted(set(int(x) for x in nodes)), dtype=np.int64)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[nodes] = np.arange(len(nodes))
    kept = []
    for i, j in g.edges:
        if remap[i] >= 0 and remap[j] >= 0:
            kept.append((int(remap[i]), int(remap[j])))
    labels = [g.labels[int(i)] for i in nodes]
    return Graph(len(nodes), kept, labels), nodes


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def giant_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Largest connected component as a graph, with new->old index map.

    Ties between equal-sized components go to the one containing the
    smallest original index.
    """
    comps = connected_components(g)
    best = max(comps, key=len)  # max() keeps the earliest (smallest seed) on ties
    return subgraph(g, best)


def triangles(g: Graph) -> np.ndarray:
    """All triangles of the graph as a (t, 3) array of rows (i, j, k), i<j<k."""
    out = []
    nbrs = g.neighbors
    for i, j in g.edges:
        # common neighbors above j close a triangle exactly once
        a, b = nbrs[i], nbrs[j]
        common = np.intersect1d(a[a > j], b[b > j], assume_unique=True)
        for k in common:
            out.append((int(i), int(j), int(k)))
    if not out:
        return np.empty((0, 3), dtype=np.int64)
    return np.array(out, dtype=np.int64)


@dataclass(frozen=True)
class GraphStats:
    """Dataset summary: counts, degree moments and mean local clustering."""

    n: int
    m: int
    mean_degree: float
    mean_sq_degree: float
    clustering: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "mean_degree": self.mean_degree,
            "mean_sq_degree": self.mean_sq_degree,
            "clustering": self.clustering,
        }


def stats(g: Graph) -> GraphStats:
    """Node/edge counts, <k>, <k^2>, and mean local clustering.

    Clustering is the average over all nodes of the local coefficient
    (triangles through i over k_i(k_i-1)/2), taking 0 for degree < 2.
    """
    deg = g.degree.astype(float)
    tri = triangles(g)
    per_node = np.zeros(g.n, dtype=np.int64)
    if len(tri):
        np.add.at(per_node, tri.ravel(), 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        local = np.where(g.degree >= 2, 2.0 * per_node / (deg * (deg - 1.0)), 0.0)
    return GraphStats(
        n=g.n,
        m=g.m,
        mean_degree=float(deg.mean()),
        mean_sq_degree=float((deg**2).mean()),
        clustering=float(local.mean()),
    )
