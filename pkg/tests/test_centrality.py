from collections import deque

import numpy as np
import pytest

from horw.centrality import (
    betweenness_centrality,
    closeness_centrality,
    core_numbers,
    coreness,
    corehd_order,
    degree_centrality,
    eigenvector_centrality,
    pagerank,
)
from horw.graph import Graph

from conftest import random_connected_graph


def brute_betweenness(g: Graph) -> np.ndarray:
    """Oracle: count shortest paths through each vertex pair by pair."""
    n = g.n
    acc = np.zeros(n)
    for s in range(n):
        dist = np.full(n, -1)
        dist[s] = 0
        sigma = np.zeros(n)
        sigma[s] = 1
        q = deque([s])
        order = []
        while q:
            u = q.popleft()
            order.append(u)
            for v in g.neighbors[u]:
                v = int(v)
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
        delta = np.zeros(n)
        for v in reversed(order):
            for u in g.neighbors[v]:
                u = int(u)
                if dist[u] == dist[v] + 1:
                    delta[v] += sigma[v] / sigma[u] * (1 + delta[u])
            if v != s:
                acc[v] += delta[v]
    return acc / 2


class TestDegreeCloseness:
    def test_degree_p3(self, p3):
        assert np.allclose(degree_centrality(p3).scores, [0.25, 0.5, 0.25])

    def test_degree_star_hub_first(self):
        g = Graph(5, [(0, i) for i in range(1, 5)])
        assert degree_centrality(g).order[0] == 0

    def test_closeness_p3(self, p3):
        raw = np.array([1 / 3, 1 / 2, 1 / 3])
        assert np.allclose(closeness_centrality(p3).scores, raw / raw.sum())

    def test_closeness_uniform_on_transitive(self):
        c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
        assert np.allclose(closeness_centrality(c5).scores, 0.2)
        k5 = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
        assert np.allclose(closeness_centrality(k5).scores, 0.2)

    def test_closeness_requires_connected(self):
        with pytest.raises(ValueError):
            closeness_centrality(Graph(4, [(0, 1), (2, 3)]))


class TestBetweenness:
    def test_p3_center(self, p3):
        r = betweenness_centrality(p3)
        assert np.allclose(r.scores, [0, 1, 0])

    def test_complete_graph_degenerates_to_uniform(self, k4):
        r = betweenness_centrality(k4)
        assert r.degenerate
        assert np.allclose(r.scores, 0.25)

    def test_matches_bruteforce(self, rng):
        for _ in range(15):
            g = random_connected_graph(rng, int(rng.integers(4, 11)), extra=0.8)
            got = betweenness_centrality(g)
            want = brute_betweenness(g)
            if want.sum() == 0:
                assert got.degenerate
            else:
                assert np.allclose(got.scores, want / want.sum(), atol=1e-12)


class TestEigenvector:
    def test_k3_uniform(self, k3):
        assert np.allclose(eigenvector_centrality(k3).scores, 1 / 3, atol=1e-9)

    def test_star_hub_dominates(self):
        g = Graph(5, [(0, i) for i in range(1, 5)])
        r = eigenvector_centrality(g)
        assert r.order[0] == 0
        assert r.scores[0] > r.scores[1]

    def test_bipartite_graph_converges(self, p3):
        # adjacency spectrum is symmetric on bipartite graphs; the shifted
        # iteration must still converge
        r = eigenvector_centrality(p3, tol=1e-12)
        v = np.array([1, np.sqrt(2), 1])
        assert np.allclose(r.scores, v / v.sum(), atol=1e-8)

    def test_matches_dense_eigensolver(self, rng):
        for n in (15, 60, 150):
            g = random_connected_graph(rng, n, extra=0.8)
            got = eigenvector_centrality(g, tol=1e-13).scores
            vals, vecs = np.linalg.eigh(
                g.adjacency().toarray()
            )
            want = np.abs(vecs[:, -1])
            want /= want.sum()
            assert np.abs(got - want).sum() < 1e-8


class TestPagerank:
    def test_k3_uniform_any_damping(self, k3):
        for a in (0.3, 0.85, 0.95):
            assert np.allclose(pagerank(k3, damping=a).scores, 1 / 3, atol=1e-9)

    def test_zero_damping_gives_uniform(self, p3):
        assert np.allclose(pagerank(p3, damping=0.0).scores, 1 / 3, atol=1e-12)

    def test_p3_matches_linear_solve(self, p3):
        a = 0.85
        C = np.array([[0, 0.5, 0], [1, 0, 1], [0, 0.5, 0]])
        want = np.linalg.solve(np.eye(3) - a * C, np.full(3, (1 - a) / 3))
        want /= want.sum()
        got = pagerank(p3, damping=a, tol=1e-13).scores
        assert np.abs(got - want).max() < 1e-10

    def test_high_damping_approaches_degree(self, rng):
        # on non-bipartite connected graphs the a->1 limit is the plain walk
        g = random_connected_graph(rng, 40, extra=1.2)
        deg = g.degree / g.degree.sum()
        got = pagerank(g, damping=0.999, tol=1e-13).scores
        assert np.abs(got - deg).sum() < 1e-2

    def test_damping_validated(self, k3):
        with pytest.raises(ValueError):
            pagerank(k3, damping=1.0)


class TestCoreness:
    def test_k4(self, k4):
        assert core_numbers(k4).tolist() == [3, 3, 3, 3]

    def test_tree_all_one(self):
        tree = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
        assert core_numbers(tree).tolist() == [1] * 6

    def test_k4_with_pendant(self):
        g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
        assert core_numbers(g).tolist() == [3, 3, 3, 3, 1]

    def test_rank_result_normalized(self, k4):
        r = coreness(k4)
        assert abs(r.scores.sum() - 1) < 1e-12


class TestCoreHD:
    def test_tree_skips_to_tree_breaking(self):
        # no 2-core: the first removal is the best tree splitter
        path = Graph(5, [(i, i + 1) for i in range(4)])
        order = corehd_order(path)
        assert order[0] == 2
        assert sorted(order.tolist()) == list(range(5))

    def test_cycle_first_removal_by_label(self):
        c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
        order = corehd_order(c5)
        assert order[0] == 0  # all degrees tie; label rule

    def test_k4_with_pendant_phases(self):
        g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
        order = corehd_order(g).tolist()
        # 2-core phase: two removals empty the clique's core (ties by label),
        # then the leftover path 2-3-4 is split at its center
        assert order[:3] == [0, 1, 3]
        assert sorted(order) == list(range(5))

    def test_full_permutation(self, rng):
        g = random_connected_graph(rng, 35, extra=1.0)
        order = corehd_order(g)
        assert sorted(order.tolist()) == list(range(g.n))

    def test_phase1_always_removes_from_two_core(self, rng):
        g = random_connected_graph(rng, 25, extra=1.2)
        order = corehd_order(g).tolist()
        alive = set(range(g.n))
        for v in order:
            core = _two_core_members(g, alive)
            if not core:
                break
            # while a 2-core exists, removals must come from it with max degree
            deg_in = {
                u: sum(1 for w in g.neighbors[u] if int(w) in core) for u in core
            }
            assert v in core
            assert deg_in[v] == max(deg_in.values())
            alive.remove(v)


def _two_core_members(g: Graph, alive: set) -> set:
    members = set(alive)
    changed = True
    while changed:
        changed = False
        for u in list(members):
            if sum(1 for w in g.neighbors[u] if int(w) in members) < 2:
                members.remove(u)
                changed = True
    return members


class TestInvariants:
    def test_all_methods_sum_to_one(self, toy):
        for fn in (
            degree_centrality,
            closeness_centrality,
            betweenness_centrality,
            eigenvector_centrality,
            pagerank,
            coreness,
        ):
            r = fn(toy)
            assert abs(r.scores.sum() - 1.0) < 1e-10
            assert (r.scores >= 0).all()

    def test_uniform_on_vertex_transitive(self):
        c6 = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
        for fn in (degree_centrality, closeness_centrality, eigenvector_centrality, pagerank):
            assert np.allclose(fn(c6).scores, 1 / 6, atol=1e-8)
