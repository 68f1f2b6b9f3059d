import math

import numpy as np
import pytest

from horw.dismantle import (
    dismantle,
    gcc_after_prefix_removals,
    reinsert,
    removal_order,
    run_dismantling,
)
from horw.graph import Graph, connected_components, subgraph

from conftest import random_connected_graph


def gcc_from_scratch(g: Graph, removed) -> int:
    keep = [v for v in range(g.n) if v not in set(removed)]
    if not keep:
        return 0
    sg, _ = subgraph(g, np.array(keep))
    return max(len(c) for c in connected_components(sg))


class TestPrefixGcc:
    def test_matches_recompute(self, rng):
        for _ in range(20):
            n = int(rng.integers(5, 40))
            g = random_connected_graph(rng, n, extra=float(rng.uniform(0, 1.5)))
            order = rng.permutation(n)
            got = gcc_after_prefix_removals(g, order)
            want = [gcc_from_scratch(g, order[:k]) for k in range(n + 1)]
            assert got.tolist() == want

    def test_trajectory_non_increasing(self, rng):
        g = random_connected_graph(rng, 50, extra=1.0)
        sizes = gcc_after_prefix_removals(g, np.arange(g.n))
        assert (np.diff(sizes) <= 0).all()


class TestDismantle:
    def test_star_hub_first(self):
        g = Graph(10, [(0, i) for i in range(1, 10)])
        order = removal_order(g, "degree")
        res = dismantle(g, order, target=0.2)
        assert res.removed == (0,)
        assert res.gcc_trajectory == (1,)

    def test_p10_degree_order(self):
        g = Graph(10, [(i, i + 1) for i in range(9)])
        res = dismantle(g, removal_order(g, "degree"), target=0.5)
        assert res.removed == (1, 2, 3, 4)
        assert res.gcc_trajectory == (8, 7, 6, 5)

    def test_requires_permutation(self, k4):
        with pytest.raises(ValueError):
            dismantle(k4, [0, 1, 2], target=0.5)
        with pytest.raises(ValueError):
            dismantle(k4, [0, 1, 2, 2], target=0.5)

    def test_removes_at_least_one_when_above_target(self, rng):
        g = random_connected_graph(rng, 100, extra=0.5)
        res = dismantle(g, removal_order(g, "degree"), target=0.5)
        assert len(res.removed) >= 1

    def test_complete_graph_peels_to_threshold(self):
        n = 30
        g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
        res = run_dismantling(g, "degree", target=0.1)
        threshold = math.ceil(0.1 * n)
        assert len(res.removed) == n - threshold
        assert gcc_from_scratch(g, res.removed) == threshold


class TestReinsert:
    def test_returns_isolated_node(self):
        # removing 0 and 9 of a P10 with target leaving plenty of room:
        # the end node 9 reconnects nothing and must come back
        g = Graph(10, [(i, i + 1) for i in range(9)])
        removed = [4, 9]
        kept = reinsert(g, removed, target=0.5)
        assert 9 not in kept
        assert kept == [4]

    def test_minimal_separator_stays(self):
        # two K4 blocks joined through node 3: it is the only separator
        edges = (
            [(i, j) for i in range(4) for j in range(i + 1, 4)]
            + [(i, j) for i in range(4, 7) for j in range(i + 1, 7)]
            + [(3, 4)]
        )
        g = Graph(7, edges)
        assert reinsert(g, [3], target=0.6) == [3]

    def test_matches_greedy_oracle(self, rng):
        def oracle(g, removed, target):
            removed = list(removed)
            threshold = math.ceil(target * g.n)
            while removed:
                best = None
                for v in removed:
                    trial = [u for u in removed if u != v]
                    key = (gcc_from_scratch(g, trial), int(g.label_rank[v]))
                    if best is None or key < best[0]:
                        best = (key, v)
                if best[0][0] > threshold:
                    break
                removed.remove(best[1])
            return removed

        for _ in range(15):
            n = int(rng.integers(6, 28))
            g = random_connected_graph(rng, n, extra=float(rng.uniform(0, 1.0)))
            res = dismantle(g, removal_order(g, "degree"), target=0.3)
            assert reinsert(g, res.removed, 0.3) == oracle(g, res.removed, 0.3)

    def test_local_minimality(self, rng):
        g = random_connected_graph(rng, 60, extra=0.8)
        res = run_dismantling(g, "degree", target=0.2)
        threshold = res.threshold
        assert gcc_from_scratch(g, res.removed) <= threshold
        for v in res.removed:
            rest = [u for u in res.removed if u != v]
            assert gcc_from_scratch(g, rest) > threshold


class TestRunDismantling:
    def test_every_method_hits_target(self, toy):
        for method in ("horw", "corehd", "betweenness", "degree", "coreness", "eigenvector"):
            res = run_dismantling(toy, method, s=0.5, target=0.2)
            assert gcc_from_scratch(toy, res.removed) <= res.threshold
            assert res.proportion == len(res.removed) / toy.n

    def test_unknown_method(self, toy):
        with pytest.raises(ValueError):
            run_dismantling(toy, "nope")

    def test_target_validated(self, toy):
        with pytest.raises(ValueError):
            run_dismantling(toy, "degree", target=0.0)
