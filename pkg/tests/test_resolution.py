import math

import numpy as np
import pytest

from horw.graph import Graph
from horw.resolution import (
    KL_EPS,
    analyze,
    benchmark_profile,
    default_window,
    kl_to_benchmark,
    minmax_normalize,
    segment_slopes,
    sweep_s,
)
from horw.walk import make_rank_result

from conftest import random_connected_graph


def chain(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def as_rank(scores, method="m") -> "RankResult":
    scores = np.asarray(scores, dtype=float)
    return make_rank_result(scores / scores.sum(), chain(len(scores)), method)


class TestMinMax:
    def test_simple(self):
        out, flag = minmax_normalize([2, 4, 6])
        assert out.tolist() == [0, 0.5, 1.0]
        assert not flag

    def test_constant_vector_flags(self):
        out, flag = minmax_normalize([5, 5, 5])
        assert out.tolist() == [0, 0, 0]
        assert flag

    def test_negative_values(self):
        out, _ = minmax_normalize([-1, 0, 3])
        assert out.tolist() == [0, 0.25, 1.0]

    def test_short_vector_rejected(self):
        with pytest.raises(ValueError):
            minmax_normalize([1.0])


class TestKL:
    def test_linear_profile_is_zero(self):
        n = 200
        r = as_rank(np.arange(n, 0, -1, dtype=float))
        assert kl_to_benchmark(r) < 1e-9

    def test_degenerate_is_infinite(self):
        r = as_rank(np.ones(50))
        assert math.isinf(kl_to_benchmark(r))

    def test_nonnegative(self, rng):
        for _ in range(25):
            r = as_rank(rng.random(int(rng.integers(10, 200))) + 1e-9)
            assert kl_to_benchmark(r) >= 0.0

    def test_two_point_mass_matches_direct_sum(self):
        n = 100
        scores = np.full(n, 1e-6)
        scores[0] = 1.0
        scores[1] = 0.5
        r = as_rank(scores)
        got = kl_to_benchmark(r)
        # independent term-by-term evaluation
        y = np.sort(r.scores)[::-1]
        y = (y - y.min()) / (y.max() - y.min())
        p = y + KL_EPS
        q = benchmark_profile(n) + KL_EPS
        p, q = p / p.sum(), q / q.sum()
        want = float(sum(pi * math.log(pi / qi) for pi, qi in zip(p, q)))
        assert got == pytest.approx(want, rel=1e-12)

    def test_invariant_under_affine_scaling(self, rng):
        base = rng.random(120) + 0.1
        a = kl_to_benchmark(as_rank(base))
        b = kl_to_benchmark(as_rank(3.7 * base + 0.0))  # sum-normalization eats shifts
        assert a == pytest.approx(b, rel=1e-9)


class TestSlopes:
    def test_benchmark_slopes_are_minus_one(self):
        n = 300
        r = as_rank(np.linspace(2.0, 1.0, n))
        for slope in segment_slopes(r, window=50):
            assert slope == pytest.approx(-1.0, abs=1e-9)

    def test_flat_middle_segment(self):
        n = 300
        scores = np.concatenate([np.linspace(3, 2, 100), np.full(100, 1.5), np.linspace(1, 0.1, 100)])
        r = as_rank(scores)
        _, mid, _ = segment_slopes(r, window=50)
        assert mid == pytest.approx(0.0, abs=1e-12)

    def test_matches_normal_equations(self, rng):
        n = 300
        r = as_rank(rng.random(n) + 0.01)
        got = segment_slopes(r, window=50)
        y = np.sort(r.scores)[::-1]
        y = (y - y.min()) / (y.max() - y.min())
        x = np.arange(n) / (n - 1)

        def ls(xs, ys):
            xm, ym = xs.mean(), ys.mean()
            return float(((xs - xm) * (ys - ym)).sum() / ((xs - xm) ** 2).sum())

        mid = n // 2 - 25
        want = (ls(x[:50], y[:50]), ls(x[mid : mid + 50], y[mid : mid + 50]), ls(x[-50:], y[-50:]))
        assert np.allclose(got, want, atol=1e-12)

    def test_too_small_n_rejected(self):
        r = as_rank(np.arange(100, 0, -1, dtype=float))
        with pytest.raises(ValueError):
            segment_slopes(r, window=50)

    def test_window_default_tracks_one_percent(self):
        assert default_window(4941) == 50
        assert default_window(105) == 2
        assert default_window(10) == 2


class TestAnalyze:
    def test_report_fields(self):
        r = as_rank(np.arange(200, 0, -1, dtype=float))
        rep = analyze(r, window=30)
        assert rep.kl < 1e-9
        assert rep.slope_top == pytest.approx(-1, abs=1e-9)
        assert not rep.degenerate
        assert rep.window == 30

    def test_degenerate_flagged(self):
        rep = analyze(as_rank(np.ones(200)), window=30)
        assert rep.degenerate
        assert math.isinf(rep.kl)


class TestSweep:
    def test_singleton_grid(self, toy):
        sw = sweep_s(toy, [0.0])
        assert sw.best_s == 0.0
        assert len(sw.kl_values) == 1

    def test_curve_and_argmin(self, rng):
        g = random_connected_graph(rng, 40, extra=1.0)
        grid = [0.0, 0.25, 0.5, 0.75, 1.0]
        sw = sweep_s(g, grid)
        assert list(sw.s_grid) == grid
        assert sw.best_kl == min(sw.kl_values)
        assert sw.best_s == sw.s_grid[int(np.argmin(sw.kl_values))]

    def test_vertex_transitive_graph_all_degenerate(self):
        c8 = Graph(8, [(i, (i + 1) % 8) for i in range(8)])
        sw = sweep_s(c8, [0.0, 0.5, 1.0])
        assert all(math.isinf(k) for k in sw.kl_values)
        assert sw.best_s == 0.0  # first grid point by convention

    def test_empty_grid_rejected(self, toy):
        with pytest.raises(ValueError):
            sweep_s(toy, [])
