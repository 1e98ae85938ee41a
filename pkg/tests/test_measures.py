"""Path engine: pointwise indicators, exact DP, and the incremental sweep."""

from __future__ import annotations

import numpy as np
import pytest

from cumuldyn.measures import (
    backlink_distribution,
    cumulativeness_series,
    external_dependence,
    initial_fraction,
    internal_dependence,
    measure_checkpoints,
    node_path_vectors,
    path_length_distribution,
)

from conftest import brute_force_path_counts, make_graph, random_dag


class TestInternalDependence:
    def test_worked_example(self, example_graph):
        assert internal_dependence(example_graph, 4) == 0.75

    def test_no_edges(self):
        assert internal_dependence(make_graph(5, []), 5) == 0.0

    def test_single_node(self):
        assert internal_dependence(make_graph(1, []), 1) == 0.0

    def test_prefix_counts_only_prefix_edges(self, example_graph):
        assert internal_dependence(example_graph, 2) == 0.0
        assert internal_dependence(example_graph, 3) == pytest.approx(1 / 3)

    @pytest.mark.parametrize("n", [0, 5])
    def test_out_of_range(self, example_graph, n):
        with pytest.raises(ValueError):
            internal_dependence(example_graph, n)


class TestExternalDependence:
    def test_mean_of_counts(self):
        g = make_graph(3, [], external=[2, 0, 1])
        assert external_dependence(g, 3) == 1.0

    def test_all_zero(self):
        assert external_dependence(make_graph(3, []), 3) == 0.0

    def test_single_node(self):
        g = make_graph(1, [], external=[5])
        assert external_dependence(g, 1) == 5.0


class TestInitialFraction:
    def test_worked_example(self, example_graph):
        assert initial_fraction(example_graph, 4) == 0.5

    def test_no_edges(self):
        assert initial_fraction(make_graph(7, []), 7) == 1.0

    def test_complete_chain(self):
        n = 6
        g = make_graph(n, [(i, i - 1) for i in range(1, n)])
        assert initial_fraction(g, n) == 1 / n


class TestPathLengthDistribution:
    def test_worked_example(self, example_graph):
        # Paths: (a), (b), (a,c), (a,d), (a,c,d)
        dist = path_length_distribution(example_graph, 4)
        assert dist.counts == {0: 2, 1: 2, 2: 1}
        assert dist.ipl == pytest.approx(0.8)
        assert dist.mipl == 2
        oracle = brute_force_path_counts(example_graph, 4)
        assert dist.counts == oracle

    def test_no_edges_all_initial(self):
        dist = path_length_distribution(make_graph(6, []), 6)
        assert dist.counts == {0: 6}
        assert dist.ipl == 0.0
        assert dist.mipl == 0

    def test_chain(self):
        n = 8
        g = make_graph(n, [(i, i - 1) for i in range(1, n)])
        dist = path_length_distribution(g, n)
        assert dist.counts == {k: 1 for k in range(n)}
        assert dist.ipl == pytest.approx((n - 1) / 2)
        assert dist.mipl == n - 1

    def test_normalization_and_mean_invariants(self, example_graph):
        dist = path_length_distribution(example_graph, 4)
        assert sum(dist.normalized.values()) == pytest.approx(1.0, abs=1e-9)
        assert dist.ipl == pytest.approx(
            sum(k * w for k, w in dist.normalized.items())
        )
        assert all(k <= dist.mipl for k, c in dist.counts.items() if c > 0)

    def test_matches_brute_force_on_random_dags(self):
        rng = np.random.default_rng(20240401)
        for _ in range(200):
            g = random_dag(rng)
            n = g.n_nodes
            dist = path_length_distribution(g, n)
            oracle = brute_force_path_counts(g, n)
            assert dist.counts == oracle

    def test_prefix_restriction_matches_brute_force(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            g = random_dag(rng)
            for n in range(1, g.n_nodes + 1):
                assert path_length_distribution(g, n).counts == brute_force_path_counts(g, n)

    def test_float_mode_matches_exact(self):
        rng = np.random.default_rng(99)
        for _ in range(40):
            g = random_dag(rng)
            n = g.n_nodes
            exact = path_length_distribution(g, n, mode="exact")
            floating = path_length_distribution(g, n, mode="float")
            assert floating.mipl == exact.mipl
            assert floating.ipl == pytest.approx(exact.ipl, rel=1e-9)
            for k, w in exact.normalized.items():
                assert floating.normalized[k] == pytest.approx(w, rel=1e-9, abs=1e-12)
            for k, c in exact.counts.items():
                assert floating.counts[k] == pytest.approx(c, rel=1e-9)

    def test_unknown_mode_rejected(self, example_graph):
        with pytest.raises(ValueError):
            path_length_distribution(example_graph, 4, mode="noisy")


class TestNodePathVectors:
    def test_initial_node_vector(self, example_graph):
        vectors = node_path_vectors(example_graph, 4)
        assert vectors[0].as_dict() == {0: 1}
        assert vectors[1].as_dict() == {0: 1}

    def test_recurrence_on_random_dags(self):
        # Entry k of a citing node equals the sum of cited entries at k-1.
        rng = np.random.default_rng(3)
        for _ in range(30):
            g = random_dag(rng)
            vectors = node_path_vectors(g, g.n_nodes)
            for i, cited in enumerate(g.backward_lists):
                vec = vectors[i].as_dict()
                if not cited:
                    assert vec == {0: 1}
                    continue
                ks = set(vec) | {
                    k + 1 for j in cited for k in vectors[j].as_dict()
                }
                for k in ks:
                    expected = sum(
                        vectors[j].as_dict().get(k - 1, 0) for j in cited
                    )
                    assert vec.get(k, 0) == expected


class TestCumulativenessSeries:
    def test_worked_example_stride_2(self, example_graph):
        series = cumulativeness_series(example_graph, stride=2)
        assert series.ns() == [2, 4]
        first, last = series.checkpoints
        assert (first.id, first.ipl) == (0.0, 0.0)
        assert last.id == 0.75
        assert last.ipl == pytest.approx(0.8)

    def test_stride_larger_than_graph_clamps(self, example_graph):
        series = cumulativeness_series(example_graph, stride=10)
        assert series.ns() == [4]

    def test_no_edge_graph(self):
        series = cumulativeness_series(make_graph(9, []), stride=3)
        assert all(cp.id == 0.0 and cp.ipl == 0.0 for cp in series.checkpoints)

    def test_incremental_equals_pointwise(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            g = random_dag(rng)
            series = cumulativeness_series(g, stride=2)
            for cp in series.checkpoints:
                dist = path_length_distribution(g, cp.n)
                assert cp.ipl == dist.ipl
                assert cp.mipl == dist.mipl
                assert cp.id == internal_dependence(g, cp.n)
                assert cp.ed == external_dependence(g, cp.n)

    def test_monotone_mipl_and_total(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            g = random_dag(rng)
            series = measure_checkpoints(g, stride=1)
            mipls = [cp.path_dist.mipl for cp in series]
            totals = [cp.path_dist.total_paths for cp in series]
            assert mipls == sorted(mipls)
            assert totals == sorted(totals)

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            cumulativeness_series(make_graph(0, []), stride=1)

    def test_bad_stride_rejected(self, example_graph):
        with pytest.raises(ValueError):
            cumulativeness_series(example_graph, stride=0)


class TestBacklinkDistribution:
    def test_histogram_of_prefix(self, example_graph):
        hist = backlink_distribution(example_graph, 4)
        assert hist.counts == {0: 2, 1: 1, 2: 1}
        assert hist.mean == internal_dependence(example_graph, 4)

    def test_prefix_histogram(self, example_graph):
        assert backlink_distribution(example_graph, 2).counts == {0: 2}
