from __future__ import annotations

import numpy as np
import pytest

from datagen import dataset, random_dataset, region
from vulnclust.clustering import ClusteringSolution, kmeans_restarts, log_features
from vulnclust.ingest import Remoteness
from vulnclust.profiles import (
    ClusterProfile,
    cluster_profile,
    comparison_table,
    cross_domain_summary,
    order_clusters,
    profiles_to_csv,
)

EPS = 1e-3


def solution_with_centroids(raw_centroids, assignments):
    """ClusteringSolution whose transformed centroids back-transform to the given values."""
    centroids = np.log(np.asarray(raw_centroids, dtype=float).reshape(-1, 1) + EPS)
    return ClusteringSolution(
        k=len(raw_centroids),
        assignments=dict(assignments),
        centroids=centroids,
        wcss=0.0,
        iterations=1,
        seed=0,
        converged=True,
    )


class TestOrderClusters:
    def test_labels_follow_back_transformed_centroids(self):
        # Internal indices 0..3 carry centroids 0.28, 0.06, 0.17, 0.11.
        sol = solution_with_centroids(
            [0.28, 0.06, 0.17, 0.11], {"a": 0, "b": 1, "c": 2, "d": 3}
        )
        ordered = order_clusters(sol, EPS)
        assert ordered.labels == {0: "C4", 1: "C1", 2: "C3", 3: "C2"}

    def test_k1_single_label(self):
        sol = solution_with_centroids([0.1], {"a": 0, "b": 0})
        assert order_clusters(sol, EPS).labels == {0: "C1"}

    def test_invariant_to_internal_index_permutation(self):
        base = solution_with_centroids([0.3, 0.1], {"a": 0, "b": 0, "c": 1})
        flipped = solution_with_centroids([0.1, 0.3], {"a": 1, "b": 1, "c": 0})
        ordered_base = order_clusters(base, EPS)
        ordered_flipped = order_clusters(flipped, EPS)

        def labelled(ordered, sol):
            return {rid: ordered.labels[c] for rid, c in sol.assignments.items()}

        assert labelled(ordered_base, base) == labelled(ordered_flipped, flipped)

    def test_centroid_tie_breaks_to_larger_cluster(self):
        sol = solution_with_centroids([0.2, 0.2], {"a": 0, "b": 1, "c": 1})
        ordered = order_clusters(sol, EPS)
        assert ordered.labels == {1: "C1", 0: "C2"}


def eight_region_fixture():
    regions = [
        region("r1", physical=0.05, australia=0.8, english=0.9, indigenous=0.1,
               preschool=0.95, irsd=9, remoteness=Remoteness.MAJOR_CITY),
        region("r2", physical=0.07, australia=0.9, english=0.8, indigenous=0.2,
               preschool=0.85, irsd=10, remoteness=Remoteness.INNER_REGIONAL),
        region("r3", physical=0.20, australia=0.7, english=0.6, indigenous=0.5,
               preschool=0.8, irsd=2, remoteness=Remoteness.REMOTE),
        region("r4", physical=0.30, australia=0.9, english=0.5, indigenous=0.7,
               preschool=0.6, irsd=1, remoteness=Remoteness.VERY_REMOTE),
        region("r5", physical=0.25, australia=0.8, english=0.7, indigenous=0.6,
               preschool=0.7, irsd=3, remoteness=Remoteness.REMOTE),
    ]
    ds = dataset(regions)
    sol = solution_with_centroids(
        [0.06, 0.25], {"r1": 0, "r2": 0, "r3": 1, "r4": 1, "r5": 1}
    )
    return ds, order_clusters(sol, EPS)


class TestClusterProfile:
    def test_hand_computed_fixture(self):
        ds, ordered = eight_region_fixture()
        low, high = cluster_profile(ordered, ds, "physical", EPS)

        assert (low.label, low.n) == ("C1", 2)
        assert low.domain_mean == pytest.approx(0.06)
        assert low.domain_range == (0.05, 0.07)
        assert low.demographics["australia"][0] == pytest.approx(0.85)
        assert low.demographics["english"] == (pytest.approx(0.85), (0.8, 0.9))
        assert low.remoteness_dist["Major City"] == 0.5
        assert low.remoteness_dist["Remote"] == 0.0
        assert low.irsd_dist[9] == 0.5 and low.irsd_dist[10] == 0.5
        assert low.member_ids == ("r1", "r2")

        assert (high.label, high.n) == ("C2", 3)
        assert high.domain_mean == pytest.approx(0.25)
        assert high.domain_range == (0.2, 0.3)
        assert high.remoteness_dist["Remote"] == pytest.approx(2 / 3)
        assert high.remoteness_dist["Very Remote"] == pytest.approx(1 / 3)
        assert high.irsd_dist[1] == pytest.approx(1 / 3)

    def test_single_member_cluster_degenerates(self):
        ds = dataset([region("a", physical=0.1), region("b", physical=0.4)])
        sol = solution_with_centroids([0.1, 0.4], {"a": 0, "b": 1})
        profiles = cluster_profile(order_clusters(sol, EPS), ds, "physical", EPS)
        single = profiles[1]
        assert single.n == 1
        assert single.domain_mean == 0.4
        assert single.domain_range == (0.4, 0.4)
        assert single.remoteness_dist["Major City"] == 1.0
        assert sum(single.irsd_dist.values()) == 1.0

    def test_table_shape(self):
        ds, ordered = eight_region_fixture()
        profile = cluster_profile(ordered, ds, "physical", EPS)[0]
        assert set(profile.demographics) == {"australia", "english", "indigenous", "preschool"}
        assert set(profile.remoteness_dist) == {r.value for r in Remoteness}
        assert set(profile.irsd_dist) == set(range(1, 11))
        csv_text = profiles_to_csv(cluster_profile(ordered, ds, "physical", EPS))
        lines = csv_text.strip().split("\n")
        # header + domain + 4 demographics + 5 remoteness + 10 IRSD rows
        assert len(lines) == 21
        assert lines[0].startswith("variable,C1 (n=2) mean,C1 range,C2 (n=3) mean")

    def test_distributions_sum_to_one(self):
        ds, ordered = eight_region_fixture()
        for profile in cluster_profile(ordered, ds, "physical", EPS):
            assert sum(profile.remoteness_dist.values()) == pytest.approx(1.0, abs=1e-9)
            assert sum(profile.irsd_dist.values()) == pytest.approx(1.0, abs=1e-9)
            lo, hi = profile.domain_range
            assert lo <= profile.domain_mean <= hi


def paper_c4_profile():
    """The published Physical C4 row: shares and means as printed."""
    return ClusterProfile(
        label="C4",
        n=30,
        domain="physical",
        domain_mean=0.28,
        domain_range=(0.22, 0.68),
        centroid=0.28,
        demographics={
            "australia": (0.89, (0.72, 1.0)),
            "english": (0.69, (0.01, 1.0)),
            "indigenous": (0.40, (0.0, 1.0)),
            "preschool": (0.7579, (0.46, 1.0)),
        },
        remoteness_dist={
            "Major City": 0.23,
            "Inner Regional": 0.27,
            "Outer Regional": 0.30,
            "Remote": 0.03,
            "Very Remote": 0.17,
        },
        irsd_dist={1: 0.50, 2: 0.14, 3: 0.30, 4: 0.00, 5: 0.0, 6: 0.0,
                   7: 0.03, 8: 0.0, 9: 0.03, 10: 0.0},
        member_ids=(),
    )


class TestComparisonTable:
    def test_published_c4_row_reproduces(self):
        rows = {r.metric: r.values["C4"] for r in comparison_table([paper_c4_profile()])}
        assert round(rows["english_not_primary"], 1) == 31.0
        assert round(rows["no_preschool"], 2) == 24.21  # rounds to the published 24
        assert round(rows["no_preschool"]) == 24
        assert round(rows["remoteness_cities"], 1) == 23.0
        assert round(rows["remoteness_regional"], 1) == 57.0
        assert round(rows["remoteness_remote"], 1) == 20.0
        assert round(rows["irsd_low"], 1) == 94.0
        assert round(rows["vulnerable"], 1) == 28.0
        assert round(rows["indigenous"], 1) == 40.0

    def test_complement_and_partition_identities(self):
        ds, ordered = eight_region_fixture()
        profiles = cluster_profile(ordered, ds, "physical", EPS)
        rows = {r.metric: r.values for r in comparison_table(profiles)}
        for profile in profiles:
            label = profile.label
            english = profile.demographics["english"][0] * 100
            preschool = profile.demographics["preschool"][0] * 100
            assert rows["english_not_primary"][label] + english == pytest.approx(100, abs=1e-9)
            assert rows["no_preschool"][label] + preschool == pytest.approx(100, abs=1e-9)
            total = (
                rows["remoteness_cities"][label]
                + rows["remoteness_regional"][label]
                + rows["remoteness_remote"][label]
            )
            assert total == pytest.approx(100, abs=1e-9)


class TestEndToEndProfiles:
    def run_domain(self, seed):
        ds = random_dataset(seed, n=30, missing_rate=0.0, edge_prob=0.2)
        features = log_features(ds.ids, [r.domain_props["physical"] for r in ds.regions], EPS)
        sol = kmeans_restarts(features, 3, base_seed=seed, restarts=10)
        ordered = order_clusters(sol, EPS)
        return ds, cluster_profile(ordered, ds, "physical", EPS)

    @pytest.mark.parametrize("seed", range(5))
    def test_label_monotonicity_and_coverage(self, seed):
        ds, profiles = self.run_domain(seed)
        means = [p.domain_mean for p in profiles]
        assert means == sorted(means)
        assert sum(p.n for p in profiles) == len(ds.regions)
        seen = [rid for p in profiles for rid in p.member_ids]
        assert sorted(seen) == sorted(ds.ids)


class TestCrossDomainSummary:
    def test_single_domain_consistent_with_comparison(self):
        ds, ordered = eight_region_fixture()
        profiles = cluster_profile(ordered, ds, "physical", EPS)
        rows = {r.metric: r.values for r in cross_domain_summary({"physical": (ordered, profiles)})}
        comparison = {r.metric: r.values for r in comparison_table(profiles)}
        top = profiles[-1].label
        assert rows["size"]["physical"] == profiles[-1].n
        assert rows["irsd_low"]["physical"] == pytest.approx(comparison["irsd_low"][top])
        assert rows["very_remote"]["physical"] == pytest.approx(
            profiles[-1].remoteness_dist["Very Remote"] * 100
        )

    def test_delta_ranges_hand_computed(self):
        ds, ordered = eight_region_fixture()
        profiles = cluster_profile(ordered, ds, "physical", EPS)
        rows = {r.metric: r.values for r in cross_domain_summary({"physical": (ordered, profiles)})}
        # english means: C1 0.85, C2 0.6 -> top delta (-25, -25)
        lo, hi = rows["english_delta"]["physical"]
        assert lo == pytest.approx(-25.0)
        assert hi == pytest.approx(-25.0)

    def test_three_cluster_delta_range(self):
        regions = [
            region("a", english=0.9),
            region("b", english=0.8),
            region("c", english=0.6),
        ]
        ds = dataset(regions)
        sol = solution_with_centroids([0.05, 0.1, 0.3], {"a": 0, "b": 1, "c": 2})
        ordered = order_clusters(sol, EPS)
        profiles = cluster_profile(ordered, ds, "physical", EPS)
        rows = {r.metric: r.values for r in cross_domain_summary({"physical": (ordered, profiles)})}
        lo, hi = rows["english_delta"]["physical"]
        assert lo == pytest.approx(60 - 90)  # top minus max of others
        assert hi == pytest.approx(60 - 80)  # top minus min of others
