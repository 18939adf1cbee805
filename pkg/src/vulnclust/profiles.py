"""Order clusters by vulnerability and summarise their make-up.

Clusters from a 1-D domain run are relabelled C1..Ck by ascending
back-transformed centroid, so C1 is always the least vulnerable group.
Profiles report raw-scale member statistics (the back-transformed centroid is
used only for ordering), remoteness and IRSD share distributions, and the
derived percentage metrics used to compare the most and least vulnerable
clusters.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .clustering import ClusteringSolution, back_transform
from .ingest import Dataset, Remoteness

# Row order of the profile tables: domain, demographics, remoteness, IRSD.
PROFILE_DEMOGRAPHICS = ("australia", "english", "indigenous", "preschool")

COMPARISON_METRICS = (
    "vulnerable",
    "english_not_primary",
    "indigenous",
    "no_preschool",
    "remoteness_cities",
    "remoteness_regional",
    "remoteness_remote",
    "irsd_low",
)

# Deciles 1-4 count as the low (most disadvantaged) IRSD band.
IRSD_LOW_DECILES = (1, 2, 3, 4)


@dataclass(frozen=True)
class OrderedClustering:
    labels: Mapping[int, str]  # cluster index -> "C1".."Ck"
    solution: ClusteringSolution

    @property
    def label_order(self) -> tuple[str, ...]:
        return tuple(f"C{i + 1}" for i in range(self.solution.k))

    def members(self, label: str, region_ids: Sequence[str]) -> tuple[str, ...]:
        wanted = {idx for idx, lab in self.labels.items() if lab == label}
        return tuple(rid for rid in region_ids if self.solution.assignments[rid] in wanted)


@dataclass(frozen=True)
class ClusterProfile:
    label: str
    n: int
    domain: str
    domain_mean: float
    domain_range: tuple[float, float]
    centroid: float  # back-transformed, ordering scale
    demographics: Mapping[str, tuple[float, tuple[float, float]]]  # field -> (mean, range)
    remoteness_dist: Mapping[str, float]
    irsd_dist: Mapping[int, float]
    member_ids: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "domain": self.domain,
            "domain_mean": self.domain_mean,
            "domain_range": list(self.domain_range),
            "centroid": self.centroid,
            "demographics": {
                field: {"mean": mean, "range": list(rng)}
                for field, (mean, rng) in self.demographics.items()
            },
            "remoteness_dist": dict(self.remoteness_dist),
            "irsd_dist": {str(d): share for d, share in self.irsd_dist.items()},
            "member_ids": list(self.member_ids),
        }


@dataclass(frozen=True)
class ComparisonRow:
    metric: str
    values: Mapping[str, float]  # label -> percent, unrounded

    def to_json(self) -> dict:
        return {
            "metric": self.metric,
            "values": {label: round(v, 1) for label, v in self.values.items()},
        }


@dataclass(frozen=True)
class SummaryRow:
    metric: str
    values: Mapping[str, object]  # domain -> scalar or (lo, hi) delta range

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, tuple):
                return [round(v[0], 1), round(v[1], 1)]
            if isinstance(v, float):
                return round(v, 1)
            return v

        return {"metric": self.metric, "values": {d: enc(v) for d, v in self.values.items()}}


def order_clusters(solution: ClusteringSolution, epsilon: float) -> OrderedClustering:
    """Label clusters C1..Ck by ascending back-transformed centroid.

    Centroid ties go to the larger cluster first, then the lower internal
    index, so relabelling never depends on seed-dependent index order.
    """
    if solution.centroids.shape[1] != 1:
        raise ValueError("cluster ordering is defined for 1-D domain runs")
    values = [float(back_transform(c, epsilon)) for c in solution.centroids[:, 0]]
    sizes = Counter(solution.assignments.values())
    order = sorted(range(solution.k), key=lambda j: (values[j], -sizes[j], j))
    labels = {cluster: f"C{rank + 1}" for rank, cluster in enumerate(order)}
    return OrderedClustering(labels=labels, solution=solution)


def _mean_and_range(values: Sequence[float]) -> tuple[float, tuple[float, float]]:
    return sum(values) / len(values), (min(values), max(values))


def cluster_profile(
    ordered: OrderedClustering, dataset: Dataset, domain: str, epsilon: float
) -> list[ClusterProfile]:
    """One profile per cluster, in C1..Ck order, from the post-imputation dataset."""
    solution = ordered.solution
    centroid_by_label = {
        ordered.labels[j]: float(back_transform(solution.centroids[j, 0], epsilon))
        for j in range(solution.k)
    }
    profiles = []
    for label in ordered.label_order:
        member_ids = ordered.members(label, dataset.ids)
        members = [dataset.by_id[rid] for rid in member_ids]
        n = len(members)
        domain_mean, domain_range = _mean_and_range([m.domain_props[domain] for m in members])
        demographics = {
            field: _mean_and_range([m.demo_props[field] for m in members])
            for field in PROFILE_DEMOGRAPHICS
        }
        remoteness_counts = Counter(m.remoteness for m in members)
        irsd_counts = Counter(m.irsd for m in members)
        profiles.append(
            ClusterProfile(
                label=label,
                n=n,
                domain=domain,
                domain_mean=domain_mean,
                domain_range=domain_range,
                centroid=centroid_by_label[label],
                demographics=demographics,
                remoteness_dist={r.value: remoteness_counts[r] / n for r in Remoteness},
                irsd_dist={d: irsd_counts[d] / n for d in range(1, 11)},
                member_ids=member_ids,
            )
        )
    return profiles


def irsd_low_share(irsd_dist: Mapping[int, float]) -> float:
    return sum(irsd_dist[d] for d in IRSD_LOW_DECILES)


def comparison_table(profiles: Sequence[ClusterProfile]) -> list[ComparisonRow]:
    """Derived percentage metrics per cluster, one row per metric.

    'english_not_primary' is 100 minus the English percentage and
    'no_preschool' 100 minus the Preschool percentage; remoteness collapses
    to cities / regional (inner+outer) / remote (remote+very remote); and
    'irsd_low' sums the shares of deciles 1-4.
    """

    def metric_value(profile: ClusterProfile, metric: str) -> float:
        demo = {field: mean for field, (mean, _) in profile.demographics.items()}
        rem = profile.remoteness_dist
        if metric == "vulnerable":
            return profile.domain_mean * 100.0
        if metric == "english_not_primary":
            return (1.0 - demo["english"]) * 100.0
        if metric == "indigenous":
            return demo["indigenous"] * 100.0
        if metric == "no_preschool":
            return (1.0 - demo["preschool"]) * 100.0
        if metric == "remoteness_cities":
            return rem[Remoteness.MAJOR_CITY.value] * 100.0
        if metric == "remoteness_regional":
            return (rem[Remoteness.INNER_REGIONAL.value] + rem[Remoteness.OUTER_REGIONAL.value]) * 100.0
        if metric == "remoteness_remote":
            return (rem[Remoteness.REMOTE.value] + rem[Remoteness.VERY_REMOTE.value]) * 100.0
        return irsd_low_share(profile.irsd_dist) * 100.0

    return [
        ComparisonRow(metric, {p.label: metric_value(p, metric) for p in profiles})
        for metric in COMPARISON_METRICS
    ]


def cross_domain_summary(
    runs: Mapping[str, tuple[OrderedClustering, Sequence[ClusterProfile]]]
) -> list[SummaryRow]:
    """Most-vulnerable-cluster summary, one column per domain.

    Demographic rows are delta ranges in percent: (top value - max over the
    other clusters, top value - min over the other clusters).
    """

    def delta_range(profiles: Sequence[ClusterProfile], field: str):
        values = [p.demographics[field][0] * 100.0 for p in profiles]
        top, others = values[-1], values[:-1]
        if not others:
            return None
        return (top - max(others), top - min(others))

    domains = list(runs)
    rows: list[SummaryRow] = []
    top_profiles = {d: runs[d][1][-1] for d in domains}
    rows.append(SummaryRow("size", {d: top_profiles[d].n for d in domains}))
    for field in PROFILE_DEMOGRAPHICS:
        rows.append(
            SummaryRow(f"{field}_delta", {d: delta_range(runs[d][1], field) for d in domains})
        )
    rows.append(
        SummaryRow(
            "very_remote",
            {d: top_profiles[d].remoteness_dist[Remoteness.VERY_REMOTE.value] * 100.0 for d in domains},
        )
    )
    rows.append(
        SummaryRow("irsd_low", {d: irsd_low_share(top_profiles[d].irsd_dist) * 100.0 for d in domains})
    )
    return rows


def profiles_to_csv(profiles: Sequence[ClusterProfile]) -> str:
    """Profile table in the wide layout: one row per variable, mean and range
    columns per cluster."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["variable"]
    for p in profiles:
        header += [f"{p.label} (n={p.n}) mean", f"{p.label} range"]
    writer.writerow(header)

    def fmt_range(rng: tuple[float, float]) -> str:
        return f"({rng[0]!r}, {rng[1]!r})"

    row = [profiles[0].domain]
    for p in profiles:
        row += [repr(p.domain_mean), fmt_range(p.domain_range)]
    writer.writerow(row)
    for field in PROFILE_DEMOGRAPHICS:
        row = [field]
        for p in profiles:
            mean, rng = p.demographics[field]
            row += [repr(mean), fmt_range(rng)]
        writer.writerow(row)
    for category in Remoteness:
        row = [f"remoteness:{category.value}"]
        for p in profiles:
            row += [repr(p.remoteness_dist[category.value]), ""]
        writer.writerow(row)
    for decile in range(1, 11):
        row = [f"irsd:{decile}"]
        for p in profiles:
            row += [repr(p.irsd_dist[decile]), ""]
        writer.writerow(row)
    return out.getvalue()


def comparison_to_csv(rows: Sequence[ComparisonRow]) -> str:
    """Comparison metrics as CSV, percentages rounded to 1 decimal."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    labels = list(rows[0].values) if rows else []
    writer.writerow(["metric"] + labels)
    for row in rows:
        writer.writerow([row.metric] + [f"{round(row.values[label], 1)}" for label in labels])
    return out.getvalue()
