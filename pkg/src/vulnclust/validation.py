"""Silhouette evaluation and choice of the number of clusters.

For point i, a(i) is the mean distance to the other members of its own
cluster and b(i) the smallest mean distance to any foreign cluster; the
width is

    s(i) = 1 - a/b   if a < b
         = 0         if a = b (and, by convention, for singleton clusters)
         = b/a - 1   if a > b

which is (b - a) / max(a, b) wherever that is defined. Widths average to a
score in [-1, 1]; the informal quality reading is banded below. K is chosen
by sweeping a range and keeping the argmax average width.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .clustering import (
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    ClusteringSolution,
    FeatureMatrix,
    kmeans_restarts,
)


class Band(Enum):
    PROBLEMATIC = "problematic"
    ACCEPTABLE = "acceptable"
    GOOD = "good"
    PREFERABLE = "preferable"


class SingleClusterError(ValueError):
    pass


@dataclass(frozen=True)
class SilhouetteReport:
    per_point: Mapping[str, float]
    per_cluster: Mapping[int, float]
    average: float
    band: Band
    a_values: Mapping[str, float]
    b_values: Mapping[str, float]

    def to_json(self) -> dict:
        return {
            "per_point": dict(self.per_point),
            "per_cluster": [
                {"cluster": c, "mean_width": w} for c, w in sorted(self.per_cluster.items())
            ],
            "average": self.average,
            "band": self.band.value,
            "a_values": dict(self.a_values),
            "b_values": dict(self.b_values),
        }


@dataclass(frozen=True)
class SelectionResult:
    domain: str
    sweep: Mapping[int, tuple[float, ClusteringSolution]]
    chosen_k: int
    rationale: Band


def quality_band(width: float) -> Band:
    """Band an average width: <0.2 or >0.9 problematic, >=0.5 good, 0.7..0.9 preferable."""
    if not -1.0 <= width <= 1.0:
        raise ValueError(f"silhouette width {width} outside [-1, 1]")
    if width < 0.2 or width > 0.9:
        return Band.PROBLEMATIC
    if width >= 0.7:
        return Band.PREFERABLE
    if width >= 0.5:
        return Band.GOOD
    return Band.ACCEPTABLE


def _labels_and_counts(features: FeatureMatrix, solution: ClusteringSolution) -> tuple[np.ndarray, np.ndarray]:
    if solution.k < 2:
        raise SingleClusterError("silhouette needs at least 2 clusters")
    missing = [rid for rid in features.region_ids if rid not in solution.assignments]
    if missing:
        raise ValueError(f"solution does not cover rows {missing[:3]}...")
    labels = solution.labels_for(features.region_ids)
    return labels, np.bincount(labels, minlength=solution.k)


def _pairwise_distances(points: np.ndarray) -> np.ndarray:
    # Differences first: the expanded x^2+y^2-2xy form cancels catastrophically
    # for nearby points and misses the 1e-12 oracle-agreement budget.
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))


def _widths(a: np.ndarray, b: np.ndarray, own_count: np.ndarray) -> np.ndarray:
    s = np.zeros_like(a)
    regular = own_count > 1
    less = regular & (a < b)
    more = regular & (a > b)
    s[less] = 1.0 - a[less] / b[less]
    s[more] = b[more] / a[more] - 1.0
    return s


def _point_stats(features: FeatureMatrix, solution: ClusteringSolution) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    labels, counts = _labels_and_counts(features, solution)
    n = features.n
    dist = _pairwise_distances(features.values)
    members = labels[None, :] == np.arange(solution.k)[:, None]  # (k, n)
    cluster_sums = dist @ members.T  # (n, k)

    own = cluster_sums[np.arange(n), labels]
    own_count = counts[labels]
    a = np.where(own_count > 1, own / np.maximum(own_count - 1, 1), 0.0)

    with np.errstate(invalid="ignore"):
        means = cluster_sums / counts[None, :]
    means[np.arange(n), labels] = np.inf
    b = means.min(axis=1)

    return a, b, _widths(a, b, own_count)


def silhouette_point(i: int, features: FeatureMatrix, solution: ClusteringSolution) -> tuple[float, float, float]:
    """(a, b, s) for the i-th feature row; singleton clusters get s = 0."""
    labels, counts = _labels_and_counts(features, solution)
    own = labels[i]
    dists = np.sqrt(np.sum((features.values - features.values[i]) ** 2, axis=1))
    if counts[own] > 1:
        a = float(dists[labels == own].sum() / (counts[own] - 1))
    else:
        a = 0.0
    b = min(float(dists[labels == c].mean()) for c in range(solution.k) if c != own and counts[c] > 0)
    s = float(_widths(np.array([a]), np.array([b]), np.array([counts[own]]))[0])
    return a, b, s


def silhouette_report(features: FeatureMatrix, solution: ClusteringSolution) -> SilhouetteReport:
    """Per-point widths, per-cluster means, overall average, and its band."""
    labels, _ = _labels_and_counts(features, solution)
    a, b, s = _point_stats(features, solution)
    per_point = {rid: float(w) for rid, w in zip(features.region_ids, s)}
    per_cluster = {c: float(s[labels == c].mean()) for c in range(solution.k)}
    average = float(np.mean(s))
    return SilhouetteReport(
        per_point=per_point,
        per_cluster=per_cluster,
        average=average,
        band=quality_band(average),
        a_values={rid: float(v) for rid, v in zip(features.region_ids, a)},
        b_values={rid: float(v) for rid, v in zip(features.region_ids, b)},
    )


def select_k(
    features: FeatureMatrix,
    k_range: Iterable[int],
    base_seed: int,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
    domain: str = "",
) -> SelectionResult:
    """Sweep k over ``k_range`` and keep the argmax average width (ties to smaller k)."""
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("k_range must be nonempty")
    if ks[0] < 2:
        raise ValueError("k_range minimum must be at least 2")
    if ks[-1] > features.n - 1:
        raise ValueError(f"k_range maximum {ks[-1]} exceeds n-1 = {features.n - 1}")

    sweep: dict[int, tuple[float, ClusteringSolution]] = {}
    chosen_k = None
    best_width = -np.inf
    for k in ks:
        solution = kmeans_restarts(features, k, base_seed, restarts, max_iter)
        report = silhouette_report(features, solution)
        sweep[k] = (report.average, solution)
        if report.average > best_width:
            best_width = report.average
            chosen_k = k
    return SelectionResult(domain=domain, sweep=sweep, chosen_k=chosen_k, rationale=quality_band(best_width))
