"""Lloyd's k-means over per-region feature vectors, with seeded restarts.

Vulnerability proportions are clustered on the log scale: skewed proportions
are mapped through ``ln(p + eps)`` and mapped back with ``exp(x) - eps`` for
reporting. The k-means loop follows the classic five steps: seed centroids by
sampling k distinct data points, assign points to the nearest centroid by
Euclidean distance, recompute centroids as assigned-point means, and repeat
until the assignments stop changing or ``max_iter`` is hit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

DEFAULT_EPSILON = 1e-3
DEFAULT_RESTARTS = 25
DEFAULT_MAX_ITER = 300

# Allowance for float noise in the objective trace; the exact-arithmetic trace
# is provably non-increasing, including across empty-cluster repairs.
_MONOTONE_SLACK = 1e-12


class NonFiniteInput(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class KTooLarge(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


@dataclass(frozen=True)
class FeatureMatrix:
    """Feature rows aligned with region ids; d=1 in the usual per-domain run."""

    region_ids: tuple[str, ...]
    values: np.ndarray
    transform: str = "raw"  # "raw" | "log"
    epsilon: float | None = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("feature values must be a 2-D matrix")
        if arr.shape[0] != len(self.region_ids):
            raise ValueError("row count does not match region id count")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteInput("feature matrix contains non-finite entries")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "region_ids", tuple(self.region_ids))
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def log_transform(props: Sequence[float] | np.ndarray, epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Map proportions in [0, 1] to ``ln(p + epsilon)``; strictly monotone."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    arr = np.asarray(props, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("proportions contain non-finite values")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("proportions must lie in [0, 1]")
    return np.log(arr + epsilon)


def back_transform(x, epsilon: float = DEFAULT_EPSILON):
    """Inverse of :func:`log_transform`, clamped to [0, 1] against float drift."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    result = np.clip(np.exp(np.asarray(x, dtype=float)) - epsilon, 0.0, 1.0)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(result)
    return result


def log_features(region_ids: Sequence[str], props: Sequence[float], epsilon: float = DEFAULT_EPSILON) -> FeatureMatrix:
    """Build the 1-column log-scale feature matrix for one domain run."""
    return FeatureMatrix(tuple(region_ids), log_transform(props, epsilon), transform="log", epsilon=epsilon)


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float(np.sqrt(np.sum((a - b) ** 2)))


@dataclass(frozen=True)
class ClusteringSolution:
    k: int
    assignments: Mapping[str, int]
    centroids: np.ndarray  # (k, d), transformed scale
    wcss: float
    iterations: int
    seed: int
    converged: bool
    wcss_history: tuple[float, ...] = field(default=(), repr=False)

    def labels_for(self, region_ids: Sequence[str]) -> np.ndarray:
        return np.array([self.assignments[r] for r in region_ids], dtype=int)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "iterations": self.iterations,
            "converged": self.converged,
            "wcss": self.wcss,
            "centroids": self.centroids.tolist(),
            "assignments": dict(self.assignments),
        }


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _repair_empty_clusters(points: np.ndarray, centroids: np.ndarray, assign: np.ndarray, k: int) -> np.ndarray:
    """Move the point farthest from its centroid into each empty cluster.

    Donors must come from clusters with at least two members so the repair
    never creates a new empty cluster. Deterministic: empty clusters are
    handled in index order and distance ties go to the lowest point index.
    """
    counts = np.bincount(assign, minlength=k)
    for j in range(k):
        if counts[j] > 0:
            continue
        to_own = np.sum((points - centroids[assign]) ** 2, axis=1)
        to_own[counts[assign] < 2] = -np.inf
        donor = int(np.argmax(to_own))
        counts[assign[donor]] -= 1
        assign[donor] = j
        counts[j] += 1
    return assign


def kmeans(features: FeatureMatrix, k: int, seed: int, max_iter: int = DEFAULT_MAX_ITER) -> ClusteringSolution:
    """One seeded Lloyd's run; deterministic for fixed (features, k, seed, max_iter)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    points = features.values
    n = points.shape[0]
    if k > n:
        raise KTooLarge(f"k={k} exceeds the {n} data points")
    distinct = np.unique(points, axis=0)
    if k > distinct.shape[0]:
        raise DegenerateInput(f"k={k} exceeds the {distinct.shape[0]} distinct data points")

    rng = np.random.default_rng(seed)
    centroids = distinct[rng.choice(distinct.shape[0], size=k, replace=False)].copy()

    assign = None
    history: list[float] = []
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        new_assign = np.argmin(_squared_distances(points, centroids), axis=1)
        if assign is not None and np.array_equal(new_assign, assign):
            converged = True
            break
        assign = _repair_empty_clusters(points, centroids, new_assign, k)
        centroids = np.stack([points[assign == j].mean(axis=0) for j in range(k)])
        wcss = float(np.sum((points - centroids[assign]) ** 2))
        if history:
            assert wcss <= history[-1] * (1.0 + _MONOTONE_SLACK) + _MONOTONE_SLACK, (
                "k-means objective increased between iterations"
            )
        history.append(wcss)

    assignments = {rid: int(c) for rid, c in zip(features.region_ids, assign)}
    return ClusteringSolution(
        k=k,
        assignments=assignments,
        centroids=centroids,
        wcss=history[-1],
        iterations=iterations,
        seed=seed,
        converged=converged,
        wcss_history=tuple(history),
    )


def kmeans_restarts(
    features: FeatureMatrix,
    k: int,
    base_seed: int,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ClusteringSolution:
    """Best of ``restarts`` runs seeded base_seed, base_seed+1, ...; ties keep the lowest seed."""
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    best = None
    for offset in range(restarts):
        candidate = kmeans(features, k, base_seed + offset, max_iter)
        if best is None or candidate.wcss < best.wcss:
            best = candidate
    return best
