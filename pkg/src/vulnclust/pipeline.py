"""End-to-end batch runs and their persisted, content-addressed artifacts.

A run parses and validates the inputs, imputes and excludes, then per domain:
log-transforms the proportions, sweeps K by silhouette, orders the chosen
clusters, and emits profiles, comparison metrics and (optionally) a labelled
GeoJSON. Everything lands in one artifact directory named by the content hash
of inputs plus config, so re-running changed inputs can never silently
overwrite an earlier analysis. Identical inputs reproduce a byte-identical
artifact except for the ``created_at`` field in config.json.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

from .clustering import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    log_features,
)
from .impute import ImputationReport, impute_dataset
from .ingest import (
    DOMAINS,
    Dataset,
    ValidationWarning,
    parse_adjacency,
    parse_dataset,
    validate,
)
from .profiles import (
    ClusterProfile,
    ComparisonRow,
    OrderedClustering,
    SummaryRow,
    cluster_profile,
    comparison_table,
    comparison_to_csv,
    cross_domain_summary,
    order_clusters,
    profiles_to_csv,
)
from .validation import SelectionResult, SilhouetteReport, select_k, silhouette_report

SCHEMA_VERSION = "1"

DEFAULT_K_MIN = 3
DEFAULT_K_MAX = 12
DEFAULT_SEED = 42


class ConfigError(ValueError):
    pass


class PipelineError(RuntimeError):
    """Wraps a failure with the pipeline stage it happened in."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r}: {cause}")


@dataclass(frozen=True)
class PipelineConfig:
    domains: tuple[str, ...] = DOMAINS
    epsilon: float = DEFAULT_EPSILON
    k_min: int = DEFAULT_K_MIN
    k_max: int = DEFAULT_K_MAX
    restarts: int = DEFAULT_RESTARTS
    seed: int = DEFAULT_SEED
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(self.domains))
        if not self.domains:
            raise ConfigError("domain list must not be empty")
        unknown = [d for d in self.domains if d not in DOMAINS]
        if unknown:
            raise ConfigError(f"unknown domains: {unknown}")
        if len(set(self.domains)) != len(self.domains):
            raise ConfigError("domain list contains duplicates")
        if self.epsilon <= 0:
            raise ConfigError("epsilon must be positive")
        if self.k_min < 2:
            raise ConfigError("k-min must be at least 2")
        if self.k_min > self.k_max:
            raise ConfigError(f"empty k range: k-min {self.k_min} > k-max {self.k_max}")
        if self.restarts < 1:
            raise ConfigError("restarts must be at least 1")
        if self.max_iter < 1:
            raise ConfigError("max-iter must be at least 1")

    def to_json(self) -> dict:
        return {
            "domains": list(self.domains),
            "epsilon": self.epsilon,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "restarts": self.restarts,
            "seed": self.seed,
            "max_iter": self.max_iter,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PipelineConfig":
        return cls(
            domains=tuple(data["domains"]),
            epsilon=data["epsilon"],
            k_min=data["k_min"],
            k_max=data["k_max"],
            restarts=data["restarts"],
            seed=data["seed"],
            max_iter=data["max_iter"],
        )


@dataclass(frozen=True)
class DomainResult:
    domain: str
    selection: SelectionResult
    ordered: OrderedClustering
    profiles: list[ClusterProfile]
    comparison: list[ComparisonRow]
    silhouette: SilhouetteReport
    geojson: dict | None


@dataclass(frozen=True)
class RunArtifact:
    run_id: str
    created_at: str
    sources: Mapping[str, str | None]
    config: PipelineConfig
    warnings: list[ValidationWarning]
    imputation: ImputationReport
    dataset: Dataset = field(repr=False)
    domains: Mapping[str, DomainResult] = field(default_factory=dict)
    summary: list[SummaryRow] = field(default_factory=list)


def compute_run_id(
    config: PipelineConfig,
    data_bytes: bytes,
    adjacency_bytes: bytes,
    geojson_bytes: bytes | None,
) -> str:
    digest = hashlib.sha256()
    for chunk in (
        json.dumps(config.to_json(), sort_keys=True).encode(),
        data_bytes,
        adjacency_bytes,
        geojson_bytes or b"",
    ):
        digest.update(len(chunk).to_bytes(8, "big"))
        digest.update(chunk)
    return digest.hexdigest()[:16]


def _inject_labels(
    geojson: dict, dataset: Dataset, ordered: OrderedClustering, domain: str
) -> dict:
    """Per-domain FeatureCollection: keep features with a clustered id and
    attach cluster_label, domain_value and name properties."""
    label_by_id = {
        rid: ordered.labels[idx] for rid, idx in ordered.solution.assignments.items()
    }
    features = []
    for feature in geojson.get("features", []):
        rid = (feature.get("properties") or {}).get("id")
        if rid not in label_by_id:
            continue
        region = dataset.by_id[rid]
        props = dict(feature.get("properties") or {})
        props["cluster_label"] = label_by_id[rid]
        props["domain_value"] = region.domain_props[domain]
        props["name"] = region.name
        features.append({**feature, "properties": props})
    return {"type": "FeatureCollection", "features": features}


def build_artifact(
    data_bytes: bytes,
    adjacency_bytes: bytes,
    config: PipelineConfig,
    geojson_bytes: bytes | None = None,
    sources: Mapping[str, str | None] | None = None,
) -> RunArtifact:
    """Run the whole pipeline in memory; see :func:`run_pipeline` for file paths."""
    sources = dict(sources or {"data": "<memory>", "adjacency": "<memory>", "geojson": None})
    run_id = compute_run_id(config, data_bytes, adjacency_bytes, geojson_bytes)

    def stage(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception as exc:
            raise PipelineError(name, exc) from exc

    table = stage("parse", parse_dataset, data_bytes, sources.get("data") or "<memory>")
    dataset = stage(
        "adjacency", parse_adjacency, adjacency_bytes, table, sources.get("adjacency") or "<memory>"
    )
    warnings = stage("validate", validate, dataset)
    dataset, imputation = stage("impute", impute_dataset, dataset)

    geojson = json.loads(geojson_bytes) if geojson_bytes is not None else None

    domain_results: dict[str, DomainResult] = {}
    for domain in config.domains:
        features = stage(
            f"features:{domain}",
            log_features,
            dataset.ids,
            [r.domain_props[domain] for r in dataset.regions],
            config.epsilon,
        )
        selection = stage(
            f"select_k:{domain}",
            select_k,
            features,
            range(config.k_min, config.k_max + 1),
            config.seed,
            config.restarts,
            config.max_iter,
            domain,
        )
        solution = selection.sweep[selection.chosen_k][1]
        ordered = stage(f"order:{domain}", order_clusters, solution, config.epsilon)
        silhouette = stage(f"silhouette:{domain}", silhouette_report, features, solution)
        profiles = stage(f"profile:{domain}", cluster_profile, ordered, dataset, domain, config.epsilon)
        comparison = stage(f"compare:{domain}", comparison_table, profiles)
        domain_geojson = (
            stage(f"geojson:{domain}", _inject_labels, geojson, dataset, ordered, domain)
            if geojson is not None
            else None
        )
        domain_results[domain] = DomainResult(
            domain, selection, ordered, profiles, comparison, silhouette, domain_geojson
        )

    summary = cross_domain_summary(
        {d: (r.ordered, r.profiles) for d, r in domain_results.items()}
    )
    return RunArtifact(
        run_id=run_id,
        created_at=datetime.now(timezone.utc).isoformat(),
        sources=sources,
        config=config,
        warnings=warnings,
        imputation=imputation,
        dataset=dataset,
        domains=domain_results,
        summary=summary,
    )


def run_pipeline(
    data_path: str | Path,
    adjacency_path: str | Path,
    config: PipelineConfig,
    geojson_path: str | Path | None = None,
) -> RunArtifact:
    data_path = Path(data_path)
    adjacency_path = Path(adjacency_path)
    geojson_bytes = Path(geojson_path).read_bytes() if geojson_path else None
    return build_artifact(
        data_path.read_bytes(),
        adjacency_path.read_bytes(),
        config,
        geojson_bytes,
        sources={
            "data": data_path.name,
            "adjacency": adjacency_path.name,
            "geojson": Path(geojson_path).name if geojson_path else None,
        },
    )


def _dump(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def write_artifact(artifact: RunArtifact, store_dir: str | Path) -> Path:
    """Persist one run as {store}/{run_id}/...; returns the run directory."""
    run_dir = Path(store_dir) / artifact.run_id
    run_dir.mkdir(parents=True, exist_ok=True)

    _dump(
        run_dir / "config.json",
        {
            "schema_version": SCHEMA_VERSION,
            "run_id": artifact.run_id,
            "created_at": artifact.created_at,
            "sources": dict(artifact.sources),
            "config": artifact.config.to_json(),
            "warnings": [w.to_json() for w in artifact.warnings],
        },
    )
    _dump(
        run_dir / "imputation.json",
        {"schema_version": SCHEMA_VERSION, **artifact.imputation.to_json()},
    )
    _dump(
        run_dir / "summary.json",
        {
            "schema_version": SCHEMA_VERSION,
            "domains": list(artifact.domains),
            "rows": [row.to_json() for row in artifact.summary],
        },
    )

    for domain, result in artifact.domains.items():
        domain_dir = run_dir / domain
        domain_dir.mkdir(exist_ok=True)
        _dump(
            domain_dir / "selection.json",
            {
                "schema_version": SCHEMA_VERSION,
                "domain": domain,
                "chosen_k": result.selection.chosen_k,
                "rationale": result.selection.rationale.value,
                "sweep": [
                    {"k": k, "average_width": width, "solution": solution.to_json()}
                    for k, (width, solution) in sorted(result.selection.sweep.items())
                ],
            },
        )
        _dump(
            domain_dir / "clusters.json",
            {
                "schema_version": SCHEMA_VERSION,
                "domain": domain,
                "epsilon": artifact.config.epsilon,
                "k": result.selection.chosen_k,
                "clusters": [
                    {
                        **profile.to_json(),
                        "members": [
                            _member_record(artifact.dataset, rid, domain)
                            for rid in profile.member_ids
                        ],
                    }
                    for profile in result.profiles
                ],
            },
        )
        _dump(
            domain_dir / "comparison.json",
            {
                "schema_version": SCHEMA_VERSION,
                "domain": domain,
                "rows": [row.to_json() for row in result.comparison],
            },
        )
        _dump(
            domain_dir / "silhouette.json",
            {"schema_version": SCHEMA_VERSION, "domain": domain, **result.silhouette.to_json()},
        )
        if result.geojson is not None:
            _dump(domain_dir / "regions.geojson", result.geojson)
    return run_dir


def _member_record(dataset: Dataset, region_id: str, domain: str) -> dict:
    region = dataset.by_id[region_id]
    return {
        "id": region.id,
        "name": region.name,
        "domain_value": region.domain_props[domain],
        "australia": region.demo_props["australia"],
        "english": region.demo_props["english"],
        "indigenous": region.demo_props["indigenous"],
        "preschool": region.demo_props["preschool"],
        "irsd": region.irsd,
        "remoteness": region.remoteness.value,
    }


def load_run_json(run_dir: str | Path) -> dict:
    """Assemble every JSON file of a stored run into one document."""
    run_dir = Path(run_dir)
    doc = {
        "config": json.loads((run_dir / "config.json").read_text()),
        "imputation": json.loads((run_dir / "imputation.json").read_text()),
        "summary": json.loads((run_dir / "summary.json").read_text()),
        "domains": {},
    }
    for domain_dir in sorted(p for p in run_dir.iterdir() if p.is_dir() and p.name != "export"):
        entry = {}
        for name in ("selection", "clusters", "comparison", "silhouette"):
            entry[name] = json.loads((domain_dir / f"{name}.json").read_text())
        geo = domain_dir / "regions.geojson"
        if geo.exists():
            entry["geojson"] = json.loads(geo.read_text())
        doc["domains"][domain_dir.name] = entry
    return doc


def export_run(run_dir: str | Path, fmt: str) -> list[Path]:
    """Offline export of a stored run: per-domain CSV tables, or one JSON file."""
    run_dir = Path(run_dir)
    out_dir = run_dir / "export"
    out_dir.mkdir(exist_ok=True)
    written: list[Path] = []
    if fmt == "json":
        path = out_dir / "run.json"
        path.write_text(json.dumps(load_run_json(run_dir), sort_keys=True, indent=2) + "\n")
        return [path]
    if fmt != "csv":
        raise ConfigError(f"unknown export format {fmt!r}")

    doc = load_run_json(run_dir)
    for domain, entry in doc["domains"].items():
        profiles = [_profile_from_json(c) for c in entry["clusters"]["clusters"]]
        path = out_dir / f"{domain}_profiles.csv"
        path.write_text(profiles_to_csv(profiles))
        written.append(path)
        rows = [
            ComparisonRow(r["metric"], dict(r["values"])) for r in entry["comparison"]["rows"]
        ]
        path = out_dir / f"{domain}_comparison.csv"
        path.write_text(comparison_to_csv(rows))
        written.append(path)
    return written


def _profile_from_json(data: Mapping) -> ClusterProfile:
    return ClusterProfile(
        label=data["label"],
        n=data["n"],
        domain=data["domain"],
        domain_mean=data["domain_mean"],
        domain_range=tuple(data["domain_range"]),
        centroid=data["centroid"],
        demographics={
            field: (entry["mean"], tuple(entry["range"]))
            for field, entry in data["demographics"].items()
        },
        remoteness_dist=dict(data["remoteness_dist"]),
        irsd_dist={int(d): share for d, share in data["irsd_dist"].items()},
        member_ids=tuple(data["member_ids"]),
    )
