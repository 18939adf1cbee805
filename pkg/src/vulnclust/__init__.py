"""Cluster small geographic areas by child-development vulnerability.

Pipeline: ingest region CSV + contiguity edges, impute missing values from
neighbours, k-means on log-scale proportions with silhouette-selected K,
vulnerability-ordered cluster profiles, and a read-only HTTP API for the
exploration dashboard.
"""

from .clustering import (
    ClusteringSolution,
    FeatureMatrix,
    back_transform,
    euclidean_distance,
    kmeans,
    kmeans_restarts,
    log_features,
    log_transform,
)
from .impute import (
    ImputationReport,
    exclude_unresolvable,
    impute_categorical,
    impute_dataset,
    impute_numeric,
)
from .ingest import (
    DEMOGRAPHICS,
    DOMAINS,
    AdjacencyGraph,
    Dataset,
    ParseError,
    Region,
    RegionTable,
    Remoteness,
    parse_adjacency,
    parse_dataset,
    validate,
    write_dataset_csv,
)
from .pipeline import (
    PipelineConfig,
    RunArtifact,
    build_artifact,
    run_pipeline,
    write_artifact,
)
from .profiles import (
    ClusterProfile,
    ComparisonRow,
    OrderedClustering,
    cluster_profile,
    comparison_table,
    cross_domain_summary,
    order_clusters,
)
from .validation import (
    Band,
    SelectionResult,
    SilhouetteReport,
    quality_band,
    select_k,
    silhouette_point,
    silhouette_report,
)

__version__ = "0.1.0"
