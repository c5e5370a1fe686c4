"""Clone analysis toolkit for VR-style projects.

Detects function-level source clones (six configurations with identifier
renaming and near-miss thresholds) and serialized-asset file clones
(structural or LLM-backed similarity), and computes the associated metric
suite.
"""

__version__ = "0.1.0"

from .assets import (
    AssetDocument,
    BackendConfig,
    BackendKind,
    SimilarityRecord,
    clone_index,
    cluster_clone_groups,
    detect_clone_files,
    parse_asset,
    structural_similarity,
)
from .cluster import CloneCluster, ClusteringMode, cluster_pairs
from .detect import ClonePair, CloneType, DetectionConfig, detect_clone_pairs
from .errors import ClonescopeError
from .estimators import (
    AssetCloneDetector,
    FragmentNormalizer,
    FunctionExtractor,
    SourceCloneDetector,
)
from .extract import FunctionFragment, extract_functions
from .ingest import (
    AssetUnit,
    FileCategory,
    Language,
    ProjectSnapshot,
    SourceUnit,
    classify_file,
    load_corpus_manifest,
    scan_project,
)
from .metrics import (
    AssetCloneMetrics,
    SizeDistribution,
    SourceCloneMetrics,
    class_size_distribution,
    compute_asset_metrics,
    compute_source_metrics,
    percent,
)
from .normalize import NormalizedFragment, Renaming, normalize_fragment
from .similarity import fragment_similarity, lcs_length

__all__ = [
    "AssetCloneDetector",
    "AssetCloneMetrics",
    "AssetDocument",
    "AssetUnit",
    "BackendConfig",
    "BackendKind",
    "ClonePair",
    "CloneCluster",
    "CloneType",
    "ClonescopeError",
    "ClusteringMode",
    "DetectionConfig",
    "FileCategory",
    "FragmentNormalizer",
    "FunctionExtractor",
    "FunctionFragment",
    "Language",
    "NormalizedFragment",
    "ProjectSnapshot",
    "Renaming",
    "SimilarityRecord",
    "SizeDistribution",
    "SourceCloneDetector",
    "SourceCloneMetrics",
    "SourceUnit",
    "class_size_distribution",
    "classify_file",
    "clone_index",
    "cluster_clone_groups",
    "cluster_pairs",
    "compute_asset_metrics",
    "compute_source_metrics",
    "detect_clone_files",
    "detect_clone_pairs",
    "extract_functions",
    "fragment_similarity",
    "lcs_length",
    "load_corpus_manifest",
    "normalize_fragment",
    "parse_asset",
    "percent",
    "scan_project",
    "structural_similarity",
]
