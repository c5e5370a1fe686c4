"""Scikit-learn style estimators wrapping the detection pipeline.

The transformers and detectors here compose with sklearn tooling
(`get_params`/`set_params`/`clone`, Pipeline with transform-only steps) while
delegating the actual work to the functional core modules.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .assets import BackendConfig, detect_clone_files, cluster_clone_groups, parse_asset
from .cluster import cluster_pairs
from .detect import DetectionConfig, detect_clone_pairs
from .extract import extract_functions
from .ingest import AssetUnit, SourceUnit
from .metrics import compute_asset_metrics, compute_source_metrics
from .normalize import normalize_fragment


def _check_sequence(X, item_type, name):
    items = list(X)
    for item in items:
        if not isinstance(item, item_type):
            raise TypeError(f"{name} expects a sequence of {item_type.__name__}, "
                            f"got {type(item).__name__}")
    return items


def _check_fitted(estimator, attribute):
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"This {type(estimator).__name__} instance is not fitted yet."
        )


class FunctionExtractor(TransformerMixin, BaseEstimator):
    """Transform source units into function fragments."""

    def __init__(self, min_lines=10, max_lines=2500):
        self.min_lines = min_lines
        self.max_lines = max_lines

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        units = _check_sequence(X, SourceUnit, "FunctionExtractor")
        self.warnings_ = []
        fragments = []
        for unit in units:
            fragments.extend(
                extract_functions(unit, self.min_lines, self.max_lines, self.warnings_)
            )
        return fragments


class FragmentNormalizer(TransformerMixin, BaseEstimator):
    """Transform function fragments into renamed, pretty-printed line sequences."""

    def __init__(self, renaming="none"):
        self.renaming = renaming

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return [normalize_fragment(frag, self.renaming) for frag in X]


class SourceCloneDetector(BaseEstimator):
    """Detect function-level clones in a list of source units.

    After fit: `fragments_`, `pairs_`, `classes_`, `metrics_`, and `labels_`
    (clone class index per fragment, -1 for unclustered fragments, mirroring
    sklearn clustering estimators).
    """

    def __init__(self, clone_type="t3-2", dissimilarity_threshold=None,
                 clustering="components", min_lines=10, max_lines=2500):
        self.clone_type = clone_type
        self.dissimilarity_threshold = dissimilarity_threshold
        self.clustering = clustering
        self.min_lines = min_lines
        self.max_lines = max_lines

    def _config(self):
        return DetectionConfig(
            clone_type=self.clone_type,
            dissimilarity_threshold=self.dissimilarity_threshold,
            min_lines=self.min_lines,
            max_lines=self.max_lines,
        )

    def fit(self, X, y=None):
        units = _check_sequence(X, SourceUnit, "SourceCloneDetector")
        config = self._config()
        extractor = FunctionExtractor(self.min_lines, self.max_lines)
        raw = extractor.transform(units)
        self.warnings_ = extractor.warnings_
        self.fragments_ = [normalize_fragment(f, config.renaming) for f in raw]
        self.pairs_ = detect_clone_pairs(self.fragments_, config)
        self.classes_ = cluster_pairs(self.pairs_, self.clustering)
        self.metrics_ = (
            compute_source_metrics(
                self.classes_, self.pairs_, len(self.fragments_),
                clone_type=config.clone_type.value,
            )
            if self.fragments_
            else None
        )
        class_of = {}
        for idx, cluster in enumerate(self.classes_):
            for member in cluster.members:
                class_of.setdefault(member, idx)
        self.labels_ = np.array(
            [class_of.get(f.fragment_id, -1) for f in self.fragments_], dtype=int
        )
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    @property
    def n_clone_functions_(self):
        _check_fitted(self, "metrics_")
        return self.metrics_.ncf if self.metrics_ else 0


class AssetCloneDetector(BaseEstimator):
    """Detect serialized-asset file clones in a list of asset units.

    After fit: `documents_`, `records_`, `clone_files_`, `groups_`,
    `metrics_`, and `labels_` (clone group index per document, -1 outside
    any group).
    """

    def __init__(self, clone_threshold=0.8, clustering="components",
                 ordered_pair_sum=False):
        self.clone_threshold = clone_threshold
        self.clustering = clustering
        self.ordered_pair_sum = ordered_pair_sum

    def fit(self, X, y=None):
        units = _check_sequence(X, AssetUnit, "AssetCloneDetector")
        cfg = BackendConfig(clone_threshold=self.clone_threshold,
                            ordered_pair_sum=self.ordered_pair_sum)
        self.documents_ = [parse_asset(u) for u in units]
        self.clone_files_, self.records_ = detect_clone_files(self.documents_, cfg)
        self.groups_ = cluster_clone_groups(
            self.records_, self.clone_threshold, self.clustering
        )
        self.metrics_ = (
            compute_asset_metrics(
                self.groups_, self.clone_files_, self.records_, len(self.documents_),
                ordered_pair_sum=self.ordered_pair_sum,
            )
            if self.documents_
            else None
        )
        group_of = {}
        for idx, group in enumerate(self.groups_):
            for member in group.members:
                group_of.setdefault(member, idx)
        self.labels_ = np.array(
            [group_of.get(d.unit_path, -1) for d in self.documents_], dtype=int
        )
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_
