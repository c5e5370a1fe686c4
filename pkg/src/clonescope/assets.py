"""Serialized asset file parsing and similarity scoring.

Unity-style multi-document YAML, JSON and INI files are flattened into
multisets of `key.path=value` entries with volatile identity keys (guid,
fileID, ...) removed. The deterministic structural backend scores pairs with
a Dice coefficient over those multisets.
"""

import configparser
import enum
import io
import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import yaml

from .errors import UndefinedMetricError
from .ingest import AssetUnit, FileCategory

DEFAULT_CLONE_THRESHOLD = 0.80
DEFAULT_VOLATILE_KEYS = frozenset({"guid", "fileid"})

_UNITY_DOC_HEADER = re.compile(r"^---\s*!u!\d+\s*&\S+(\s+stripped)?\s*$")
_VOLATILE_INLINE = re.compile(
    r"\b(guid|fileID)\s*:\s*[^,}\s]+", flags=re.IGNORECASE
)


class BackendKind(enum.Enum):
    STRUCTURAL = "structural"
    LLM = "llm"


@dataclass(frozen=True)
class AssetDocument:
    unit_path: str
    category: FileCategory
    normalized_entries: Counter
    raw_line_count: int
    parse_warning: Optional[str] = None


@dataclass(frozen=True)
class SimilarityRecord:
    a: str
    b: str
    score: float
    backend: BackendKind
    cached: bool = False

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("a record needs two distinct files")
        if self.a > self.b:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)


@dataclass
class BackendConfig:
    kind: BackendKind = BackendKind.STRUCTURAL
    clone_threshold: float = DEFAULT_CLONE_THRESHOLD
    endpoint: Optional[str] = None
    api_key: Optional[str] = None
    model_name: Optional[str] = None
    cache_dir: Optional[str] = None
    max_concurrent_requests: int = 4
    max_pair_chars: int = 200_000
    ordered_pair_sum: bool = False

    def __post_init__(self):
        if isinstance(self.kind, str):
            self.kind = BackendKind(self.kind.lower())
        if not 0.0 < self.clone_threshold <= 1.0:
            raise ValueError("clone threshold must be in (0, 1]")


def _flatten(value, prefix, entries, volatile):
    if isinstance(value, dict):
        for key, sub in value.items():
            key = str(key)
            if key.lower() in volatile:
                continue
            _flatten(sub, f"{prefix}.{key}" if prefix else key, entries, volatile)
    elif isinstance(value, (list, tuple)):
        for idx, sub in enumerate(value):
            _flatten(sub, f"{prefix}.{idx}" if prefix else str(idx), entries, volatile)
    else:
        entries[f"{prefix}={value}"] += 1


def _parse_unity_yaml(content, volatile):
    # Rewrite `--- !u!<class> &<fileID>` document headers to plain separators:
    # the anchor is a volatile object id and the custom tag trips safe_load.
    lines = []
    for line in content.split("\n"):
        if line.startswith("%"):
            continue
        if _UNITY_DOC_HEADER.match(line):
            lines.append("---")
        else:
            lines.append(line)
    entries = Counter()
    for doc in yaml.safe_load_all("\n".join(lines)):
        if doc is None:
            continue
        if not isinstance(doc, (dict, list)):
            # whole-document scalar: not a serialized structure (e.g. shader code)
            raise ValueError("document is not a mapping or sequence")
        _flatten(doc, "", entries, volatile)
    return entries


def _line_level_entries(content):
    entries = Counter()
    for line in content.split("\n"):
        line = _VOLATILE_INLINE.sub("", line).strip()
        if line:
            entries[line] += 1
    return entries


def parse_asset(unit: AssetUnit, volatile_keys=DEFAULT_VOLATILE_KEYS) -> AssetDocument:
    """Parse one asset unit into a normalized entry multiset.

    Broken files degrade to line-level entries with a parse warning; they are
    never dropped.
    """
    volatile = frozenset(k.lower() for k in volatile_keys)
    raw_line_count = len(unit.content.split("\n")) if unit.content else 0
    warning = None
    try:
        ext = unit.rel_path.lower().rsplit(".", 1)[-1] if "." in unit.rel_path else ""
        if ext == "json":
            entries = Counter()
            if unit.content.strip():
                _flatten(json.loads(unit.content), "", entries, volatile)
        elif ext == "ini":
            parser = configparser.ConfigParser(interpolation=None, strict=False)
            parser.read_file(io.StringIO(unit.content))
            entries = Counter()
            for section in parser.sections():
                for key, value in parser.items(section):
                    if key.lower() in volatile:
                        continue
                    entries[f"{section}.{key}={value}"] += 1
        else:
            entries = _parse_unity_yaml(unit.content, volatile)
    except Exception as exc:  # noqa: BLE001 - degrade, never crash on bad assets
        warning = f"{unit.rel_path}: parse failed ({exc}), using line-level entries"
        entries = _line_level_entries(unit.content)
    return AssetDocument(unit.rel_path, unit.category, entries, raw_line_count, warning)


def structural_similarity(a: AssetDocument, b: AssetDocument) -> float:
    """Dice coefficient over normalized entry multisets: 2|a∩b| / (|a|+|b|)."""
    if a.category is not b.category:
        raise ValueError(
            f"cross-category similarity is undefined: {a.category.value} vs {b.category.value}"
        )
    size_a = sum(a.normalized_entries.values())
    size_b = sum(b.normalized_entries.values())
    if size_a + size_b == 0:
        return 1.0
    shared = sum((a.normalized_entries & b.normalized_entries).values())
    return 2.0 * shared / (size_a + size_b)


def iter_pair_universe(docs):
    """Same-category unordered pairs, ordered by path."""
    docs = sorted(docs, key=lambda d: d.unit_path)
    for a, b in itertools.combinations(docs, 2):
        if a.category is b.category:
            yield a, b


def detect_clone_files(docs, cfg: BackendConfig, scorer=None, units_by_path=None):
    """Score all same-category pairs; a file is a clone file when some pair
    it participates in scores strictly above the clone threshold.

    Returns (clone_files, records). `scorer` defaults to the structural
    backend; an LLM scorer from clonescope.llm can be passed instead (it
    needs the raw units, supplied via units_by_path).
    """
    records = []
    for a, b in iter_pair_universe(docs):
        if scorer is None:
            score = structural_similarity(a, b)
            records.append(SimilarityRecord(a.unit_path, b.unit_path, score, cfg.kind))
        else:
            records.append(scorer(a, b))
    clone_files = set()
    for record in records:
        if record.score > cfg.clone_threshold:
            clone_files.add(record.a)
            clone_files.add(record.b)
    return clone_files, records


def clone_pairs_over_threshold(records, clone_threshold):
    return [r for r in records if r.score > clone_threshold]


def cluster_clone_groups(records, clone_threshold, mode="components"):
    """Cluster clone-pair records (score strictly above threshold) into groups."""
    from .cluster import cluster_pairs

    return cluster_pairs(clone_pairs_over_threshold(records, clone_threshold), mode)


def group_size_buckets(groups) -> dict:
    """Group-size histogram with the reporting buckets {2, [3,10], >10}."""
    buckets = {"2": 0, "[3,10]": 0, ">10": 0}
    for g in groups:
        size = len(g)
        if size == 2:
            buckets["2"] += 1
        elif size <= 10:
            buckets["[3,10]"] += 1
        else:
            buckets[">10"] += 1
    return buckets


def clone_index(records, total_files, ordered_pair_sum=False) -> float:
    """Sum of pairwise similarities divided by the number of asset files.

    Each unordered pair is summed once by default; the ordered convention
    (each pair counted both ways) doubles the sum.
    """
    if total_files == 0:
        raise UndefinedMetricError("clone index undefined for zero asset files")
    total = sum(r.score for r in records)
    if ordered_pair_sum:
        total *= 2
    return total / total_files
