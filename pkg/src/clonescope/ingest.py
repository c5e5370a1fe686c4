"""Project scanning: classify files into source units, asset units, and exclusions."""

import enum
import os
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Optional

from .errors import ManifestError, ScanError

DEFAULT_MAX_FILE_BYTES = 8 * 1024 * 1024

VCS_DIRS = {".git", ".svn", ".hg"}


class FileCategory(enum.Enum):
    SCENE = "Scene"
    TEMPLATE = "Template"
    MATERIAL = "Material"
    CONFIG = "Config"
    RESOURCE = "Resource"
    META = "Meta"
    SOURCE = "Source"
    UNKNOWN = "Unknown"


class Language(enum.Enum):
    CSHARP = "CSharp"
    C = "C"
    PYTHON = "Python"
    JAVA = "Java"
    OTHER = "Other"


# Extension tables. Classification is a pure function of the lowercase
# final extension; resource and .meta files are excluded downstream.
_CATEGORY_BY_EXT = {
    ".unity": FileCategory.SCENE,
    ".scene": FileCategory.SCENE,
    ".navmesh": FileCategory.SCENE,
    ".prefab": FileCategory.TEMPLATE,
    ".mat": FileCategory.MATERIAL,
    ".shader": FileCategory.MATERIAL,
    ".cginc": FileCategory.MATERIAL,
    ".json": FileCategory.CONFIG,
    ".ini": FileCategory.CONFIG,
    ".fbx": FileCategory.RESOURCE,
    ".wav": FileCategory.RESOURCE,
    ".png": FileCategory.RESOURCE,
    ".meta": FileCategory.META,
}

_LANGUAGE_BY_EXT = {
    ".cs": Language.CSHARP,
    ".c": Language.C,
    ".h": Language.C,
    ".py": Language.PYTHON,
    ".java": Language.JAVA,
}

# Asset categories admitted as AssetUnit.
ASSET_CATEGORIES = frozenset(
    {FileCategory.SCENE, FileCategory.TEMPLATE, FileCategory.MATERIAL, FileCategory.CONFIG}
)


@dataclass(frozen=True)
class SourceUnit:
    rel_path: str
    language: Language
    content: str


@dataclass(frozen=True)
class AssetUnit:
    rel_path: str
    category: FileCategory
    content: str


@dataclass(frozen=True)
class ManifestEntry:
    project_id: str
    root_path: str
    version_label: Optional[str] = None


@dataclass
class ProjectSnapshot:
    project_id: str
    root_path: str
    source_units: list = field(default_factory=list)
    asset_units: list = field(default_factory=list)
    excluded_count: int = 0
    warnings: list = field(default_factory=list)

    @property
    def files_scanned(self):
        return len(self.source_units) + len(self.asset_units) + self.excluded_count


def classify_file(rel_path) -> FileCategory:
    """Map a path to its file category based only on the lowercase final extension."""
    ext = PurePosixPath(str(rel_path).replace(os.sep, "/")).suffix.lower()
    if not ext:
        return FileCategory.UNKNOWN
    if ext in _LANGUAGE_BY_EXT:
        return FileCategory.SOURCE
    return _CATEGORY_BY_EXT.get(ext, FileCategory.UNKNOWN)


def language_of(rel_path) -> Language:
    ext = PurePosixPath(str(rel_path).replace(os.sep, "/")).suffix.lower()
    return _LANGUAGE_BY_EXT.get(ext, Language.OTHER)


def _read_text(path: Path, warnings: list, rel: str) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        warnings.append(f"{rel}: invalid UTF-8, decoded with replacement characters")
        return data.decode("utf-8", errors="replace")


def scan_project(root, project_id=None, max_file_bytes=DEFAULT_MAX_FILE_BYTES) -> ProjectSnapshot:
    """Scan a project directory into an immutable snapshot.

    Symlinks are not followed, VCS directories are skipped, and the result is
    deterministic: units are sorted by relative path.
    """
    root = Path(root)
    if not root.is_dir():
        raise ScanError(f"not a readable directory: {root}")
    if project_id is None:
        project_id = root.name or str(root)

    snapshot = ProjectSnapshot(project_id=project_id, root_path=str(root))
    paths = []
    for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
        dirnames[:] = sorted(d for d in dirnames if d not in VCS_DIRS)
        for name in filenames:
            full = Path(dirpath) / name
            if full.is_symlink():
                continue
            rel = full.relative_to(root).as_posix()
            paths.append((rel, full))
    paths.sort()

    for rel, full in paths:
        category = classify_file(rel)
        if category in (FileCategory.RESOURCE, FileCategory.META, FileCategory.UNKNOWN):
            snapshot.excluded_count += 1
            continue
        try:
            size = full.stat().st_size
            if size > max_file_bytes:
                snapshot.warnings.append(
                    f"{rel}: {size} bytes exceeds cap of {max_file_bytes}, excluded"
                )
                snapshot.excluded_count += 1
                continue
            content = _read_text(full, snapshot.warnings, rel)
        except OSError as exc:
            snapshot.warnings.append(f"{rel}: unreadable ({exc}), excluded")
            snapshot.excluded_count += 1
            continue
        if category is FileCategory.SOURCE:
            snapshot.source_units.append(SourceUnit(rel, language_of(rel), content))
        else:
            snapshot.asset_units.append(AssetUnit(rel, category, content))
    return snapshot


def load_corpus_manifest(manifest) -> list:
    """Parse a corpus manifest: `project_id root_path [version_label]` per line.

    Blank lines and `#` comments are skipped; entries come back in file order.
    """
    entries = []
    text = Path(manifest).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) == 2:
            entries.append(ManifestEntry(fields[0], fields[1]))
        elif len(fields) == 3:
            entries.append(ManifestEntry(fields[0], fields[1], fields[2]))
        else:
            raise ManifestError(
                f"expected 2 or 3 whitespace-separated fields, got {len(fields)}", lineno
            )
    return entries
