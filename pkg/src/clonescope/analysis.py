"""Derived analyses: cross-version clone evolution, third-party library
attribution, and the per-asset-category clone index breakdown."""

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .cluster import cluster_pairs
from .detect import detect_clone_pairs
from .errors import ClonescopeError, ManifestError
from .extract import extract_functions
from .metrics import SourceCloneMetrics, compute_source_metrics
from .normalize import normalize_fragment


def _project_fragments(snapshot, config, warnings=None, id_prefix=""):
    fragments = []
    for unit in snapshot.source_units:
        for frag in extract_functions(
            unit, min_lines=config.min_lines, max_lines=config.max_lines, warnings=warnings
        ):
            fragments.append((id_prefix + frag.id, frag))
    normalized = []
    for fid, frag in fragments:
        norm = normalize_fragment(frag, config.renaming)
        normalized.append(
            type(norm)(fragment_id=fid, lines=norm.lines, renaming=norm.renaming)
        )
    return normalized


@dataclass(frozen=True)
class VersionPairReport:
    project_id: str
    version_a: str
    version_b: str
    cross_metrics: SourceCloneMetrics
    per_version_metrics: tuple
    intra_a_pairs: int
    intra_b_pairs: int
    cross_pairs: int
    cross_exact_pairs: int


def inter_version_clones(snap_a, snap_b, config, label_a=None, label_b=None) -> VersionPairReport:
    """Pool fragments from two versions of one project and classify pairs as
    intra-version or cross-version by provenance."""
    label_a = label_a or getattr(snap_a, "version_label", None) or "a"
    label_b = label_b or getattr(snap_b, "version_label", None) or "b"
    if snap_a.project_id != snap_b.project_id:
        raise ClonescopeError("version snapshots must share a project_id")
    if label_a == label_b:
        raise ClonescopeError("version labels must differ")

    frags_a = _project_fragments(snap_a, config, id_prefix=f"{label_a}::")
    frags_b = _project_fragments(snap_b, config, id_prefix=f"{label_b}::")
    merged = frags_a + frags_b
    pairs = detect_clone_pairs(merged, config)

    def origin(fragment_id):
        return fragment_id.split("::", 1)[0]

    intra_a = intra_b = cross = cross_exact = 0
    for p in pairs:
        oa, ob = origin(p.a), origin(p.b)
        if oa == ob == label_a:
            intra_a += 1
        elif oa == ob == label_b:
            intra_b += 1
        else:
            cross += 1
            if p.similarity == 1.0:
                cross_exact += 1

    total = len(frags_a) + len(frags_b)
    classes = cluster_pairs(pairs)
    cross_metrics = compute_source_metrics(classes, pairs, max(total, 1),
                                           clone_type=config.clone_type.value)

    per_version = []
    for frags, count in ((frags_a, len(frags_a)), (frags_b, len(frags_b))):
        vpairs = detect_clone_pairs(frags, config)
        vclasses = cluster_pairs(vpairs)
        per_version.append(
            compute_source_metrics(vclasses, vpairs, max(count, 1),
                                   clone_type=config.clone_type.value)
        )

    return VersionPairReport(
        project_id=snap_a.project_id,
        version_a=label_a,
        version_b=label_b,
        cross_metrics=cross_metrics,
        per_version_metrics=tuple(per_version),
        intra_a_pairs=intra_a,
        intra_b_pairs=intra_b,
        cross_pairs=cross,
        cross_exact_pairs=cross_exact,
    )


@dataclass(frozen=True)
class LibraryRegistryEntry:
    name: str
    key_file: str
    prefix: str


@dataclass(frozen=True)
class LibraryAttribution:
    library_name: str
    detected: bool
    key_file: str
    lib_ncf: int
    lib_ncc: int
    share_ncf: Optional[Fraction]
    share_ncc: Optional[Fraction]


def load_library_registry(path=None) -> list:
    """Load the key-file registry: `name key_file_relpath library_prefix` rows."""
    if path is None:
        text = (
            resources.files("clonescope.data")
            .joinpath("third_party_libraries.txt")
            .read_text(encoding="utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ManifestError("expected `name key_file prefix`", lineno)
        entries.append(LibraryRegistryEntry(*fields))
    return entries


def attribute_third_party(snapshot, pairs, classes, registry=None) -> list:
    """Attribute clone pairs and classes to vendored third-party libraries.

    A library is detected when its key file exists in the snapshot. A clone
    function counts for the library when it participates in a pair whose both
    endpoints sit under the library prefix; a clone class counts when all
    members do. Straddling clones are attributed to nothing.
    """
    if registry is None:
        registry = load_library_registry()
    present = {u.rel_path for u in snapshot.source_units} | {
        u.rel_path for u in snapshot.asset_units
    }
    project_ncf_members = set()
    for p in pairs:
        project_ncf_members.add(p.a)
        project_ncf_members.add(p.b)
    project_ncf = len(project_ncf_members)
    project_ncc = len(classes)

    def frag_path(fragment_id):
        # fragment ids are `path:start-end`, optionally `version::path:start-end`
        tail = fragment_id.split("::", 1)[-1]
        return tail.rsplit(":", 1)[0]

    results = []
    for entry in registry:
        detected = entry.key_file in present
        lib_members = set()
        lib_ncc = 0
        if detected:
            for p in pairs:
                if frag_path(p.a).startswith(entry.prefix) and frag_path(p.b).startswith(
                    entry.prefix
                ):
                    lib_members.add(p.a)
                    lib_members.add(p.b)
            for c in classes:
                if all(frag_path(m).startswith(entry.prefix) for m in c.members):
                    lib_ncc += 1
        lib_ncf = len(lib_members)
        results.append(
            LibraryAttribution(
                library_name=entry.name,
                detected=detected,
                key_file=entry.key_file,
                lib_ncf=lib_ncf,
                lib_ncc=lib_ncc,
                share_ncf=Fraction(lib_ncf, project_ncf) if project_ncf else None,
                share_ncc=Fraction(lib_ncc, project_ncc) if project_ncc else None,
            )
        )
    return results


@dataclass(frozen=True)
class CategoryEntry:
    file_count: int
    ci: float
    nca: int
    ncg: int
    degenerate: bool


@dataclass(frozen=True)
class CategoryBreakdown:
    per_category: dict  # FileCategory -> CategoryEntry

    @property
    def total_files(self):
        return sum(e.file_count for e in self.per_category.values())


def per_category_clone_index(docs, records, clone_threshold=0.8,
                             clustering_mode="components") -> CategoryBreakdown:
    """Clone index, clone-file and clone-group counts per asset category.

    Categories with fewer than two files cannot form pairs; they report
    CI = 0 with a degenerate flag.
    """
    from .assets import clone_index, cluster_clone_groups

    docs_by_category = {}
    for d in docs:
        docs_by_category.setdefault(d.category, []).append(d)
    paths_by_category = {
        cat: {d.unit_path for d in ds} for cat, ds in docs_by_category.items()
    }

    breakdown = {}
    for category, members in sorted(docs_by_category.items(), key=lambda kv: kv[0].value):
        count = len(members)
        cat_paths = paths_by_category[category]
        cat_records = [r for r in records if r.a in cat_paths and r.b in cat_paths]
        if count < 2:
            breakdown[category] = CategoryEntry(count, 0.0, 0, 0, degenerate=True)
            continue
        clone_files = set()
        for r in cat_records:
            if r.score > clone_threshold:
                clone_files.add(r.a)
                clone_files.add(r.b)
        groups = cluster_clone_groups(cat_records, clone_threshold, clustering_mode)
        breakdown[category] = CategoryEntry(
            file_count=count,
            ci=clone_index(cat_records, count),
            nca=len(clone_files),
            ncg=len(groups),
            degenerate=False,
        )
    return CategoryBreakdown(per_category=breakdown)
