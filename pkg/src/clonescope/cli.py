"""Command-line front end: scanning, detection, metrics, analyses, reports."""

import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from . import __version__
from .analysis import attribute_third_party
from .assets import BackendConfig, BackendKind, cluster_clone_groups, detect_clone_files, parse_asset
from .cluster import cluster_pairs
from .detect import CloneType, DetectionConfig, detect_clone_pairs
from .errors import ClonescopeError
from .extract import extract_functions
from .ingest import load_corpus_manifest, scan_project
from .metrics import (
    class_size_distribution,
    compute_asset_metrics,
    compute_source_metrics,
)
from .normalize import normalize_fragment
from . import analysis, report as report_mod

DEFAULT_TYPES = "t1,t2,t2c,t3-1,t3-2,t3-2c"


@dataclass
class RunConfig:
    detection_types: tuple = tuple(CloneType)
    dissimilarity_threshold: float = 0.3
    clone_threshold: float = 0.8
    clustering_mode: str = "components"
    backend: BackendConfig = field(default_factory=BackendConfig)
    min_lines: int = 10
    max_lines: int = 2500
    output_format: str = "json"
    output_path: str = "-"
    detect_source: bool = True
    detect_assets: bool = True

    def __post_init__(self):
        if not 0.0 < self.clone_threshold <= 1.0:
            raise ClonescopeError("clone threshold must be in (0, 1]")
        if not 0.0 < self.dissimilarity_threshold <= 1.0:
            raise ClonescopeError("dissimilarity threshold must be in (0, 1]")
        if not (self.detect_source or self.detect_assets):
            raise ClonescopeError("at least one detection target must be enabled")

    def detection_config(self, clone_type) -> DetectionConfig:
        if isinstance(clone_type, str):
            clone_type = CloneType(clone_type.lower())
        dissim = self.dissimilarity_threshold if clone_type in (
            CloneType.T3_1, CloneType.T3_2, CloneType.T3_2C
        ) else 0.0
        return DetectionConfig(clone_type, dissim, self.min_lines, self.max_lines)


def _parse_types(spec_str):
    try:
        return tuple(CloneType(t.strip().lower()) for t in spec_str.split(",") if t.strip())
    except ValueError as exc:
        raise click.UsageError(f"unknown clone type in --types: {exc}")


def load_config_file(path) -> dict:
    """Simple `key = value` configuration, `#` comments allowed."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ClonescopeError(f"{path}:{lineno}: expected `key = value`")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def analyze_source(snapshot, config: RunConfig):
    """Run every configured detection type over one snapshot."""
    warnings = []
    metrics_blocks = []
    by_type = {}
    for clone_type in config.detection_types:
        dconfig = config.detection_config(clone_type)
        normalized = []
        for unit in snapshot.source_units:
            for frag in extract_functions(
                unit, config.min_lines, config.max_lines, warnings
            ):
                normalized.append(normalize_fragment(frag, dconfig.renaming))
        pairs = detect_clone_pairs(normalized, dconfig)
        classes = cluster_pairs(pairs, config.clustering_mode)
        total = len(normalized)
        block = {
            "clone_type": clone_type.value,
            "pairs": len(pairs),
            "size_distribution": report_mod.size_distribution_dict(
                class_size_distribution(classes)
            ),
        }
        if total:
            m = compute_source_metrics(classes, pairs, total, clone_type=clone_type.value)
            block.update(report_mod.source_metrics_dict(m))
        else:
            block.update({
                "ncf": 0, "ncc": 0, "total_functions": 0,
                "rcf": 0.0, "rcc": 0.0, "rcf_percent": "0.00%", "rcc_percent": "0.00%",
            })
        metrics_blocks.append(block)
        by_type[clone_type] = (pairs, classes)
    return metrics_blocks, by_type, warnings


def analyze_assets(snapshot, config: RunConfig, transport=None):
    docs = [parse_asset(u) for u in snapshot.asset_units]
    warnings = [d.parse_warning for d in docs if d.parse_warning]
    cfg = config.backend
    cfg.clone_threshold = config.clone_threshold
    scorer = None
    if cfg.kind is BackendKind.LLM:
        from .llm import LLMSimilarityBackend

        backend = LLMSimilarityBackend(cfg, transport=transport)
        scorer = backend.scorer({u.rel_path: u for u in snapshot.asset_units})
    clone_files, records = detect_clone_files(docs, cfg, scorer=scorer)
    groups = cluster_clone_groups(records, cfg.clone_threshold, config.clustering_mode)
    block = {"clone_files": sorted(clone_files), "pair_count": len(records)}
    if docs:
        m = compute_asset_metrics(
            groups, clone_files, records, len(docs),
            ordered_pair_sum=cfg.ordered_pair_sum,
        )
        block["metrics"] = report_mod.asset_metrics_dict(m)
        breakdown = analysis.per_category_clone_index(
            docs, records, cfg.clone_threshold, config.clustering_mode
        )
        block["category_breakdown"] = report_mod.category_breakdown_dict(breakdown)
    else:
        block["metrics"] = None
        block["category_breakdown"] = {}
    return block, docs, records, warnings


def build_project_report(snapshot, config: RunConfig, registry=None,
                         include_attribution=False, transport=None):
    project = {
        "project_id": snapshot.project_id,
        "files_scanned": snapshot.files_scanned,
        "source_unit_count": len(snapshot.source_units),
        "asset_unit_count": len(snapshot.asset_units),
        "excluded_count": snapshot.excluded_count,
        "warnings": list(snapshot.warnings),
    }
    if config.detect_source:
        blocks, by_type, warnings = analyze_source(snapshot, config)
        project["source_metrics"] = blocks
        project["warnings"].extend(warnings)
        if include_attribution:
            # Attribution follows the strongest detection configuration present.
            attribution_type = config.detection_types[-1]
            pairs, classes = by_type[attribution_type]
            attributions = attribute_third_party(snapshot, pairs, classes, registry)
            project["library_attribution"] = {
                "clone_type": attribution_type.value,
                "libraries": [report_mod.attribution_dict(a) for a in attributions],
            }
    if config.detect_assets:
        block, _, _, warnings = analyze_assets(snapshot, config, transport=transport)
        project["asset_metrics"] = block.pop("metrics")
        project["asset_detail"] = block
        project["warnings"].extend(warnings)
    return project


def build_report(targets, config: RunConfig, registry=None, include_attribution=False):
    """Run the pipeline over (project_id, root, version_label) targets."""
    report = {
        "tool": "clonescope",
        "tool_version": __version__,
        "run_config": {
            "detection_types": [t.value for t in config.detection_types],
            "dissimilarity_threshold": config.dissimilarity_threshold,
            "clone_threshold": config.clone_threshold,
            "clustering_mode": config.clustering_mode,
            "backend": config.backend.kind.value,
            "min_lines": config.min_lines,
            "max_lines": config.max_lines,
        },
        "projects": [],
        "failures": [],
    }
    for project_id, root, _version in sorted(targets):
        try:
            snapshot = scan_project(root, project_id=project_id)
            report["projects"].append(
                build_project_report(snapshot, config, registry, include_attribution)
            )
        except ClonescopeError as exc:
            report["failures"].append({"project_id": project_id, "error": str(exc)})
    return report


def _targets_from(root, manifest):
    if manifest:
        return [(e.project_id, e.root_path, e.version_label)
                for e in load_corpus_manifest(manifest)]
    if root is None:
        raise click.UsageError("provide a project ROOT or --manifest")
    return [(Path(root).name or str(root), root, None)]


def _emit(report, fmt, out):
    if out in (None, "-"):
        if fmt == "csv":
            click.echo(report_mod.render_csv(report), nl=False)
        else:
            click.echo(report_mod.render_json(report), nl=False)
    else:
        report_mod.emit_report(report, fmt, out)


def _common_config(types, dissimilarity, clone_threshold, clustering, backend,
                   min_lines, max_lines, fmt, config_file,
                   detect_source=True, detect_assets=True):
    defaults = {}
    if config_file:
        defaults = load_config_file(config_file)
    types = types or defaults.get("types", DEFAULT_TYPES)
    return RunConfig(
        detection_types=_parse_types(types),
        dissimilarity_threshold=float(
            dissimilarity if dissimilarity is not None else defaults.get("dissimilarity", 0.3)
        ),
        clone_threshold=float(
            clone_threshold if clone_threshold is not None
            else defaults.get("clone_threshold", 0.8)
        ),
        clustering_mode=(clustering or defaults.get("clustering", "components")),
        backend=BackendConfig(kind=(backend or defaults.get("backend", "structural"))),
        min_lines=int(min_lines if min_lines is not None else defaults.get("min_lines", 10)),
        max_lines=int(max_lines if max_lines is not None else defaults.get("max_lines", 2500)),
        output_format=(fmt or defaults.get("format", "json")),
        detect_source=detect_source,
        detect_assets=detect_assets,
    )


def _shared_options(fn):
    options = [
        click.option("--types", default=None, help=f"Comma-separated clone types (default {DEFAULT_TYPES})"),
        click.option("--dissimilarity", type=float, default=None,
                     help="Dissimilarity threshold for near-miss types (default 0.3)"),
        click.option("--clone-threshold", type=float, default=None,
                     help="Asset clone threshold (default 0.8)"),
        click.option("--clustering", type=click.Choice(["components", "cliques"]),
                     default=None),
        click.option("--backend", type=click.Choice(["structural", "llm"]), default=None),
        click.option("--min-lines", type=int, default=None),
        click.option("--max-lines", type=int, default=None),
        click.option("--manifest", type=click.Path(exists=True, dir_okay=False), default=None),
        click.option("--out", default=None, help="Output path ('-' for stdout)"),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None),
        click.option("--config", "config_file",
                     type=click.Path(exists=True, dir_okay=False), default=None),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="clonescope")
def cli():
    """Clone analysis for VR-style projects: source functions and serialized assets."""


@cli.command()
@click.argument("root", required=False, type=click.Path(exists=True, file_okay=False))
@_shared_options
def scan(root, manifest, out, fmt, **kwargs):
    """Scan projects and report file classification counts."""
    report = {"tool": "clonescope", "tool_version": __version__, "projects": []}
    for project_id, project_root, _v in sorted(_targets_from(root, manifest)):
        snapshot = scan_project(project_root, project_id=project_id)
        report["projects"].append({
            "project_id": project_id,
            "files_scanned": snapshot.files_scanned,
            "source_unit_count": len(snapshot.source_units),
            "asset_unit_count": len(snapshot.asset_units),
            "excluded_count": snapshot.excluded_count,
            "warnings": snapshot.warnings,
        })
    _emit(report, fmt or "json", out)


def _run_pipeline(root, manifest, out, fmt, include_attribution, registry=None, **kwargs):
    config = _common_config(fmt=fmt, **kwargs)
    targets = _targets_from(root, manifest)
    report = build_report(targets, config, registry=registry,
                          include_attribution=include_attribution)
    _emit(report, config.output_format, out)
    return 2 if report["failures"] else 0


@cli.command()
@click.argument("root", required=False, type=click.Path(exists=True, file_okay=False))
@click.option("--all", "run_all", is_flag=True, default=False,
              help="Run the full pipeline including analyses")
@_shared_options
def run(root, run_all, manifest, out, fmt, types, dissimilarity, clone_threshold,
        clustering, backend, min_lines, max_lines, config_file):
    """Run scans, detections and metrics over a project or corpus manifest."""
    code = _run_pipeline(
        root, manifest, out, fmt, include_attribution=run_all,
        types=types, dissimilarity=dissimilarity, clone_threshold=clone_threshold,
        clustering=clustering, backend=backend, min_lines=min_lines,
        max_lines=max_lines, config_file=config_file,
    )
    if code:
        sys.exit(code)


@cli.command("detect-source")
@click.argument("root", required=False, type=click.Path(exists=True, file_okay=False))
@_shared_options
def detect_source_cmd(root, manifest, out, fmt, types, dissimilarity, clone_threshold,
                      clustering, backend, min_lines, max_lines, config_file):
    """Detect function-level source clones."""
    code = _run_pipeline(
        root, manifest, out, fmt, include_attribution=False,
        types=types, dissimilarity=dissimilarity, clone_threshold=clone_threshold,
        clustering=clustering, backend=backend, min_lines=min_lines,
        max_lines=max_lines, config_file=config_file,
        detect_assets=False,
    )
    if code:
        sys.exit(code)


@cli.command("detect-assets")
@click.argument("root", required=False, type=click.Path(exists=True, file_okay=False))
@_shared_options
def detect_assets_cmd(root, manifest, out, fmt, types, dissimilarity, clone_threshold,
                      clustering, backend, min_lines, max_lines, config_file):
    """Detect serialized-asset file clones."""
    code = _run_pipeline(
        root, manifest, out, fmt, include_attribution=False,
        types=types, dissimilarity=dissimilarity, clone_threshold=clone_threshold,
        clustering=clustering, backend=backend, min_lines=min_lines,
        max_lines=max_lines, config_file=config_file,
        detect_source=False,
    )
    if code:
        sys.exit(code)


@cli.command("metrics")
@click.argument("root", required=False, type=click.Path(exists=True, file_okay=False))
@_shared_options
def metrics_cmd(root, manifest, out, fmt, types, dissimilarity, clone_threshold,
                clustering, backend, min_lines, max_lines, config_file):
    """Compute the full metric suite (both detection levels)."""
    code = _run_pipeline(
        root, manifest, out, fmt, include_attribution=False,
        types=types, dissimilarity=dissimilarity, clone_threshold=clone_threshold,
        clustering=clustering, backend=backend, min_lines=min_lines,
        max_lines=max_lines, config_file=config_file,
    )
    if code:
        sys.exit(code)


@cli.command("diff-versions")
@_shared_options
def diff_versions(manifest, out, fmt, types, dissimilarity, clone_threshold,
                  clustering, backend, min_lines, max_lines, config_file):
    """Cross-version clone detection over a manifest with version labels."""
    if manifest is None:
        raise click.UsageError("--manifest with version labels is required")
    config = _common_config(types or "t3-2", dissimilarity, clone_threshold, clustering,
                            backend, min_lines, max_lines, fmt, config_file)
    entries = load_corpus_manifest(manifest)
    by_project = {}
    for entry in entries:
        if entry.version_label is None:
            raise click.UsageError(
                f"manifest entry for {entry.project_id} lacks a version label"
            )
        by_project.setdefault(entry.project_id, []).append(entry)
    report = {"tool": "clonescope", "tool_version": __version__, "version_pairs": []}
    dconfig = config.detection_config(config.detection_types[0])
    for project_id, versions in sorted(by_project.items()):
        for prev, cur in zip(versions, versions[1:]):
            snap_a = scan_project(prev.root_path, project_id=project_id)
            snap_b = scan_project(cur.root_path, project_id=project_id)
            pair_report = analysis.inter_version_clones(
                snap_a, snap_b, dconfig,
                label_a=prev.version_label, label_b=cur.version_label,
            )
            report["version_pairs"].append(report_mod.version_pair_dict(pair_report))
    _emit(report, config.output_format, out)


@cli.command("attribute-libs")
@click.argument("root", required=False, type=click.Path(exists=True, file_okay=False))
@click.option("--registry", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Library key-file registry (default: bundled table)")
@_shared_options
def attribute_libs(root, registry, manifest, out, fmt, types, dissimilarity,
                   clone_threshold, clustering, backend, min_lines, max_lines,
                   config_file):
    """Attribute clones to vendored third-party libraries."""
    registry_entries = analysis.load_library_registry(registry)
    code = _run_pipeline(
        root, manifest, out, fmt, include_attribution=True,
        registry=registry_entries,
        types=types or "t3-2", dissimilarity=dissimilarity,
        clone_threshold=clone_threshold, clustering=clustering, backend=backend,
        min_lines=min_lines, max_lines=max_lines, config_file=config_file,
        detect_assets=False,
    )
    if code:
        sys.exit(code)


@cli.command("report")
@click.option("--in", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="An existing JSON report to re-emit")
@click.option("--out", default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv")
def report_cmd(input_path, out, fmt):
    """Re-emit an existing JSON report in another format."""
    import json as json_mod

    report = json_mod.loads(Path(input_path).read_text(encoding="utf-8"))
    _emit(report, fmt, out)


def main(argv=None):
    """Entry point mapping error classes onto the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except SystemExit as exc:
        return exc.code or 0
    except ClonescopeError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
