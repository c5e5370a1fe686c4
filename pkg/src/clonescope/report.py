"""Report assembly and deterministic JSON/CSV emission.

Every number in a report comes from the metrics/analysis layer; the emitter
only formats. Reports are plain JSON-able dicts so that emitting the same
report twice is byte-identical and parse(emit(r)) == r.
"""

import csv
import io
import json
from pathlib import Path

from .errors import ReportError
from .metrics import percent

CSV_HEADER = [
    "record_type", "project_id", "clone_type",
    "ncf", "ncc", "total_functions", "rcf", "rcc",
    "nca", "ncg", "groups_2", "groups_3_10", "groups_gt_10",
    "total_assets", "rca", "rcg", "ci",
]


def source_metrics_dict(m):
    return {
        "clone_type": m.clone_type,
        "ncf": m.ncf,
        "ncc": m.ncc,
        "total_functions": m.total_functions,
        "rcf": float(m.rcf),
        "rcc": float(m.rcc),
        "rcf_percent": m.rcf_percent,
        "rcc_percent": m.rcc_percent,
    }


def asset_metrics_dict(m):
    return {
        "nca": m.nca,
        "ncg": m.ncg,
        "total_assets": m.total_assets,
        "rca": float(m.rca),
        "rcg": float(m.rcg),
        "ci": m.ci,
        "rca_percent": m.rca_percent,
        "rcg_percent": m.rcg_percent,
        "ci_percent": m.ci_percent,
        "group_size_buckets": dict(m.group_size_buckets),
    }


def size_distribution_dict(dist):
    return {"buckets": dist.as_dict(), "total": dist.total}


def version_pair_dict(report):
    return {
        "project_id": report.project_id,
        "version_a": report.version_a,
        "version_b": report.version_b,
        "intra_a_pairs": report.intra_a_pairs,
        "intra_b_pairs": report.intra_b_pairs,
        "cross_pairs": report.cross_pairs,
        "cross_exact_pairs": report.cross_exact_pairs,
        "cross_metrics": source_metrics_dict(report.cross_metrics),
        "per_version_metrics": [
            source_metrics_dict(m) for m in report.per_version_metrics
        ],
    }


def attribution_dict(attr):
    return {
        "library": attr.library_name,
        "detected": attr.detected,
        "key_file": attr.key_file,
        "ncf": attr.lib_ncf,
        "ncc": attr.lib_ncc,
        "share_ncf_percent": percent(attr.share_ncf) if attr.share_ncf is not None else None,
        "share_ncc_percent": percent(attr.share_ncc) if attr.share_ncc is not None else None,
    }


def category_breakdown_dict(breakdown):
    return {
        category.value: {
            "file_count": entry.file_count,
            "ci": entry.ci,
            "ci_percent": percent(entry.ci),
            "nca": entry.nca,
            "ncg": entry.ncg,
            "degenerate": entry.degenerate,
        }
        for category, entry in breakdown.per_category.items()
    }


def render_json(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(report) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for project in report.get("projects", []):
        pid = project["project_id"]
        for m in project.get("source_metrics", []):
            writer.writerow([
                "source", pid, m["clone_type"],
                m["ncf"], m["ncc"], m["total_functions"],
                m["rcf_percent"], m["rcc_percent"],
                "", "", "", "", "", "", "", "", "",
            ])
        assets = project.get("asset_metrics")
        if assets:
            buckets = assets["group_size_buckets"]
            writer.writerow([
                "asset", pid, "",
                "", "", "", "", "",
                assets["nca"], assets["ncg"],
                buckets["2"], buckets["[3,10]"], buckets[">10"],
                assets["total_assets"],
                assets["rca_percent"], assets["rcg_percent"], assets["ci_percent"],
            ])
    return out.getvalue()


def emit_report(report, output_format, path):
    """Write a finalized report as JSON or CSV. Deterministic byte-for-byte."""
    output_format = str(output_format).lower()
    if output_format == "json":
        payload = render_json(report)
    elif output_format == "csv":
        payload = render_csv(report)
    else:
        raise ReportError(f"unknown output format: {output_format}")
    try:
        Path(path).write_text(payload, encoding="utf-8", newline="")
    except OSError as exc:
        raise ReportError(f"cannot write report to {path}: {exc}") from exc
