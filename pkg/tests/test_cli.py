import json

import pytest

from clonescope.cli import load_config_file, main

from conftest import PlantedCorpus

MAT_A = "Material:\n  m_Name: Red\n  m_Shader: {fileID: 46}\n"
MAT_C = "Material:\n  m_Name: Blue\n  m_Color: {r: 0, g: 0, b: 1}\n"


def write_project(root, with_assets=True, corpus=None):
    root.mkdir(parents=True, exist_ok=True)
    corpus = corpus or default_corpus()
    for rel_path, content in corpus.sources:
        path = root / rel_path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    if with_assets:
        (root / "Assets").mkdir(exist_ok=True)
        (root / "Assets" / "a.mat").write_text(MAT_A, encoding="utf-8")
        (root / "Assets" / "b.mat").write_text(MAT_A, encoding="utf-8")
        (root / "Assets" / "c.mat").write_text(MAT_C, encoding="utf-8")
    return root


def default_corpus():
    corpus = PlantedCorpus()
    _, lits = corpus.add_base()
    corpus.add_exact_copy(lits)
    corpus.add_base()
    return corpus


@pytest.fixture
def project(tmp_path):
    return write_project(tmp_path / "proj")


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestScan:
    def test_scan_counts(self, project, capsys):
        code, report = run_json(capsys, ["scan", str(project)])
        assert code == 0
        [entry] = report["projects"]
        assert entry["source_unit_count"] == 3
        assert entry["asset_unit_count"] == 3

    def test_scan_missing_root_is_usage_error(self, tmp_path, capsys):
        code = main(["scan", str(tmp_path / "nope")])
        assert code == 1


class TestRun:
    def test_run_emits_source_and_asset_metrics(self, project, capsys):
        code, report = run_json(capsys, ["run", str(project)])
        assert code == 0
        [entry] = report["projects"]
        by_type = {m["clone_type"]: m for m in entry["source_metrics"]}
        assert set(by_type) == {"t1", "t2", "t2c", "t3-1", "t3-2", "t3-2c"}
        assert by_type["t1"]["ncf"] == 2
        assert entry["asset_metrics"]["nca"] == 2
        assert entry["asset_metrics"]["ncg"] == 1

    def test_run_all_includes_attribution(self, project, capsys):
        code, report = run_json(capsys, ["run", "--all", str(project)])
        assert code == 0
        [entry] = report["projects"]
        assert "library_attribution" in entry
        names = {lib["library"] for lib in entry["library_attribution"]["libraries"]}
        assert "SteamVR" in names

    def test_run_writes_file(self, project, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["run", str(project), "--out", str(out)]) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["tool"] == "clonescope"

    def test_manifest_with_bad_root_fails_with_code_2(self, project, tmp_path, capsys):
        manifest = tmp_path / "corpus.txt"
        manifest.write_text(
            f"good {project}\nbroken {tmp_path / 'missing'}\n", encoding="utf-8"
        )
        code, report = run_json(capsys, ["run", "--manifest", str(manifest)])
        assert code == 2
        assert [f["project_id"] for f in report["failures"]] == ["broken"]
        assert [p["project_id"] for p in report["projects"]] == ["good"]

    def test_no_root_no_manifest_is_usage_error(self, capsys):
        assert main(["run"]) == 1

    def test_unknown_type_is_usage_error(self, project, capsys):
        assert main(["run", str(project), "--types", "t9"]) == 1


class TestTargetedCommands:
    def test_detect_source_skips_assets(self, project, capsys):
        code, report = run_json(capsys, ["detect-source", str(project), "--types", "t1"])
        assert code == 0
        [entry] = report["projects"]
        assert "asset_metrics" not in entry
        assert entry["source_metrics"][0]["ncf"] == 2

    def test_detect_assets_skips_source(self, project, capsys):
        code, report = run_json(capsys, ["detect-assets", str(project)])
        assert code == 0
        [entry] = report["projects"]
        assert "source_metrics" not in entry
        assert entry["asset_metrics"]["nca"] == 2
        assert entry["asset_detail"]["clone_files"] == ["Assets/a.mat", "Assets/b.mat"]

    def test_metrics_includes_category_breakdown(self, project, capsys):
        code, report = run_json(capsys, ["metrics", str(project)])
        assert code == 0
        [entry] = report["projects"]
        breakdown = entry["asset_detail"]["category_breakdown"]
        assert breakdown["Material"]["file_count"] == 3

    def test_attribute_libs(self, tmp_path, capsys):
        root = tmp_path / "vrproj"
        write_project(root, with_assets=False)
        key = root / "Assets/SteamVR/Input/SteamVR_Input.cs"
        key.parent.mkdir(parents=True)
        key.write_text("// vendored\n", encoding="utf-8")
        code, report = run_json(capsys, ["attribute-libs", str(root)])
        assert code == 0
        [entry] = report["projects"]
        libs = {lib["library"]: lib for lib in entry["library_attribution"]["libraries"]}
        assert libs["SteamVR"]["detected"] is True
        assert libs["Oculus"]["detected"] is False


class TestDiffVersions:
    def test_two_versions(self, tmp_path, capsys):
        corpus = default_corpus()
        write_project(tmp_path / "v1", with_assets=False, corpus=corpus)
        write_project(tmp_path / "v2", with_assets=False, corpus=corpus)
        manifest = tmp_path / "versions.txt"
        manifest.write_text(
            f"proj {tmp_path / 'v1'} 1.0\nproj {tmp_path / 'v2'} 2.0\n",
            encoding="utf-8",
        )
        code, report = run_json(
            capsys, ["diff-versions", "--manifest", str(manifest), "--types", "t1"]
        )
        assert code == 0
        [pair] = report["version_pairs"]
        assert (pair["version_a"], pair["version_b"]) == ("1.0", "2.0")
        assert pair["cross_pairs"] >= 3

    def test_manifest_without_labels_rejected(self, tmp_path, project, capsys):
        manifest = tmp_path / "versions.txt"
        manifest.write_text(f"proj {project}\n", encoding="utf-8")
        assert main(["diff-versions", "--manifest", str(manifest)]) == 1

    def test_requires_manifest(self, capsys):
        assert main(["diff-versions"]) == 1


class TestReportCommand:
    def test_json_to_csv_round_trip(self, project, tmp_path, capsys):
        json_path = tmp_path / "report.json"
        assert main(["run", str(project), "--out", str(json_path)]) == 0

        code = main(["report", "--in", str(json_path), "--format", "csv"])
        csv_text = capsys.readouterr().out
        assert code == 0
        lines = csv_text.strip().split("\n")
        assert lines[0].startswith("record_type,project_id,clone_type")
        # six source rows + one asset row
        assert len(lines) == 1 + 6 + 1

    def test_csv_matches_direct_emission(self, project, tmp_path, capsys):
        json_path = tmp_path / "report.json"
        csv_path = tmp_path / "report.csv"
        assert main(["run", str(project), "--out", str(json_path)]) == 0
        assert main(["run", str(project), "--format", "csv", "--out", str(csv_path)]) == 0
        main(["report", "--in", str(json_path), "--format", "csv"])
        assert capsys.readouterr().out == csv_path.read_text(encoding="utf-8")


class TestConfigFile:
    def test_load_config_file(self, tmp_path):
        cfg = tmp_path / "clonescope.conf"
        cfg.write_text(
            "# comment\ntypes = t1,t2\nmin_lines = 5\n", encoding="utf-8"
        )
        assert load_config_file(cfg) == {"types": "t1,t2", "min_lines": "5"}

    def test_config_file_sets_defaults(self, project, tmp_path, capsys):
        cfg = tmp_path / "clonescope.conf"
        cfg.write_text("types = t1\n", encoding="utf-8")
        code, report = run_json(capsys, ["run", str(project), "--config", str(cfg)])
        assert code == 0
        [entry] = report["projects"]
        assert [m["clone_type"] for m in entry["source_metrics"]] == ["t1"]

    def test_cli_flag_overrides_config(self, project, tmp_path, capsys):
        cfg = tmp_path / "clonescope.conf"
        cfg.write_text("types = t1\n", encoding="utf-8")
        code, report = run_json(
            capsys, ["run", str(project), "--config", str(cfg), "--types", "t2"]
        )
        [entry] = report["projects"]
        assert [m["clone_type"] for m in entry["source_metrics"]] == ["t2"]

    def test_malformed_config_is_detection_failure(self, project, tmp_path, capsys):
        cfg = tmp_path / "clonescope.conf"
        cfg.write_text("no equals sign here\n", encoding="utf-8")
        assert main(["run", str(project), "--config", str(cfg)]) == 2


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, project, capsys):
        main(["run", "--all", str(project)])
        first = capsys.readouterr().out
        main(["run", "--all", str(project)])
        second = capsys.readouterr().out
        assert first == second
