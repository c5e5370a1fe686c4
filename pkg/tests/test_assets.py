from collections import Counter

import pytest
from hypothesis import given, strategies as st

from clonescope.assets import (
    AssetDocument,
    BackendConfig,
    SimilarityRecord,
    BackendKind,
    clone_index,
    cluster_clone_groups,
    detect_clone_files,
    group_size_buckets,
    parse_asset,
    structural_similarity,
)
from clonescope.errors import UndefinedMetricError
from clonescope.ingest import AssetUnit, FileCategory

PREFAB = """%YAML 1.1
%TAG !u! tag:unity3d.com,2011:
--- !u!1 &100000
GameObject:
  m_Name: Ball
  m_Layer: 0
--- !u!4 &400000
Transform:
  m_LocalPosition: {x: 0, y: 1, z: 2}
  m_Script: {fileID: 11500000, guid: abc123def456, type: 3}
"""


def doc(entries, path="a.mat", category=FileCategory.MATERIAL):
    return AssetDocument(path, category, Counter(entries), len(entries))


class TestParseAsset:
    def test_empty_file(self):
        d = parse_asset(AssetUnit("a.prefab", FileCategory.TEMPLATE, ""))
        assert d.normalized_entries == Counter()

    def test_guid_fileid_invariance(self):
        mutated = PREFAB.replace("abc123def456", "f0f0f0f0f0f0").replace("&400000", "&999999")
        a = parse_asset(AssetUnit("a.prefab", FileCategory.TEMPLATE, PREFAB))
        b = parse_asset(AssetUnit("b.prefab", FileCategory.TEMPLATE, mutated))
        assert a.normalized_entries == b.normalized_entries
        assert structural_similarity(a, b) == 1.0

    def test_json_flattening(self):
        d = parse_asset(AssetUnit("c.json", FileCategory.CONFIG, '{"a":1,"b":{"c":2}}'))
        assert d.normalized_entries == Counter({"a=1", "b.c=2"})

    def test_ini_flattening(self):
        d = parse_asset(AssetUnit("c.ini", FileCategory.CONFIG, "[sec]\nkey=val\n"))
        assert d.normalized_entries == Counter({"sec.key=val"})

    def test_broken_file_degrades_with_warning(self):
        shader = "Shader \"Custom/X\" {\n  Properties { _Color (\"c\", Color) = (1,1,1,1) }\n"
        d = parse_asset(AssetUnit("s.shader", FileCategory.MATERIAL, shader))
        assert d.parse_warning is not None
        assert d.normalized_entries  # line-level fallback, never dropped

    def test_reparse_is_identical(self):
        unit = AssetUnit("a.prefab", FileCategory.TEMPLATE, PREFAB)
        assert parse_asset(unit) == parse_asset(unit)


class TestStructuralSimilarity:
    def test_identical(self):
        a = doc(["k=1", "j=2"])
        b = doc(["k=1", "j=2"], path="b.mat")
        assert structural_similarity(a, b) == 1.0

    def test_disjoint(self):
        assert structural_similarity(doc(["a=1"]), doc(["b=2"], path="b.mat")) == 0.0

    def test_half_shared_dice(self):
        shared = [f"s{i}=1" for i in range(5)]
        a = doc(shared + [f"a{i}=1" for i in range(5)])
        b = doc(shared + [f"b{i}=1" for i in range(5)], path="b.mat")
        assert structural_similarity(a, b) == pytest.approx(0.5)

    def test_both_empty_is_one(self):
        assert structural_similarity(doc([]), doc([], path="b.mat")) == 1.0

    def test_category_mismatch_rejected(self):
        a = doc(["k=1"])
        b = doc(["k=1"], path="s.unity", category=FileCategory.SCENE)
        with pytest.raises(ValueError):
            structural_similarity(a, b)

    entries = st.lists(st.sampled_from([f"k{i}=v" for i in range(8)]), max_size=20)

    @given(entries, entries)
    def test_symmetry_and_range(self, xs, ys):
        a, b = doc(xs), doc(ys, path="b.mat")
        assert structural_similarity(a, b) == structural_similarity(b, a)
        assert 0.0 <= structural_similarity(a, b) <= 1.0

    @given(entries)
    def test_reflexivity(self, xs):
        a, b = doc(xs), doc(xs, path="b.mat")
        assert structural_similarity(a, b) == 1.0


def record(a, b, score):
    return SimilarityRecord(a, b, score, BackendKind.STRUCTURAL)


class TestDetectCloneFiles:
    def three_docs(self, shared_fraction=1.0):
        shared = [f"s{i}=1" for i in range(10)]
        return [doc(shared, path=f"{name}.mat") for name in ("a", "b", "c")]

    def test_all_clones_when_pairs_exceed_threshold(self):
        docs = self.three_docs()
        clone_files, records = detect_clone_files(docs, BackendConfig())
        assert clone_files == {"a.mat", "b.mat", "c.mat"}
        assert len(records) == 3

    def test_exact_threshold_excluded(self):
        shared = [f"s{i}=1" for i in range(8)]
        a = doc(shared + ["a1=1", "a2=1"], path="a.mat")
        b = doc(shared + ["b1=1", "b2=1"], path="b.mat")
        assert structural_similarity(a, b) == pytest.approx(0.80)
        clone_files, _ = detect_clone_files([a, b], BackendConfig(clone_threshold=0.80))
        assert clone_files == set()

    def test_single_file_no_pairs(self):
        clone_files, records = detect_clone_files([doc(["k=1"])], BackendConfig())
        assert clone_files == set() and records == []

    def test_cross_category_pairs_not_scored(self):
        a = doc(["k=1"], path="a.mat")
        b = doc(["k=1"], path="s.unity", category=FileCategory.SCENE)
        _, records = detect_clone_files([a, b], BackendConfig())
        assert records == []


class TestCloneGroups:
    def test_components_vs_cliques(self):
        records = [
            record("A", "B", 0.9),
            record("B", "C", 0.9),
            record("A", "C", 0.5),
        ]
        comps = cluster_clone_groups(records, 0.8, "components")
        assert [g.members for g in comps] == [("A", "B", "C")]
        cliques = cluster_clone_groups(records, 0.8, "cliques")
        assert [g.members for g in cliques] == [("A", "B"), ("B", "C")]

    def test_all_below_threshold(self):
        assert cluster_clone_groups([record("A", "B", 0.5)], 0.8) == []

    def test_bucket_histogram(self):
        class FakeGroup:
            def __init__(self, n):
                self.n = n

            def __len__(self):
                return self.n

        buckets = group_size_buckets([FakeGroup(2), FakeGroup(2), FakeGroup(4), FakeGroup(11)])
        assert buckets == {"2": 2, "[3,10]": 1, ">10": 1}
        assert sum(buckets.values()) == 4


class TestCloneIndex:
    def test_all_zero(self):
        records = [record("a", "b", 0.0)]
        assert clone_index(records, 2) == 0.0

    def test_two_identical_files(self):
        assert clone_index([record("a", "b", 1.0)], 2) == pytest.approx(0.5)

    def test_three_files_point_nine(self):
        records = [record("a", "b", 0.9), record("a", "c", 0.9), record("b", "c", 0.9)]
        assert clone_index(records, 3) == pytest.approx(0.9)

    def test_ordered_convention_doubles(self):
        records = [record("a", "b", 1.0)]
        assert clone_index(records, 2, ordered_pair_sum=True) == pytest.approx(1.0)

    def test_zero_files_undefined(self):
        with pytest.raises(UndefinedMetricError):
            clone_index([], 0)

    @given(st.floats(min_value=0.0, max_value=1.0),
           st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=10))
    def test_linear_in_scores(self, scale, scores):
        base = [record(f"a{i}", f"b{i}", s) for i, s in enumerate(scores)]
        scaled = [record(f"a{i}", f"b{i}", s * scale) for i, s in enumerate(scores)]
        assert clone_index(scaled, 5) == pytest.approx(scale * clone_index(base, 5))
