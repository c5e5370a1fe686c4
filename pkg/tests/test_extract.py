import pytest

from clonescope.extract import extract_functions
from clonescope.ingest import Language, SourceUnit


def unit(text, path="a.cs", language=Language.CSHARP):
    return SourceUnit(path, language, text)


class TestCSharpExtraction:
    def test_empty_source(self):
        assert extract_functions(unit("")) == []

    def test_min_lines_filter(self):
        text = "\n".join([
            "class A {",
            "    int Big(int v) {",
            *[f"        v += {i};" for i in range(10)],
            "        return v;",
            "    }",
            "    int Small(int v) {",
            "        return v + 1;",
            "    }",
            "}",
        ])
        frags = extract_functions(unit(text), min_lines=10)
        assert len(frags) == 1
        assert "Big" in frags[0].body_lines[0]

    def test_control_blocks_not_extracted(self):
        text = "\n".join([
            "class A {",
            "    int F(int v) {",
            "        if (v > 0) {",
            "            v += 1;",
            "        }",
            "        while (v < 10) {",
            "            v *= 2;",
            "        }",
            "        for (int i = 0; i < 3; i++) {",
            "            v -= i;",
            "        }",
            "        return v;",
            "    }",
            "}",
        ])
        frags = extract_functions(unit(text), min_lines=2)
        assert len(frags) == 1

    def test_braces_in_strings_and_comments_ignored(self):
        text = "\n".join([
            "class A {",
            '    string F() {',
            '        // a } comment {',
            '        /* more } braces { */',
            '        return "}{";',
            "    }",
            "}",
        ])
        frags = extract_functions(unit(text), min_lines=2)
        assert len(frags) == 1

    def test_unbalanced_braces_skips_unit(self):
        warnings = []
        frags = extract_functions(unit("class A { void F() {"), warnings=warnings)
        assert frags == []
        assert any("unbalanced" in w for w in warnings)

    def test_fragment_ids_stable(self):
        text = "class A {\n    int F(int v) {\n        return v;\n    }\n}"
        a = extract_functions(unit(text), min_lines=2)
        b = extract_functions(unit(text), min_lines=2)
        assert [f.id for f in a] == [f.id for f in b]


class TestCExtraction:
    def test_two_top_level_functions_with_spans(self):
        body = "\n".join(f"    x += {i};" for i in range(13))
        text = f"int f(int x) {{\n{body}\n    return x;\n}}\n\nint g(int x) {{\n{body}\n    return x;\n}}\n"
        frags = extract_functions(unit(text, "a.c", Language.C))
        assert [(f.start_line, f.end_line) for f in frags] == [(1, 16), (18, 33)]


class TestPythonExtraction:
    def test_functions_and_methods(self):
        text = "\n".join([
            "class A:",
            "    def method(self, x):",
            *[f"        x += {i}" for i in range(10)],
            "        return x",
            "",
            "def top(x):",
            *[f"    x -= {i}" for i in range(10)],
            "    return x",
        ])
        frags = extract_functions(unit(text, "a.py", Language.PYTHON))
        assert len(frags) == 2

    def test_syntax_error_skips_unit(self):
        warnings = []
        frags = extract_functions(
            unit("def broken(:\n  pass", "a.py", Language.PYTHON), warnings=warnings
        )
        assert frags == []
        assert any("unparseable" in w for w in warnings)


def test_unsupported_language_warns():
    warnings = []
    frags = extract_functions(
        SourceUnit("a.lua", Language.OTHER, "function f() end"), warnings=warnings
    )
    assert frags == []
    assert warnings
