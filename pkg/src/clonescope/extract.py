"""Function fragment extraction with per-language lightweight grammars.

Brace-matched extraction for C, C# and Java; the Python grammar rides on the
stdlib parser. The goal is spans, not semantics: a fragment is a maximal
function/method/constructor body including its signature line.
"""

import ast
import re
from dataclasses import dataclass

from .ingest import Language, SourceUnit

# Keywords whose `keyword (...) {` blocks are control flow, not functions.
_CONTROL_KEYWORDS = {
    "if", "for", "foreach", "while", "switch", "catch", "using",
    "lock", "fixed", "return", "throw", "synchronized", "do", "else", "new",
    "delegate",
}

_IDENT_RE = re.compile(r"[A-Za-z_]\w*")


@dataclass(frozen=True)
class FunctionFragment:
    id: str
    unit_path: str
    language: Language
    start_line: int
    end_line: int
    body_lines: tuple

    def __post_init__(self):
        if self.end_line < self.start_line:
            raise ValueError("end_line before start_line")
        if not self.body_lines:
            raise ValueError("empty fragment body")


def _mask_comments_and_strings(text):
    """Return text of identical length with comments blanked and string/char
    literal contents blanked, so brace matching never sees quoted braces.
    Newlines are preserved."""
    out = list(text)
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            j = i
            while j < n and text[j] != "\n":
                out[j] = " "
                j += 1
            i = j
        elif c == "/" and i + 1 < n and text[i + 1] == "*":
            j = i + 2
            while j + 1 < n and not (text[j] == "*" and text[j + 1] == "/"):
                if text[j] != "\n":
                    out[j] = " "
                j += 1
            for k in (i, i + 1, j, j + 1):
                if k < n:
                    out[k] = " "
            i = j + 2
        elif c in "\"'":
            quote = c
            j = i + 1
            while j < n and text[j] != quote and text[j] != "\n":
                if text[j] == "\\":
                    out[j] = " "
                    if j + 1 < n and text[j + 1] != "\n":
                        out[j + 1] = " "
                    j += 2
                    continue
                out[j] = " "
                j += 1
            i = j + 1
        else:
            i += 1
    return "".join(out)


def _line_of(text, pos, line_starts):
    import bisect

    return bisect.bisect_right(line_starts, pos)


def _extract_braced(unit, warnings):
    text = unit.content
    masked = _mask_comments_and_strings(text)
    if masked.count("{") != masked.count("}"):
        warnings.append(f"{unit.rel_path}: unbalanced braces, unit skipped")
        return []

    line_starts = [0]
    for idx, ch in enumerate(text):
        if ch == "\n":
            line_starts.append(idx + 1)

    lines = text.split("\n")
    fragments = []
    n = len(masked)
    for open_pos in (i for i, ch in enumerate(masked) if ch == "{"):
        header = _match_function_header(masked, open_pos)
        if header is None:
            continue
        name_pos = header
        # Forward brace matching for the body span.
        depth = 0
        close_pos = None
        for j in range(open_pos, n):
            if masked[j] == "{":
                depth += 1
            elif masked[j] == "}":
                depth -= 1
                if depth == 0:
                    close_pos = j
                    break
        if close_pos is None:
            warnings.append(f"{unit.rel_path}: unmatched brace at offset {open_pos}")
            continue
        start_line = _line_of(text, name_pos, line_starts)
        end_line = _line_of(text, close_pos, line_starts)
        body = tuple(lines[start_line - 1 : end_line])
        frag_id = f"{unit.rel_path}:{start_line}-{end_line}"
        fragments.append(
            FunctionFragment(frag_id, unit.rel_path, unit.language, start_line, end_line, body)
        )
    return fragments


def _match_function_header(masked, open_pos):
    """Decide whether the `{` at open_pos opens a function body.

    Expects `... name ( params ) [trailer] {` where name is an identifier
    that is not a control keyword. Returns the offset where the signature
    line begins (the name token), or None.
    """
    i = open_pos - 1
    while i >= 0 and masked[i].isspace():
        i -= 1
    # Allow a limited trailer between ')' and '{': identifiers, commas,
    # colons, angle brackets (Java throws, C# where-clauses, C old-style
    # qualifiers). Anything else disqualifies.
    trailer_end = i
    while i >= 0 and masked[i] != ")":
        if masked[i] in ";{}=([]":
            return None
        i -= 1
    if i < 0:
        return None
    if not re.fullmatch(r"[\w\s,:<>.]*", masked[i + 1 : trailer_end + 1]):
        return None
    # Backward paren matching to find the '(' of the parameter list.
    depth = 0
    j = i
    while j >= 0:
        if masked[j] == ")":
            depth += 1
        elif masked[j] == "(":
            depth -= 1
            if depth == 0:
                break
        j -= 1
    if j < 0:
        return None
    # The token immediately before '(' must be the function name, allowing a
    # generic parameter group: `Foo<T>(...)`.
    k = j - 1
    while k >= 0 and masked[k].isspace():
        k -= 1
    if k >= 0 and masked[k] == ">":
        depth = 0
        while k >= 0:
            if masked[k] == ">":
                depth += 1
            elif masked[k] == "<":
                depth -= 1
                if depth == 0:
                    break
            k -= 1
        if k < 0:
            return None
        k -= 1
        while k >= 0 and masked[k].isspace():
            k -= 1
    if k < 0 or not (masked[k].isalnum() or masked[k] == "_"):
        return None
    name_end = k + 1
    while k >= 0 and (masked[k].isalnum() or masked[k] == "_"):
        k -= 1
    name_start = k + 1
    name = masked[name_start:name_end]
    if name in _CONTROL_KEYWORDS or name[0].isdigit():
        return None
    # `new Foo() {` object initializers: preceding token is `new`.
    p = name_start - 1
    while p >= 0 and masked[p].isspace():
        p -= 1
    prev_end = p + 1
    while p >= 0 and (masked[p].isalnum() or masked[p] == "_"):
        p -= 1
    if masked[p + 1 : prev_end] in ("new", "return", "case"):
        return None
    # A ';' or '}' right before suggests a call statement, not a definition;
    # a definition carries a return type or modifier on the same logical
    # construct. Calls like `foo(1) {` are not valid in these languages, so
    # reaching here with a sane name is accepted.
    return name_start


def _extract_python(unit, warnings):
    try:
        tree = ast.parse(unit.content)
    except SyntaxError as exc:
        warnings.append(f"{unit.rel_path}: unparseable Python ({exc.msg}), unit skipped")
        return []
    lines = unit.content.split("\n")
    fragments = []
    for node in ast.walk(tree):
        if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            start, end = node.lineno, node.end_lineno
            body = tuple(lines[start - 1 : end])
            frag_id = f"{unit.rel_path}:{start}-{end}"
            fragments.append(
                FunctionFragment(frag_id, unit.rel_path, unit.language, start, end, body)
            )
    return fragments


def extract_functions(unit: SourceUnit, min_lines=10, max_lines=2500, warnings=None):
    """Extract function fragments from one source unit.

    Fragments are filtered by their normalized line count (layout
    normalization, identifiers intact) against [min_lines, max_lines].
    """
    from .normalize import Renaming, normalize_fragment

    if warnings is None:
        warnings = []
    if unit.language in (Language.C, Language.CSHARP, Language.JAVA):
        fragments = _extract_braced(unit, warnings)
    elif unit.language is Language.PYTHON:
        fragments = _extract_python(unit, warnings)
    else:
        warnings.append(f"{unit.rel_path}: unsupported language {unit.language.value}")
        return []

    kept = []
    for frag in fragments:
        size = len(normalize_fragment(frag, Renaming.NONE).lines)
        if min_lines <= size <= max_lines:
            kept.append(frag)
    kept.sort(key=lambda f: f.id)
    return kept
