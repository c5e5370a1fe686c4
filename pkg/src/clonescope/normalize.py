"""Fragment normalization: comment stripping, pretty-printing, identifier renaming."""

import enum
import re
from dataclasses import dataclass

from .ingest import Language

_TOKEN_RE = re.compile(
    r"""
    [A-Za-z_]\w*                          # identifier / keyword
  | \d[\w.]*                              # numeric literal
  | "(?:\\.|[^"\\\n])*"                   # double-quoted string
  | '(?:\\.|[^'\\\n])*'                   # single-quoted string / char
  | ==|!=|<=|>=|&&|\|\||->|=>|\+\+|--|::|<<|>>|\+=|-=|\*=|/=|%=|&=|\|=|\^=|\*\*
  | \S                                    # any other single symbol
    """,
    re.VERBOSE,
)

_C_KEYWORDS = {
    "auto", "break", "case", "char", "const", "continue", "default", "do",
    "double", "else", "enum", "extern", "float", "for", "goto", "if", "inline",
    "int", "long", "register", "restrict", "return", "short", "signed",
    "sizeof", "static", "struct", "switch", "typedef", "union", "unsigned",
    "void", "volatile", "while",
}

_CSHARP_KEYWORDS = _C_KEYWORDS | {
    "abstract", "as", "base", "bool", "byte", "catch", "checked", "class",
    "decimal", "delegate", "event", "explicit", "false", "finally", "fixed",
    "foreach", "implicit", "in", "interface", "internal", "is", "lock",
    "namespace", "new", "null", "object", "operator", "out", "override",
    "params", "private", "protected", "public", "readonly", "ref", "sbyte",
    "sealed", "stackalloc", "string", "this", "throw", "true", "try",
    "typeof", "uint", "ulong", "unchecked", "unsafe", "ushort", "using",
    "var", "virtual", "where", "yield", "get", "set", "async", "await",
}

_JAVA_KEYWORDS = _C_KEYWORDS | {
    "abstract", "assert", "boolean", "byte", "catch", "class", "extends",
    "final", "finally", "implements", "import", "instanceof", "interface",
    "native", "new", "null", "package", "private", "protected", "public",
    "strictfp", "super", "synchronized", "this", "throw", "throws",
    "transient", "true", "false", "try",
}

_PYTHON_KEYWORDS = {
    "False", "None", "True", "and", "as", "assert", "async", "await", "break",
    "class", "continue", "def", "del", "elif", "else", "except", "finally",
    "for", "from", "global", "if", "import", "in", "is", "lambda", "nonlocal",
    "not", "or", "pass", "raise", "return", "try", "while", "with", "yield",
}

_KEYWORDS = {
    Language.C: _C_KEYWORDS,
    Language.CSHARP: _CSHARP_KEYWORDS,
    Language.JAVA: _JAVA_KEYWORDS,
    Language.PYTHON: _PYTHON_KEYWORDS,
}

BLIND_PLACEHOLDER = "X"


class Renaming(enum.Enum):
    NONE = "none"
    BLIND = "blind"
    CONSISTENT = "consistent"


@dataclass(frozen=True)
class NormalizedFragment:
    fragment_id: str
    lines: tuple
    renaming: Renaming


def _strip_comments(text, language):
    if language is Language.PYTHON:
        out = []
        for line in text.split("\n"):
            # '#' inside string literals is rare in fragments we normalize at
            # line level; scan with a quote tracker to be safe.
            result, quote = [], None
            i = 0
            while i < len(line):
                c = line[i]
                if quote:
                    result.append(c)
                    if c == "\\":
                        if i + 1 < len(line):
                            result.append(line[i + 1])
                        i += 2
                        continue
                    if c == quote:
                        quote = None
                elif c in "\"'":
                    quote = c
                    result.append(c)
                elif c == "#":
                    break
                else:
                    result.append(c)
                i += 1
            out.append("".join(result))
        return "\n".join(out)
    # C-family: reuse the masking scanner but keep string contents.
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
        elif c == "/" and i + 1 < n and text[i + 1] == "*":
            i += 2
            while i + 1 < n and not (text[i] == "*" and text[i + 1] == "/"):
                if text[i] == "\n":
                    out.append("\n")
                i += 1
            i += 2
        elif c in "\"'":
            quote = c
            out.append(c)
            i += 1
            while i < n and text[i] != quote and text[i] != "\n":
                if text[i] == "\\" and i + 1 < n:
                    out.append(text[i : i + 2])
                    i += 2
                    continue
                out.append(text[i])
                i += 1
            if i < n:
                out.append(text[i])
                i += 1
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _pretty_print(text, language):
    """One statement-like token group per line.

    Brace languages break after `;`, `{` and `}`; Python keeps one physical
    line per normalized line. Blank lines vanish.
    """
    if language is Language.PYTHON:
        lines = []
        for raw in text.split("\n"):
            tokens = _TOKEN_RE.findall(raw)
            if tokens:
                lines.append(tokens)
        return lines
    tokens = _TOKEN_RE.findall(text)
    lines, current = [], []
    for tok in tokens:
        current.append(tok)
        if tok in (";", "{", "}"):
            lines.append(current)
            current = []
    if current:
        lines.append(current)
    return lines


def _is_identifier(token, keywords):
    return bool(re.fullmatch(r"[A-Za-z_]\w*", token)) and token not in keywords


def _rename(token_lines, renaming, keywords):
    if renaming is Renaming.NONE:
        return token_lines
    if renaming is Renaming.BLIND:
        return [
            [BLIND_PLACEHOLDER if _is_identifier(t, keywords) else t for t in line]
            for line in token_lines
        ]
    mapping = {}
    out = []
    for line in token_lines:
        row = []
        for t in line:
            if _is_identifier(t, keywords):
                if t not in mapping:
                    mapping[t] = f"X{len(mapping) + 1}"
                row.append(mapping[t])
            else:
                row.append(t)
        out.append(row)
    return out


def normalize_fragment(frag, renaming, language=None) -> NormalizedFragment:
    """Normalize a fragment: strip comments, pretty-print, apply renaming.

    Idempotent: normalizing an already-normalized line sequence under the
    same mode reproduces it (consistent placeholders are numbered by first
    occurrence, so they map onto themselves).
    """
    if isinstance(renaming, str):
        renaming = Renaming(renaming)
    language = language or frag.language
    keywords = _KEYWORDS.get(language, _C_KEYWORDS)
    text = _strip_comments("\n".join(frag.body_lines), language)
    token_lines = _pretty_print(text, language)
    token_lines = _rename(token_lines, renaming, keywords)
    lines = tuple(" ".join(line) for line in token_lines)
    return NormalizedFragment(fragment_id=frag.id, lines=lines, renaming=renaming)
