"""Text formats for matrices, span lists and code specifications.

Matrix files hold one row per line with entries ``0``/``1`` separated by
whitespace.  Span files start with ``convention closed`` or
``convention semiopen`` and then give one span per line, ``a..b`` for closed
1-based spans or ``(a,b]`` for semiopen 0-based ones.  Blank lines and
trailing whitespace are ignored; anything else is a parse error.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Sequence

from .code import CodeSpec, Span, convert_span
from .errors import ParseError
from .gf2 import BitMatrix

_CLOSED = re.compile(r"\s*(\d+)\s*\.\.\s*(\d+)\s*")
_SEMIOPEN = re.compile(r"\s*\(\s*(\d+)\s*,\s*(\d+)\s*\]\s*")
_HEADER = re.compile(r"\s*convention\s+(closed|semiopen)\s*")


def parse_matrix(text: str, source: str = "<matrix>", cols: int | None = None) -> BitMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            tok = m.group()
            if tok not in ("0", "1"):
                bad = next(j for j, ch in enumerate(tok) if ch not in "01")
                raise ParseError(f"unexpected character {tok[bad]!r}", lineno, m.start() + bad + 1, source)
            row.append(int(tok))
        expected = cols if cols is not None else (len(rows[0]) if rows else None)
        if expected is not None and len(row) != expected:
            raise ParseError(f"row {len(rows) + 1}: expected {expected} entries, got {len(row)}",
                             lineno, None, source)
        rows.append(row)
    if not rows:
        return BitMatrix([], cols=cols or 0)
    return BitMatrix(rows)


def parse_spans(text: str, source: str = "<spans>", n: int | None = None) -> tuple[Span, ...]:
    """Parse a span file into closed 1-based spans."""
    convention = None
    spans = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if convention is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise ParseError("expected header 'convention closed' or 'convention semiopen'",
                                 lineno, 1, source)
            convention = m.group(1)
            continue
        pattern = _CLOSED if convention == "closed" else _SEMIOPEN
        m = pattern.fullmatch(line)
        if not m:
            want = "a..b" if convention == "closed" else "(a,b]"
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError(f"expected a span of the form {want}", lineno, col, source)
        a, b = int(m.group(1)), int(m.group(2))
        try:
            if convention == "closed":
                if a < 1 or b < 1 or (n is not None and (a > n or b > n)):
                    raise ValueError(f"span {a}..{b} out of range" + (f" for length {n}" if n else ""))
                spans.append(Span(a, b))
            else:
                spans.append(convert_span(a, b, n))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, None, source) from None
    if convention is None:
        raise ParseError("empty span file", 1, 1, source)
    return tuple(spans)


def read_matrix(path: str | Path, cols: int | None = None) -> BitMatrix:
    p = Path(path)
    return parse_matrix(p.read_text(), str(p), cols)


def read_spans(path: str | Path, n: int | None = None) -> tuple[Span, ...]:
    p = Path(path)
    return parse_spans(p.read_text(), str(p), n)


def read_spec(g_path, h_path, spans_path) -> CodeSpec:
    G = read_matrix(g_path)
    H = read_matrix(h_path, cols=G.cols)
    return CodeSpec(G, H, read_spans(spans_path, G.cols))


def format_matrix(M: BitMatrix) -> str:
    return "".join(" ".join(str(int(x)) for x in row) + "\n" for row in M.array)


def format_spans(spans: Sequence[Span], convention: str = "closed") -> str:
    lines = [f"convention {convention}"]
    for s in spans:
        if convention == "closed":
            lines.append(f"{s.start}..{s.end}")
        else:
            a, b = s.to_semiopen()
            lines.append(f"({a},{b}]")
    return "\n".join(lines) + "\n"


def spec_to_dict(spec: CodeSpec) -> dict:
    return {
        "G": [str(r) for r in spec.G.row_vectors()],
        "H": [str(r) for r in spec.H.row_vectors()],
        "spans": [[s.start, s.end] for s in spec.spans],
    }


def spec_from_dict(data: dict) -> CodeSpec:
    n = len(data["G"][0]) if data["G"] else 0
    G = BitMatrix(data["G"], cols=n) if data["G"] else BitMatrix([], cols=n)
    H = BitMatrix(data["H"], cols=n) if data["H"] else BitMatrix([], cols=n)
    return CodeSpec(G, H, tuple(Span(a, b) for a, b in data["spans"]))
