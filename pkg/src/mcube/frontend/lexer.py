"""Tokenizer for ``.mct`` sources."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..typechecker import CheckError, Diagnostic, Span

KEYWORDS = {
    "def", "evidence", "let", "in", "U", "Unit", "tt", "Empty", "Bool", "true", "false",
    "inl", "inr", "case", "if", "absurd", "transp", "hcomp", "PathP", "Path",
    "transport", "transpFill", "comp", "hfill", "refl", "J", "transportRefl",
    "SqFill", "SqPFill", "isSet",
}

_SYMBOLS = [":=", "->", "/\\", "\\/", ".1", ".2", "\\", "(", ")", "[", "]", "<", ">",
            ",", ":", ".", "@", "~", "+", "*", "=", "0", "1"]

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>--[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>" + "|".join(re.escape(x) for x in _SYMBOLS) + ")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "sym" | "eof"
    text: str
    line: int
    col: int

    @property
    def end_col(self) -> int:
        return self.col + len(self.text)

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


class ParseError(CheckError):
    pass


def syntax_error(message: str, line: int, col: int, end_col: int | None = None,
                 path: str | None = None, notes=()) -> ParseError:
    span = Span(line, col, line, end_col if end_col is not None else col)
    return ParseError(Diagnostic(message, span, notes=list(notes), path=path))


def tokenize(source: str, path: str | None = None) -> list[Token]:
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise syntax_error(f"syntax error: unexpected character {source[pos]!r}",
                               line, col, col + 1, path)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind in ("ident", "sym"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out
