"""Tokenizer for ``.msl`` source text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from theoria.errors import LexError
from theoria.syntax import Pos

KEYWORDS = frozenset({
    "Theory", "combine", "extended", "by", "over", "axiom", "forall",
    "Inductive", "case", "of", "instance", "via", "type", "data", "not",
    "and", "or", "implies", "defined-in",
})

# Fixed operator class; every operator may carry trailing primes (``+'``).
OPERATORS = ("**", "*", "+", "-", "/", "<=")

_OP_CHARS = r"[*+\-/<=]+"
_WORD = r"[A-Za-z0-9][A-Za-z0-9']*"
_IDENT = rf"(?:{_WORD}|_)(?:_(?:[A-Za-z0-9']+|{_OP_CHARS})|_)*"

_TOKEN_SPEC = [
    ("ws", r"[ \t\r]+"),
    ("newline", r"\n"),
    ("comment", r"%[^\n]*"),
    ("kw_defined_in", r"defined-in(?![A-Za-z0-9_'])"),
    ("ident", _IDENT),
    ("template", r"\$[A-Za-z0-9]+"),
    ("punct", r"\|->|->|<:|:=|[{}\[\]().,;:|?&#=]"),
    ("op", r"(?:\*\*|\*|\+|-|/|<=)'*"),
]
_MASTER = re.compile("|".join(f"(?P<{k}>{v})" for k, v in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str    # 'kw', 'ident', 'op', 'punct' or 'eof'
    text: str
    pos: Pos
    newline_before: bool = False   # first token on its line
    space_before: bool = False     # whitespace separates it from the last token

    def is_(self, kind: str, text: str | None = None) -> bool:
        return self.kind == kind and (text is None or self.text == text)

    def __repr__(self) -> str:
        return f"{self.kind} {self.text}"


def tokenize(text: str, filename: str = "<string>", *,
             template: bool = False) -> list:
    """Split ``text`` into tokens; the result does not include ``eof``.

    ``template`` admits ``$1``-style placeholders (macro table files).
    """
    tokens = []
    line, line_start, i = 1, 0, 0
    newline, space = True, False
    n = len(text)
    while i < n:
        m = _MASTER.match(text, i)
        if m is None or (m.lastgroup == "template" and not template):
            raise LexError(f"unrecognized character {text[i]!r}",
                           Pos(filename, line, i - line_start + 1))
        kind, value = m.lastgroup, m.group()
        if kind == "newline":
            line += 1
            line_start = m.end()
            newline = True
        elif kind in ("ws", "comment"):
            space = True
        else:
            if kind == "kw_defined_in":
                kind = "kw"
            elif kind == "template":
                kind = "ident"
            elif kind == "ident" and value in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, value,
                                Pos(filename, line, i - line_start + 1),
                                newline, space or newline))
            newline = space = False
        i = m.end()
    return tokens


def is_operator(name: str) -> bool:
    return name.rstrip("'") in OPERATORS


def is_identifier(name: str) -> bool:
    return re.fullmatch(_IDENT, name) is not None and name not in KEYWORDS
