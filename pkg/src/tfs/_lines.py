"""Tokenizer for the line-based file grammars (signature, fs, interp)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError

IDENT = re.compile(r"[A-Za-z0-9_-]+\Z")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def tokenize(text: str) -> Iterator[list[Token]]:
    """Yield the tokens of each non-blank line, comments removed.

    Columns are 1-based.  Every token must be an identifier or one of the
    directive keywords, which share the identifier lexicon.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [
            Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)
        ]
        if not tokens:
            continue
        for tok in tokens:
            if not IDENT.match(tok.text):
                raise ParseError(f"invalid identifier {tok.text!r}", tok.line, tok.column)
        yield tokens


def expect_arity(tokens: list[Token], n: int, usage: str) -> None:
    if len(tokens) != n:
        head = tokens[0]
        column = tokens[n].column if len(tokens) > n else head.column
        raise ParseError(f"expected `{usage}`", head.line, column)


def valid_ident(name: str) -> bool:
    return bool(IDENT.match(name))
