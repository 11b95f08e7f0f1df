"""Tokenizer for valint scripts."""
from __future__ import annotations

from dataclasses import dataclass

KEYWORDS = {
    "field", "let", "liftfn", "matrix", "compose", "with", "tau", "shift",
    "translate", "by", "side", "print", "integrate", "order", "iwasawa",
    "glintegrate", "check", "x",
}
PUNCT = set("=;,()[]+-*/^")


@dataclass(frozen=True)
class Span:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "kw", "punct", "eof"
    text: str
    span: Span


class LexError(Exception):
    def __init__(self, message, span):
        super().__init__(message)
        self.span = span


def tokenize(source: str):
    """Returns (tokens, errors); unknown characters become errors and are skipped."""
    tokens, errors = [], []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        span = Span(line, col)
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("num", source[i:j], span))
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, span))
        elif ch in PUNCT:
            j = i + 1
            tokens.append(Token("punct", ch, span))
        else:
            errors.append(LexError(f"unexpected character {ch!r}", span))
            j = i + 1
        col += j - i
        i = j
    tokens.append(Token("eof", "", Span(line, col)))
    return tokens, errors
