"""Syntax tree for valint scripts.  Spans never take part in equality."""
from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import Span


def _span():
    return field(default=None, compare=False, repr=False)


# -- expressions ---------------------------------------------------------------------

@dataclass
class Num:
    value: int
    span: Span = _span()


@dataclass
class Name:
    ident: str
    span: Span = _span()


@dataclass
class Call:
    func: str
    args: list
    kwargs: list  # list of (name, expr), in source order
    span: Span = _span()


@dataclass
class TupleLit:
    items: list
    span: Span = _span()


@dataclass
class MatrixLit:
    rows: list
    span: Span = _span()


@dataclass
class BinOp:
    op: str  # + - * / x ^
    left: object
    right: object
    span: Span = _span()


@dataclass
class Neg:
    operand: object
    span: Span = _span()


# -- statements ----------------------------------------------------------------------

@dataclass
class FieldDecl:
    name: str
    spec: Call
    span: Span = _span()


@dataclass
class Bind:
    kind: str  # let, liftfn, matrix
    name: str
    expr: object
    span: Span = _span()


@dataclass
class Compose:
    name: str
    source: str
    tau: object
    shift: object | None
    span: Span = _span()


@dataclass
class Translate:
    name: str
    source: str
    sigma: object
    side: str
    span: Span = _span()


@dataclass
class Print:
    expr: object
    span: Span = _span()


@dataclass
class Integrate:
    expr: object
    order: object | None
    span: Span = _span()


@dataclass
class Iwasawa:
    expr: object
    span: Span = _span()


@dataclass
class GLIntegrate:
    expr: object
    span: Span = _span()


@dataclass
class Check:
    kind: str  # fubini, equal, invariance, random
    args: list
    kwargs: list
    span: Span = _span()


@dataclass
class Script:
    statements: list
