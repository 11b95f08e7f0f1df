"""Recursive-descent parser and static name check.

``parse`` is total: it never raises on malformed input, it returns the
diagnostics instead.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .lexer import Span, Token, tokenize
from .names import FIELD_CONSTRUCTORS, FUNCTIONS, is_constant


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    span: Span
    message: str
    code: str

    def render(self) -> str:
        return f"{self.span}: {self.severity}[{self.code}]: {self.message}"


class ParseError(Exception):
    def __init__(self, message, token: Token):
        super().__init__(message)
        self.token = token


CHECK_KINDS = ("fubini", "equal", "invariance", "random")


class Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    # -- token helpers --------------------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text, kind=None) -> bool:
        tok = self.cur
        return tok.text == text and (kind is None or tok.kind == kind) and tok.kind != "eof"

    def expect(self, text, what=None) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {what or repr(text)}, found {_describe(self.cur)}", self.cur)
        return self.advance()

    def ident(self, what="a name") -> Token:
        if self.cur.kind != "ident":
            raise ParseError(f"expected {what}, found {_describe(self.cur)}", self.cur)
        return self.advance()

    def sync(self):
        """Skip past the next ';' after an error."""
        while self.cur.kind != "eof" and not self.at(";"):
            self.advance()
        if self.at(";"):
            self.advance()

    # -- statements -----------------------------------------------------------------

    def script(self, diags):
        stmts = []
        while self.cur.kind != "eof":
            start = self.pos
            try:
                stmts.append(self.statement())
            except ParseError as e:
                diags.append(Diagnostic("error", e.token.span, str(e), "E001"))
                if self.pos == start and self.cur.kind != "eof" and not self.at(";"):
                    self.advance()
                self.sync()
        return ast.Script(stmts)

    def statement(self):
        tok = self.cur
        span = tok.span
        if tok.kind != "kw":
            raise ParseError(f"expected a statement, found {_describe(tok)}", tok)
        kw = tok.text
        self.advance()
        if kw == "field":
            name = self.ident().text
            self.expect("=")
            spec = self.expr()
            if not isinstance(spec, ast.Call) or spec.func not in FIELD_CONSTRUCTORS:
                raise ParseError("a field must be declared with Qp(...), Fpu(...) or Series(...)", tok)
            node = ast.FieldDecl(name, spec, span)
        elif kw in ("let", "liftfn", "matrix"):
            name = self.ident().text
            self.expect("=")
            node = ast.Bind(kw, name, self.expr(), span)
        elif kw == "compose":
            name = self.ident().text
            self.expect("=")
            source = self.ident("the function to compose").text
            self.expect("with")
            self.expect("tau")
            self.expect("=")
            tau = self.expr()
            shift = None
            if self.at("shift"):
                self.advance()
                self.expect("=")
                shift = self.expr()
            node = ast.Compose(name, source, tau, shift, span)
        elif kw == "translate":
            name = self.ident().text
            self.expect("=")
            source = self.ident("the function to translate").text
            self.expect("by")
            sigma = self.expr()
            side = "right"
            if self.at("side"):
                self.advance()
                self.expect("=")
                side_tok = self.ident("left or right")
                if side_tok.text not in ("left", "right"):
                    raise ParseError(f"side must be left or right, not {side_tok.text!r}", side_tok)
                side = side_tok.text
            node = ast.Translate(name, source, sigma, side, span)
        elif kw == "print":
            node = ast.Print(self.expr(), span)
        elif kw == "integrate":
            e = self.expr()
            order = None
            if self.at("order"):
                self.advance()
                self.expect("=")
                order = self.expr()
            node = ast.Integrate(e, order, span)
        elif kw == "iwasawa":
            node = ast.Iwasawa(self.expr(), span)
        elif kw == "glintegrate":
            node = ast.GLIntegrate(self.expr(), span)
        elif kw == "check":
            node = self.check(span)
        else:
            raise ParseError(f"'{kw}' cannot start a statement", tok)
        self.expect(";", "';'")
        return node

    def check(self, span):
        tok = self.ident("a check kind (fubini, equal, invariance, random)")
        kind = tok.text
        if kind == "fubini":
            return ast.Check(kind, [self.expr()], [], span)
        if kind == "equal":
            a = self.expr()
            self.expect(",")
            return ast.Check(kind, [a, self.expr()], [], span)
        if kind == "invariance":
            phi = self.expr()
            self.expect("by")
            return ast.Check(kind, [phi, self.expr()], [], span)
        if kind == "random":
            what = self.ident("fubini")
            if what.text != "fubini":
                raise ParseError(f"unknown random check {what.text!r}", what)
            kwargs = []
            while self.cur.kind == "ident":
                key = self.advance().text
                self.expect("=")
                kwargs.append((key, self.expr()))
            return ast.Check(kind, [], kwargs, span)
        raise ParseError(f"unknown check kind {kind!r}", tok)

    # -- expressions ----------------------------------------------------------------

    def expr(self):
        left = self.term()
        while self.at("+", "punct") or self.at("-", "punct"):
            op = self.advance()
            left = ast.BinOp(op.text, left, self.term(), op.span)
        return left

    def term(self):
        left = self.boxprod()
        while self.at("*", "punct") or self.at("/", "punct"):
            op = self.advance()
            left = ast.BinOp(op.text, left, self.boxprod(), op.span)
        return left

    def boxprod(self):
        left = self.unary()
        while self.at("x", "kw"):
            op = self.advance()
            left = ast.BinOp("x", left, self.unary(), op.span)
        return left

    def unary(self):
        if self.at("-", "punct"):
            op = self.advance()
            return ast.Neg(self.unary(), op.span)
        return self.power()

    def power(self):
        base = self.primary()
        if self.at("^", "punct"):
            op = self.advance()
            return ast.BinOp("^", base, self.unary(), op.span)
        return base

    def primary(self):
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            return ast.Num(int(tok.text), tok.span)
        if tok.kind == "ident":
            self.advance()
            if self.at("("):
                return self.call(tok)
            return ast.Name(tok.text, tok.span)
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return ast.TupleLit([], tok.span)
            first = self.expr()
            if self.at(")"):
                self.advance()
                return first
            items = [first]
            while self.at(","):
                self.advance()
                if self.at(")"):
                    break
                items.append(self.expr())
            self.expect(")", "')'")
            return ast.TupleLit(items, tok.span)
        if self.at("["):
            self.advance()
            rows = []
            while True:
                row_tok = self.expect("[", "'[' starting a matrix row")
                row = [self.expr()]
                while self.at(","):
                    self.advance()
                    row.append(self.expr())
                self.expect("]", "']'")
                rows.append(row)
                if self.at(","):
                    self.advance()
                    continue
                break
            self.expect("]", "']'")
            if len({len(r) for r in rows}) != 1:
                raise ParseError("matrix rows have different lengths", row_tok)
            return ast.MatrixLit(rows, tok.span)
        raise ParseError(f"expected an expression, found {_describe(tok)}", tok)

    def call(self, name_tok):
        self.expect("(")
        args, kwargs = [], []
        if not self.at(")"):
            while True:
                if self.cur.kind in ("ident", "kw") and self.peek().text == "=" \
                        and self.peek().kind == "punct":
                    key = self.advance().text
                    self.advance()
                    kwargs.append((key, self.expr()))
                else:
                    if kwargs:
                        raise ParseError("positional argument after keyword argument", self.cur)
                    args.append(self.expr())
                if not self.at(","):
                    break
                self.advance()
        self.expect(")", "')'")
        return ast.Call(name_tok.text, args, kwargs, name_tok.span)


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    return repr(tok.text)


# -- static checks ---------------------------------------------------------------------

def _names_in(e, out):
    if isinstance(e, ast.Name):
        out.append(e)
    elif isinstance(e, ast.Call):
        out.append(e)
        for a in e.args:
            _names_in(a, out)
        for _, a in e.kwargs:
            _names_in(a, out)
    elif isinstance(e, ast.TupleLit):
        for a in e.items:
            _names_in(a, out)
    elif isinstance(e, ast.MatrixLit):
        for r in e.rows:
            for a in r:
                _names_in(a, out)
    elif isinstance(e, ast.BinOp):
        _names_in(e.left, out)
        _names_in(e.right, out)
    elif isinstance(e, ast.Neg):
        _names_in(e.operand, out)


def _stmt_parts(s):
    """(bound name or None, [(source name, span)], [expressions])."""
    if isinstance(s, ast.FieldDecl):
        return s.name, [], [s.spec]
    if isinstance(s, ast.Bind):
        return s.name, [], [s.expr]
    if isinstance(s, ast.Compose):
        return s.name, [(s.source, s.span)], [e for e in (s.tau, s.shift) if e is not None]
    if isinstance(s, ast.Translate):
        return s.name, [(s.source, s.span)], [s.sigma]
    if isinstance(s, ast.Integrate):
        return None, [], [e for e in (s.expr, s.order) if e is not None]
    if isinstance(s, ast.Check):
        return None, [], list(s.args) + [e for _, e in s.kwargs]
    return None, [], [s.expr]


def resolve(script: ast.Script):
    diags = []
    bound = set()
    for s in script.statements:
        name, sources, exprs = _stmt_parts(s)
        refs = []
        for e in exprs:
            _names_in(e, refs)
        for src, span in sources:
            if src not in bound:
                diags.append(Diagnostic("error", span, f"unbound name '{src}'", "E002"))
        for r in refs:
            if isinstance(r, ast.Call):
                if r.func not in FUNCTIONS:
                    diags.append(Diagnostic("error", r.span, f"unknown function '{r.func}'", "E005"))
                elif r.func in FIELD_CONSTRUCTORS and not isinstance(s, ast.FieldDecl):
                    diags.append(Diagnostic("error", r.span,
                                            f"'{r.func}' may only appear in a field declaration", "E005"))
            elif r.ident not in bound and not is_constant(r.ident):
                diags.append(Diagnostic("error", r.span, f"unbound name '{r.ident}'", "E002"))
        if name is not None:
            if name in bound or is_constant(name) or name in FUNCTIONS:
                diags.append(Diagnostic("error", s.span, f"name '{name}' is already bound", "E003"))
            bound.add(name)
    return diags


def parse(source: str):
    """Returns (Script, diagnostics); the script is only runnable if there are none."""
    diags = []
    try:
        tokens, lex_errors = tokenize(source)
        for e in lex_errors:
            diags.append(Diagnostic("error", e.span, str(e), "E001"))
        script = Parser(tokens).script(diags)
        if not diags:
            diags.extend(resolve(script))
    except RecursionError:
        diags.append(Diagnostic("error", Span(1, 1), "expression nested too deeply", "E001"))
        script = ast.Script([])
    diags.sort(key=lambda d: (d.span.line, d.span.col))
    return script, diags
