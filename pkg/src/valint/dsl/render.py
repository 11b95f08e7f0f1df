"""Canonical source rendering (used by `valint fmt`)."""
from __future__ import annotations

from . import ast

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "x": 3}
_NEG = 4
_POW = 5
_ATOM = 6


def _prec(e) -> int:
    if isinstance(e, ast.BinOp):
        return _POW if e.op == "^" else _PREC[e.op]
    if isinstance(e, ast.Neg):
        return _NEG
    return _ATOM


def _wrap(e, need) -> str:
    s = render_expr(e)
    return f"({s})" if _prec(e) < need else s


def render_expr(e) -> str:
    if isinstance(e, ast.Num):
        return str(e.value)
    if isinstance(e, ast.Name):
        return e.ident
    if isinstance(e, ast.Call):
        parts = [render_expr(a) for a in e.args]
        parts += [f"{k}={render_expr(v)}" for k, v in e.kwargs]
        return f"{e.func}({', '.join(parts)})"
    if isinstance(e, ast.TupleLit):
        if len(e.items) == 1:
            return f"({render_expr(e.items[0])},)"
        return "(" + ", ".join(render_expr(a) for a in e.items) + ")"
    if isinstance(e, ast.MatrixLit):
        return "[" + ", ".join("[" + ", ".join(render_expr(a) for a in r) + "]"
                               for r in e.rows) + "]"
    if isinstance(e, ast.Neg):
        return "-" + _wrap(e.operand, _NEG)
    if isinstance(e, ast.BinOp):
        if e.op == "^":
            return f"{_wrap(e.left, _ATOM)}^{_wrap(e.right, _NEG)}"
        p = _PREC[e.op]
        sep = f" {e.op} " if e.op in "+-x" else e.op
        return f"{_wrap(e.left, p)}{sep}{_wrap(e.right, p + 1)}"
    raise TypeError(f"cannot render {e!r}")


def render_stmt(s) -> str:
    if isinstance(s, ast.FieldDecl):
        return f"field {s.name} = {render_expr(s.spec)};"
    if isinstance(s, ast.Bind):
        return f"{s.kind} {s.name} = {render_expr(s.expr)};"
    if isinstance(s, ast.Compose):
        out = f"compose {s.name} = {s.source} with tau={render_expr(s.tau)}"
        if s.shift is not None:
            out += f" shift={render_expr(s.shift)}"
        return out + ";"
    if isinstance(s, ast.Translate):
        return f"translate {s.name} = {s.source} by {render_expr(s.sigma)} side={s.side};"
    if isinstance(s, ast.Print):
        return f"print {render_expr(s.expr)};"
    if isinstance(s, ast.Integrate):
        out = f"integrate {render_expr(s.expr)}"
        if s.order is not None:
            out += f" order={render_expr(s.order)}"
        return out + ";"
    if isinstance(s, ast.Iwasawa):
        return f"iwasawa {render_expr(s.expr)};"
    if isinstance(s, ast.GLIntegrate):
        return f"glintegrate {render_expr(s.expr)};"
    if isinstance(s, ast.Check):
        if s.kind == "equal":
            body = f"{render_expr(s.args[0])}, {render_expr(s.args[1])}"
        elif s.kind == "invariance":
            body = f"{render_expr(s.args[0])} by {render_expr(s.args[1])}"
        elif s.kind == "random":
            body = " ".join(["fubini"] + [f"{k}={render_expr(v)}" for k, v in s.kwargs])
        else:
            body = render_expr(s.args[0])
        return f"check {s.kind} {body};"
    raise TypeError(f"cannot render {s!r}")


def render(script: ast.Script) -> str:
    return "".join(render_stmt(s) + "\n" for s in script.statements)
