"""Executes parsed scripts and produces the canonical transcript."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .. import random_gen
from ..errors import ValintError
from ..gamma_values import GammaValue, GaussQ
from ..lift_integrate import FFunction, fubini_report, lift
from ..linalg import Matrix
from ..local_field import Ball, KElem, LaurentFF, LocalFieldSpec, PAdic
from ..matrix_integrals import (GLFunction, det_abs, gl_integral, gl_translate, iwasawa,
                                lift_group, unit_det_cell)
from ..step_functions import DEFAULT_DEPTH_LIMIT, Box, StepFunction
from ..valued_field import FElem, ValuedFieldSpec
from . import ast
from .parser import Diagnostic, parse
from .names import is_constant


@dataclass
class Options:
    rank: int = 1
    prec: int = 20
    depth: int = 8
    depth_limit: int = DEFAULT_DEPTH_LIMIT
    seed: int = 0


class DslError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


@dataclass
class RunResult:
    lines: list
    ok: bool

    @property
    def transcript(self) -> str:
        return "".join(line + "\n" for line in self.lines)


# -- rendering -----------------------------------------------------------------------

def render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, (GammaValue, KElem, FElem, Matrix)):
        return v.render()
    if isinstance(v, Ball):
        return f"ball({v.center.render()}, {v.depth})"
    if isinstance(v, Box):
        return " x ".join(render_value(b) for b in v.balls)
    if isinstance(v, StepFunction):
        if not v.terms:
            return f"step(dim {v.dim}): 0"
        parts = [f"({c.render()})*[{render_value(b)}]" for b, c in v.terms]
        return f"step(dim {v.dim}): " + " + ".join(parts)
    if isinstance(v, FFunction):
        k = len(v.terms)
        return f"ffunction(dim {v.dim}, {k} term{'s' if k != 1 else ''})"
    if isinstance(v, GLFunction):
        return f"glfunction(N={v.N}, {v.description})"
    if isinstance(v, LocalFieldSpec):
        return f"{v.name} (prec {v.default_precision})"
    if isinstance(v, ValuedFieldSpec):
        return f"{v.base.name}(({', '.join(v.variables)})) (depth {v.depth})"
    if isinstance(v, tuple):
        return "(" + ", ".join(render_value(x) for x in v) + ")"
    raise DslError("E004", f"cannot display a value of type {type(v).__name__}")


def _kind(v) -> str:
    names = {Fraction: "number", int: "number", KElem: "residue-field element",
             FElem: "element of F", GammaValue: "C(Gamma) value", Matrix: "matrix",
             Ball: "ball", Box: "box", StepFunction: "step function",
             FFunction: "function on F^n", GLFunction: "function on GL_N", tuple: "tuple"}
    return names.get(type(v), type(v).__name__)


class Runner:
    def __init__(self, options: Options | None = None):
        self.opts = options or Options()
        self.env: dict = {}
        self.K: LocalFieldSpec | None = None
        self.F: ValuedFieldSpec | None = None
        self.lines: list = []
        self.ok = True

    @property
    def rank(self) -> int:
        return self.F.rank if self.F else self.opts.rank

    # -- driver ---------------------------------------------------------------------

    def run(self, script: ast.Script) -> RunResult:
        for s in script.statements:
            try:
                self.execute(s)
            except DslError as e:
                self.error(s, e.code, str(e))
            except ValintError as e:
                self.error(s, e.code, str(e) or type(e).__name__)
            except ZeroDivisionError:
                self.error(s, "E013", "division by zero")
            except (ValueError, TypeError) as e:
                self.error(s, "E008", str(e))
            except RecursionError:
                self.error(s, "E008", "expression nested too deeply")
        return RunResult(self.lines, self.ok)

    def error(self, stmt, code, message):
        self.ok = False
        self.lines.append(Diagnostic("error", stmt.span, message, code).render())

    def bind(self, name, value):
        self.env[name] = value

    # -- statements -----------------------------------------------------------------

    def execute(self, s):
        if isinstance(s, ast.FieldDecl):
            self.declare_field(s)
        elif isinstance(s, ast.Bind):
            v = self.eval(s.expr)
            if s.kind == "liftfn" and not isinstance(v, FFunction):
                raise DslError("E004", f"liftfn needs a function on F^n, got a {_kind(v)}")
            if s.kind == "matrix":
                v = self.as_matrix(v)
            self.bind(s.name, v)
        elif isinstance(s, ast.Compose):
            f = self.lookup(s.source)
            if not isinstance(f, FFunction):
                raise DslError("E004", f"compose needs a function on F^n, got a {_kind(f)}")
            tau = self.as_fmatrix(self.eval(s.tau))
            shift = None if s.shift is None else self.as_fvector(self.eval(s.shift), f.dim)
            self.bind(s.name, f.compose(tau, shift))
        elif isinstance(s, ast.Translate):
            phi = self.lookup(s.source)
            if not isinstance(phi, GLFunction):
                raise DslError("E004", f"translate needs a function on GL_N, got a {_kind(phi)}")
            self.bind(s.name, gl_translate(phi, self.as_fmatrix(self.eval(s.sigma)), s.side))
        elif isinstance(s, ast.Print):
            self.lines.append(render_value(self.eval(s.expr)))
        elif isinstance(s, ast.Integrate):
            self.lines.append("= " + self.integrate(s).render())
        elif isinstance(s, ast.Iwasawa):
            fac = iwasawa(self.as_fmatrix(self.eval(s.expr)))
            self.lines.append(f"A = {fac.A.render()}")
            self.lines.append(f"U = {fac.U.render()}")
            self.lines.append(f"Lambda = {fac.Lam.render()}")
        elif isinstance(s, ast.GLIntegrate):
            phi = self.eval(s.expr)
            if not isinstance(phi, GLFunction):
                raise DslError("E004", f"glintegrate needs a function on GL_N, got a {_kind(phi)}")
            self.lines.append("= " + gl_integral(phi).render())
        elif isinstance(s, ast.Check):
            self.check(s)
        else:
            raise DslError("E008", f"unsupported statement {type(s).__name__}")

    def declare_field(self, s):
        spec = s.spec
        kw = self.kwargs(spec, {"Qp": ("prec",), "Fpu": ("prec",),
                                "Series": ("rank", "depth")}[spec.func])
        if spec.func in ("Qp", "Fpu"):
            if len(spec.args) != 1:
                raise DslError("E005", f"{spec.func} takes one positional argument, the prime")
            p = self.as_int(self.eval(spec.args[0]))
            prec = self.as_int(kw["prec"]) if "prec" in kw else self.opts.prec
            K = (PAdic if spec.func == "Qp" else LaurentFF)(p, prec)
            self.K = K
            self.F = None
            self.bind(s.name, K)
            return
        if len(spec.args) != 1:
            raise DslError("E005", "Series takes one positional argument, the residue field")
        K = self.eval(spec.args[0])
        if not isinstance(K, LocalFieldSpec):
            raise DslError("E004", f"Series needs a residue field, got a {_kind(K)}")
        rank = self.as_int(kw["rank"]) if "rank" in kw else self.opts.rank
        depth = self.as_int(kw["depth"]) if "depth" in kw else self.opts.depth
        F = ValuedFieldSpec(K, rank, depth)
        self.K, self.F = K, F
        self.bind(s.name, F)

    def integrate(self, s) -> GammaValue:
        v = self.eval(s.expr)
        if isinstance(v, StepFunction):
            if s.order is not None:
                return self.step_repeated(v, self.order(self.eval(s.order), v.dim))
            return v.haar_integral()
        if isinstance(v, FFunction):
            order = None if s.order is None else self.order(self.eval(s.order), v.dim)
            return v.repeated_integral(order)
        if isinstance(v, GLFunction):
            if s.order is not None:
                return v.extension.repeated_integral(self.order(self.eval(s.order), v.N ** 2))
            return gl_integral(v)
        raise DslError("E004", f"cannot integrate a {_kind(v)}")

    @staticmethod
    def step_repeated(g: StepFunction, order) -> GammaValue:
        remaining = list(range(g.dim))
        for c in order:
            pos = remaining.index(c)
            g = g.partial_integral(pos)
            remaining.pop(pos)
        return g.haar_integral()

    def order(self, v, n):
        if not isinstance(v, tuple):
            v = (v,)
        idx = [self.as_int(x) - 1 for x in v]
        if sorted(idx) != list(range(n)):
            raise DslError("E008", f"order must be a permutation of 1..{n}")
        return idx

    def check(self, s):
        if s.kind == "fubini":
            f = self.eval(s.args[0])
            if isinstance(f, StepFunction):
                vals = [self.step_repeated(f, o) for o in itertools.permutations(range(f.dim))]
                ref = f.haar_integral()
                passed = all(v == ref for v in vals)
                self.report(s, "FUBINI", passed, f"value={ref.render()}")
                return
            if not isinstance(f, FFunction):
                raise DslError("E004", f"check fubini needs a function, got a {_kind(f)}")
            rep = fubini_report(f)
            if rep.passed:
                self.report(s, "FUBINI", True, f"value={rep.closed_form.render()}")
            else:
                self.report(s, "FUBINI", False, rep.render())
        elif s.kind == "equal":
            a, b = (self.eval(e) for e in s.args)
            if isinstance(a, StepFunction) and isinstance(b, StepFunction):
                same = a.equals(b)
            else:
                a, b = self.promote(a, b)
                same = a == b
            detail = "" if same else f"lhs={render_value(a)} rhs={render_value(b)}"
            self.report(s, "EQUAL", same, detail)
        elif s.kind == "invariance":
            phi = self.eval(s.args[0])
            if not isinstance(phi, GLFunction):
                raise DslError("E004", f"check invariance needs a function on GL_N, got a {_kind(phi)}")
            sigma = self.as_fmatrix(self.eval(s.args[1]))
            base = gl_integral(phi)
            left = gl_integral(gl_translate(phi, sigma, "left"))
            right = gl_integral(gl_translate(phi, sigma, "right"))
            passed = left == base and right == base
            detail = f"value={base.render()}" if passed else \
                f"value={base.render()} left={left.render()} right={right.render()}"
            self.report(s, "INVARIANCE", passed, detail)
        elif s.kind == "random":
            self.check_random(s)

    def check_random(self, s):
        F = self.need_F()
        kw = dict(s.kwargs)
        unknown = set(kw) - {"n", "count"}
        if unknown:
            raise DslError("E005", f"unknown option {sorted(unknown)[0]!r} for check random")
        n = self.as_int(self.eval(kw["n"])) if "n" in kw else 2
        count = self.as_int(self.eval(kw["count"])) if "count" in kw else 5
        if not 1 <= n <= 4 or not 0 <= count <= 1000:
            raise DslError("E008", "check random needs 1 <= n <= 4 and 0 <= count <= 1000")
        rng = random.Random(f"{self.opts.seed}:{s.span.line}")
        good = 0
        for _ in range(count):
            f = random_gen.random_lift(F, n, rng).compose(random_gen.random_fmatrix(F, n, rng))
            good += fubini_report(f).passed
        self.report(s, "RANDOM FUBINI", good == count, f"{good}/{count}")

    def report(self, s, label, passed, detail):
        head = f"{label} {'PASS' if passed else 'FAIL'}"
        if detail and "\n" in detail:
            self.lines.append(head)
            self.lines.extend(detail.split("\n"))
        else:
            self.lines.append(f"{head} {detail}".rstrip())
        if not passed:
            self.error(s, "E007", f"{label.lower()} check failed")

    # -- expressions ----------------------------------------------------------------

    def lookup(self, name):
        if name not in self.env:
            raise DslError("E002", f"'{name}' is unavailable after an earlier error")
        return self.env[name]

    def eval(self, e):
        if isinstance(e, ast.Num):
            return Fraction(e.value)
        if isinstance(e, ast.Name):
            if e.ident in self.env or not is_constant(e.ident):
                return self.lookup(e.ident)
            return self.constant(e.ident)
        if isinstance(e, ast.TupleLit):
            return tuple(self.eval(x) for x in e.items)
        if isinstance(e, ast.MatrixLit):
            return self.as_matrix([[self.eval(x) for x in r] for r in e.rows])
        if isinstance(e, ast.Neg):
            v = self.eval(e.operand)
            if isinstance(v, (Fraction, KElem, FElem, GammaValue, StepFunction)):
                return -v
            if isinstance(v, FFunction):
                return v.scale(-1)
            raise DslError("E004", f"cannot negate a {_kind(v)}")
        if isinstance(e, ast.BinOp):
            return self.binop(e.op, self.eval(e.left), self.eval(e.right))
        if isinstance(e, ast.Call):
            return self.call(e)
        raise DslError("E008", f"unsupported expression {type(e).__name__}")

    def constant(self, name):
        if name == "i":
            return GammaValue.const(GaussQ(0, 1), self.rank)
        if name in ("u", "pi"):
            K = self.need_K()
            if name == "u" and K.kind != "laurent":
                raise DslError("E004", "'u' is only defined for Fpu fields; use 'pi'")
            return K.uniformizer()
        head, idx = name[0], name[1:]
        k = int(idx) - 1 if idx else 0
        if idx == "" and self.rank > 1 and head == "t":
            raise DslError("E004", "in rank > 1 use t1, t2, ...")
        if k >= self.rank:
            raise DslError("E004", f"'{name}' needs rank at least {k + 1}")
        if head == "t":
            return self.need_F().var(k)
        g = [0] * self.rank
        g[k] = 1
        return GammaValue.X(tuple(g))

    def need_K(self) -> LocalFieldSpec:
        if self.K is None:
            raise DslError("E006", "no residue field declared (use: field K = Qp(3);)")
        return self.K

    def need_F(self) -> ValuedFieldSpec:
        if self.F is None:
            raise DslError("E006", "no valued field declared (use: field F = Series(K);)")
        return self.F

    # -- coercions ------------------------------------------------------------------

    @staticmethod
    def as_int(v) -> int:
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        raise DslError("E004", f"expected an integer, got {render_value(v)}")

    def as_K(self, v) -> KElem:
        if isinstance(v, Fraction):
            return self.need_K()(v)
        if isinstance(v, KElem):
            return v
        if isinstance(v, FElem) and v.is_exact and set(v.terms) <= {v.field.origin}:
            return v.coefficient(v.field.origin)
        raise DslError("E004", f"expected a residue-field element, got a {_kind(v)}")

    def as_F(self, v) -> FElem:
        if isinstance(v, (Fraction, KElem)):
            return self.need_F()(v)
        if isinstance(v, FElem):
            return v
        raise DslError("E004", f"expected an element of F, got a {_kind(v)}")

    def as_gamma(self, v) -> GammaValue:
        if isinstance(v, Fraction):
            return GammaValue.const(v, self.rank)
        if isinstance(v, GammaValue):
            return v
        raise DslError("E004", f"expected a C(Gamma) value, got a {_kind(v)}")

    def as_group(self, v) -> tuple:
        if self.rank == 1 and isinstance(v, Fraction):
            return (self.as_int(v),)
        if isinstance(v, tuple) and len(v) == self.rank:
            return tuple(self.as_int(x) for x in v)
        raise DslError("E004", f"expected an element of Z^{self.rank}, got {render_value(v)}")

    def as_matrix(self, v) -> Matrix:
        if isinstance(v, Matrix):
            return v
        if not isinstance(v, list):
            raise DslError("E004", f"expected a matrix, got a {_kind(v)}")
        flat = [x for r in v for x in r]
        if any(isinstance(x, FElem) for x in flat):
            return Matrix(self.need_F(), [[self.as_F(x) for x in r] for r in v])
        return Matrix(self.need_K(), [[self.as_K(x) for x in r] for r in v])

    def as_fmatrix(self, v) -> Matrix:
        M = self.as_matrix(v)
        F = self.need_F()
        if M.field == F:
            return M
        return M.map(F, F)

    def as_kmatrix(self, v) -> Matrix:
        M = self.as_matrix(v)
        if isinstance(M.field, LocalFieldSpec):
            return M
        return M.map(self.as_K, self.need_K())

    def as_fvector(self, v, n) -> tuple:
        if not isinstance(v, tuple):
            v = (v,)
        if len(v) != n:
            raise DslError("E008", f"expected {n} coordinates, got {len(v)}")
        return tuple(self.as_F(x) for x in v)

    def as_kvector(self, v, n) -> tuple:
        if not isinstance(v, tuple):
            v = (v,)
        if len(v) != n:
            raise DslError("E008", f"expected {n} coordinates, got {len(v)}")
        return tuple(self.as_K(x) for x in v)

    def promote(self, a, b):
        """Bring two scalars to a common type."""
        level = {Fraction: 0, KElem: 1, FElem: 2}
        if type(a) in level and type(b) in level:
            top = max(level[type(a)], level[type(b)])
            conv = (lambda x: x, self.as_K, self.as_F)[top]
            return conv(a), conv(b)
        if isinstance(a, GammaValue) or isinstance(b, GammaValue):
            return self.as_gamma(a), self.as_gamma(b)
        if type(a) is type(b):
            return a, b
        raise DslError("E004", f"cannot combine a {_kind(a)} with a {_kind(b)}")

    def binop(self, op, a, b):
        if op == "x":
            if isinstance(a, (Ball, Box)) and isinstance(b, (Ball, Box)):
                left = a.balls if isinstance(a, Box) else (a,)
                right = b.balls if isinstance(b, Box) else (b,)
                return Box(left + right)
            raise DslError("E004", f"'x' multiplies balls and boxes, not a {_kind(a)} and a {_kind(b)}")
        if op == "^":
            k = self.as_int(b)
            if isinstance(a, (Fraction, KElem, FElem, GammaValue)):
                if isinstance(a, Fraction) and not a and k < 0:
                    raise ZeroDivisionError("0 to a negative power")
                return a ** k
            raise DslError("E004", f"cannot raise a {_kind(a)} to a power")
        for cls in (StepFunction, FFunction):
            if isinstance(a, cls) or isinstance(b, cls):
                return self.function_op(op, a, b, cls)
        if isinstance(a, Matrix) or isinstance(b, Matrix):
            if op == "*" and isinstance(a, Matrix) and isinstance(b, Matrix):
                if a.field != b.field:
                    a, b = self.as_fmatrix(a), self.as_fmatrix(b)
                return a @ b
            raise DslError("E004", "matrices can only be multiplied with each other")
        a, b = self.promote(a, b)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        return a / b

    def function_op(self, op, a, b, cls):
        if op in "+-":
            if not (isinstance(a, cls) and isinstance(b, cls)):
                raise DslError("E004", f"cannot add a {_kind(a)} and a {_kind(b)}")
            if a.dim != b.dim:
                raise DslError("E008", f"dimension mismatch: {a.dim} vs {b.dim}")
            if cls is StepFunction:
                return a + b if op == "+" else a - b
            return a + b if op == "+" else a + b.scale(-1)
        if op == "*":
            f, c = (a, b) if isinstance(a, cls) else (b, a)
            if isinstance(c, cls):
                raise DslError("E004", "functions cannot be multiplied with each other")
            return f.scale(self.as_gamma(c))
        if op == "/" and isinstance(a, cls) and not isinstance(b, cls):
            return a.scale(GammaValue.one(self.rank) / self.as_gamma(b))
        raise DslError("E004", f"unsupported operation '{op}' on a {_kind(a)}")

    # -- builtin functions ----------------------------------------------------------

    def kwargs(self, call, allowed) -> dict:
        out = {}
        for k, v in call.kwargs:
            if k not in allowed:
                raise DslError("E005", f"{call.func}() has no argument '{k}'")
            if k in out:
                raise DslError("E005", f"argument '{k}' given twice")
            out[k] = self.eval(v)
        return out

    def args(self, call, lo, hi=None):
        hi = lo if hi is None else hi
        if not lo <= len(call.args) <= hi:
            want = str(lo) if lo == hi else f"{lo} to {hi}"
            raise DslError("E005", f"{call.func}() takes {want} positional arguments, "
                                   f"got {len(call.args)}")
        return [self.eval(a) for a in call.args]

    def step(self, v) -> StepFunction:
        if not isinstance(v, StepFunction):
            raise DslError("E004", f"expected a step function, got a {_kind(v)}")
        return v

    def coordinate(self, v, n) -> int:
        r = self.as_int(v)
        if not 1 <= r <= n:
            raise DslError("E008", f"coordinate {r} out of range 1..{n}")
        return r - 1

    def call(self, c: ast.Call):
        fn = c.func
        if fn == "ball":
            self.kwargs(c, ())
            center, depth = self.args(c, 2)
            return Ball(self.as_K(center), self.as_int(depth))
        if fn == "indicator":
            kw = self.kwargs(c, ("coeff",))
            (b,) = self.args(c, 1)
            if isinstance(b, Ball):
                b = Box((b,))
            if not isinstance(b, Box):
                raise DslError("E004", f"indicator needs a ball or box, got a {_kind(b)}")
            coeff = self.as_gamma(kw.get("coeff", Fraction(1)))
            return StepFunction(b.balls[0].field, b.dim, [(b, coeff)], self.rank)
        if fn == "canonical":
            self.kwargs(c, ())
            (g,) = self.args(c, 1)
            return self.step(g).canonical(self.opts.depth_limit)
        if fn == "pullback":
            self.kwargs(c, ())
            vals = self.args(c, 2, 3)
            g = self.step(vals[0])
            A = self.as_kmatrix(vals[1])
            b = self.as_kvector(vals[2], g.dim) if len(vals) == 3 else None
            return g.affine_pullback(A, b, self.opts.depth_limit)
        if fn == "section":
            self.kwargs(c, ())
            g, r, v = self.args(c, 3)
            g = self.step(g)
            return g.section(self.coordinate(r, g.dim), self.as_K(v))
        if fn == "partial":
            self.kwargs(c, ())
            f, r = self.args(c, 2)
            if isinstance(f, (StepFunction, FFunction)):
                return f.partial_integral(self.coordinate(r, f.dim))
            raise DslError("E004", f"partial needs a function, got a {_kind(f)}")
        if fn == "unitcell":
            kw = self.kwargs(c, ("depth",))
            (N,) = self.args(c, 1)
            depth = self.as_int(kw.get("depth", Fraction(1)))
            N = self.as_int(N)
            if not 1 <= N <= 3 or not 1 <= depth <= 2:
                raise DslError("E008", "unitcell needs 1 <= N <= 3 and depth 1 or 2")
            return unit_det_cell(self.need_K(), N, depth, self.rank)
        if fn in ("abs", "nu", "residue", "inv"):
            self.kwargs(c, ())
            (x,) = self.args(c, 1)
            if not isinstance(x, (KElem, FElem)):
                x = self.as_F(x) if self.F else self.as_K(x)
            if fn == "abs":
                return x.abs()
            if fn == "nu":
                v = x.valuation if isinstance(x, KElem) else x.nu()
                if v == float("inf"):
                    raise DslError("E013", "valuation of zero")
                if isinstance(v, int):
                    return Fraction(v)
                return Fraction(v[0]) if len(v) == 1 else tuple(Fraction(k) for k in v)
            if fn == "residue":
                if isinstance(x, KElem):
                    raise DslError("E004", "residue needs an element of F")
                return x.residue()
            return x.inverse()
        if fn in ("det", "detabs"):
            self.kwargs(c, ())
            (M,) = self.args(c, 1)
            M = self.as_matrix(M)
            if fn == "det":
                return M.det()
            if isinstance(M.field, LocalFieldSpec):
                d = M.det()
                if not d:
                    raise DslError("E011", "matrix is singular")
                return d.abs()
            return det_abs(M)
        if fn == "eval":
            self.kwargs(c, ())
            f, pt = self.args(c, 2)
            if isinstance(f, StepFunction):
                return f.eval(self.as_kvector(pt, f.dim))
            if isinstance(f, FFunction):
                return f.eval(self.as_fvector(pt, f.dim))
            raise DslError("E004", f"eval needs a function, got a {_kind(f)}")
        if fn == "lift":
            return self.lift(c)
        if fn == "scale":
            kw = self.kwargs(c, ("alpha", "shift"))
            (f,) = self.args(c, 1)
            if not isinstance(f, FFunction):
                raise DslError("E004", f"scale needs a function on F^n, got a {_kind(f)}")
            alpha = self.as_fvector(kw["alpha"], f.dim) if "alpha" in kw else (1,) * f.dim
            shift = self.as_fvector(kw["shift"], f.dim) if "shift" in kw else None
            return f.scale_translate(alpha, shift)
        if fn in ("liftM", "liftGL"):
            kw = self.kwargs(c, ("vmax",) if fn == "liftGL" else ())
            (g,) = self.args(c, 1)
            g = self.step(g)
            if fn == "liftM":
                return lift_group(g, self.need_F(), "M")
            vmax = self.as_int(kw.get("vmax", Fraction(3)))
            return lift_group(g, self.need_F(), "GL", v_max=vmax)
        raise DslError("E005", f"'{fn}' cannot be called here")

    def lift(self, c):
        kw = self.kwargs(c, ("a", "gamma", "coeff"))
        vals = self.args(c, 1, 3)
        g = self.step(vals[0])
        F = self.need_F()
        if len(vals) > 1:
            if "a" in kw:
                raise DslError("E005", "argument 'a' given twice")
            kw["a"] = vals[1]
        if len(vals) > 2:
            if "gamma" in kw:
                raise DslError("E005", "argument 'gamma' given twice")
            kw["gamma"] = vals[2]
        n = g.dim
        a = self.as_fvector(kw["a"], n) if "a" in kw else (F.zero(),) * n
        if "gamma" in kw:
            items = (kw["gamma"],) if n == 1 else kw["gamma"]
            if not isinstance(items, tuple) or len(items) != n:
                raise DslError("E008", f"gamma needs {n} entries")
            gamma = tuple(self.as_group(x) for x in items)
        else:
            gamma = (F.origin,) * n
        coeff = self.as_gamma(kw.get("coeff", Fraction(1)))
        if g.rank != F.rank:
            raise DslError("E004", f"step function has rank {g.rank} but the field has rank {F.rank}")
        return FFunction.from_lift(lift(g, a, gamma, coeff), F)


def run_source(source: str, options: Options | None = None) -> RunResult:
    script, diags = parse(source)
    if diags:
        return RunResult([d.render() for d in diags], False)
    return Runner(options).run(script)
