"""Lifted functions on F^n and their repeated integrals.

A term of an FFunction is coeff * g^{a,gamma}(tau x + shift).  Since
g^{a,gamma}(y) = g^0(t(-gamma)(y - a)), every term can be rewritten as
coeff * g^0(M x + b), and that normal form is what the integration engine
works with.

Integrating out one coordinate x_r keeps the shape of a term.  Write the
argument as y0 + m x_r with m the r-th column of M.  Pick the entry m_i of
least valuation and put u = m / m_i, an integral vector with u_i = 1.  The
substitution y_k = w_k + u_k w_i (k != i) is in GL_n(O_F), so it can be
absorbed into g at residue level; after it only the i-th coordinate still
depends on x_r, and the x_r-integral of that lifted one-variable function is
|m_i|^{-1} times the Haar integral of g along that coordinate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import DomainError, SingularMatrixError
from .gamma_values import GammaValue
from .linalg import Matrix, choose_pivot
from .step_functions import Box, StepFunction
from .valued_field import FElem, ValuedFieldSpec


def _vneg(g):
    return tuple(-x for x in g)


def _vsum(gs, rank):
    out = [0] * rank
    for g in gs:
        for i, x in enumerate(g):
            out[i] += x
    return tuple(out)


@dataclass(frozen=True)
class LiftedTerm:
    """coeff * g^{a,gamma} on F^n."""

    g: StepFunction
    a: tuple
    gamma: tuple
    coeff: GammaValue

    @property
    def dim(self):
        return self.g.dim

    def eval(self, x) -> GammaValue:
        z = [(xi - ai).shift(_vneg(gi)) for xi, ai, gi in zip(x, self.a, self.gamma)]
        if not all(zi.is_integral() for zi in z):
            return GammaValue.zero(self.coeff.rank)
        return self.g.eval(tuple(zi.residue() for zi in z)) * self.coeff


@dataclass(frozen=True)
class AffineImageTerm:
    """x -> base(tau x + shift)."""

    base: LiftedTerm
    tau: Matrix
    shift: tuple

    @property
    def dim(self):
        return self.base.dim

    def eval(self, x) -> GammaValue:
        y = self.tau.apply(tuple(x))
        return self.base.eval(tuple(yi + si for yi, si in zip(y, self.shift)))

    def normal_form(self):
        """(g, M, b, coeff) with this term equal to coeff * g^0(M x + b)."""
        base = self.base
        M = Matrix._trusted(self.tau.field, [[x.shift(_vneg(gi)) for x in row]
                                             for row, gi in zip(self.tau.rows, base.gamma)])
        b = tuple((s - a).shift(_vneg(gi)) for s, a, gi in zip(self.shift, base.a, base.gamma))
        return base.g, M, b, base.coeff


class FFunction:
    """A finite sum of AffineImageTerms: an element of L(F^n, GL_n)."""

    __slots__ = ("field", "dim", "terms")

    def __init__(self, field: ValuedFieldSpec, dim: int, terms=()):
        self.field = field
        self.dim = dim
        terms = tuple(terms)
        for t in terms:
            if t.dim != dim:
                raise ValueError(f"term of dimension {t.dim} in a {dim}-dimensional function")
        self.terms = terms

    @property
    def rank(self):
        return self.field.rank

    @classmethod
    def from_lift(cls, term: LiftedTerm, field: ValuedFieldSpec) -> "FFunction":
        if term.coeff.rank != field.rank or term.g.rank != field.rank:
            raise ValueError(f"lift has rank {term.coeff.rank}, field has rank {field.rank}")
        n = term.dim
        return cls(field, n, [AffineImageTerm(term, Matrix.identity(field, n),
                                              (field.zero(),) * n)])

    def __add__(self, other):
        if not isinstance(other, FFunction):
            return NotImplemented
        if other.dim != self.dim or other.field != self.field:
            raise ValueError("adding functions on different spaces")
        return FFunction(self.field, self.dim, self.terms + other.terms)

    def scale(self, c) -> "FFunction":
        out = []
        for t in self.terms:
            b = t.base
            out.append(AffineImageTerm(LiftedTerm(b.g, b.a, b.gamma, b.coeff * c), t.tau, t.shift))
        return FFunction(self.field, self.dim, out)

    def eval(self, x) -> GammaValue:
        if len(x) != self.dim:
            raise ValueError("point has wrong dimension")
        x = tuple(self.field(v) for v in x)
        total = GammaValue.zero(self.rank)
        for t in self.terms:
            total = total + t.eval(x)
        return total

    def compose(self, tau: Matrix, shift=None) -> "FFunction":
        """x -> f(tau x + shift)."""
        n = self.dim
        if tau.shape != (n, n):
            raise ValueError("matrix size does not match the function")
        shift = tuple(self.field(s) for s in (shift or (0,) * n))
        out = []
        for t in self.terms:
            new_shift = tuple(a + b for a, b in zip(t.tau.apply(shift), t.shift))
            out.append(AffineImageTerm(t.base, t.tau @ tau, new_shift))
        return FFunction(self.field, n, out)

    def scale_translate(self, alpha, a=None) -> "FFunction":
        """x -> f(alpha x + a) with alpha a vector of nonzero scalars."""
        alpha = [self.field(x) for x in alpha]
        if any(x.is_exact_zero() for x in alpha):
            raise DomainError("zero scale factor")
        return self.compose(Matrix.diagonal(self.field, alpha), a)

    def partial_integral(self, r: int) -> "FFunction":
        if not 0 <= r < self.dim:
            raise ValueError(f"coordinate {r} out of range")
        out = []
        for t in self.terms:
            new = _integrate_out(t, r, self.field)
            if new is not None:
                out.append(new)
        return FFunction(self.field, self.dim - 1, out)

    def value(self) -> GammaValue:
        """The value of a 0-dimensional function."""
        if self.dim != 0:
            raise ValueError("not a constant")
        total = GammaValue.zero(self.rank)
        for t in self.terms:
            total = total + t.base.coeff * t.base.g.haar_integral()
        return total

    def repeated_integral(self, order=None) -> GammaValue:
        """Integrate out the coordinates in ``order`` (original 0-based indices)."""
        order = list(range(self.dim)) if order is None else list(order)
        if sorted(order) != list(range(self.dim)):
            raise ValueError(f"{order} is not an ordering of the coordinates")
        remaining = list(range(self.dim))
        f = self
        for c in order:
            pos = remaining.index(c)
            f = f.partial_integral(pos)
            remaining.pop(pos)
        return f.value()

    def closed_form(self) -> GammaValue:
        total = GammaValue.zero(self.rank)
        for t in self.terms:
            b = t.base
            d = t.tau.det()
            if d.is_exact_zero():
                raise SingularMatrixError("tau is singular")
            total = total + (b.coeff * b.g.haar_integral()
                             * GammaValue.X(_vsum(b.gamma, self.rank)) / d.abs())
        return total

    def __repr__(self):
        return f"FFunction(dim={self.dim}, terms={len(self.terms)})"


def _integrate_out(term: AffineImageTerm, r: int, field: ValuedFieldSpec):
    g, M, b, coeff = term.normal_form()
    n = M.n
    col = M.column(r)
    i = choose_pivot(col)
    if i is None:
        raise SingularMatrixError("tau is singular")
    lam = col[i]
    lam_inv = lam.inverse()
    u = [None if k == i or col[k].is_exact_zero() else col[k] * lam_inv for k in range(n)]
    # residue-level substitution y = Abar v, v = (w_k for k != i, w_i)
    K = g.field
    others = [k for k in range(n) if k != i]
    if any(x is not None for x in u):
        rows = []
        for k in range(n):
            row = [K.zero()] * n
            if k == i:
                row[n - 1] = K.one()
            else:
                row[others.index(k)] = K.one()
                if u[k] is not None:
                    row[n - 1] = u[k].residue()
            rows.append(row)
        h = g.affine_pullback(Matrix(K, rows))
    elif i != n - 1:
        h = _move_last(g, i)
    else:
        h = g
    dh = h.partial_integral(n - 1)
    if not dh.terms:
        return None
    keep = [j for j in range(n) if j != r]
    new_rows, new_b = [], []
    for k in others:
        if u[k] is None:
            new_rows.append([M[k, j] for j in keep])
            new_b.append(b[k])
        else:
            new_rows.append([M[k, j] - u[k] * M[i, j] for j in keep])
            new_b.append(b[k] - u[k] * b[i])
    m = n - 1
    base = LiftedTerm(dh, (field.zero(),) * m, (field.origin,) * m, coeff / lam.abs())
    return AffineImageTerm(base, Matrix._trusted(field, new_rows), tuple(new_b))


def _move_last(g: StepFunction, i: int) -> StepFunction:
    """Reorder coordinates so that coordinate i comes last."""
    terms = [(Box(box.balls[:i] + box.balls[i + 1:] + (box.balls[i],)), c) for box, c in g.terms]
    return StepFunction(g.field, g.dim, terms, g.rank)


# -- the SL_2 case lemma ---------------------------------------------------------------

def case_lemma_matrix(K, delta, rank):
    """The residue matrix attached to the sign of delta (lex order on Z^r)."""
    zero = (0,) * rank
    if tuple(delta) < zero:
        rows = [[0, 1], [-1, 0]]
    elif tuple(delta) == zero:
        rows = [[0, 1], [-1, 1]]
    else:
        rows = [[1, 0], [-1, 1]]
    return Matrix(K, rows)


def case_lemma_section(g: StepFunction, alpha: FElem, x: FElem):
    """The section y -> g^0(x + alpha y, y) as a one-variable LiftedTerm, or None if zero.

    Follows the constructive two-variable lemma: the answer is the lift of
    v -> g o sigma(rho(x t(-delta0)), v) at -x e t(-delta0), -delta0 with
    sigma in SL_2(K).
    """
    F = alpha.field
    K = g.field
    rank = F.rank
    one = GammaValue.one(rank)
    if alpha.is_exact_zero():
        if not x.is_integral():
            return None
        sec = g.section(0, x.residue())
        return LiftedTerm(sec, (F.zero(),), (F.origin,), one) if sec.terms else None
    delta = alpha.nu()
    delta0 = min(delta, F.origin)
    if not x.shift(_vneg(delta0)).is_integral():
        return None
    e = alpha.inverse().shift(delta)
    ebar = e.residue()
    tau = case_lemma_matrix(K, delta, rank)
    sigma = Matrix(K, [[ebar.inverse(), 0], [0, 1]]) @ tau @ Matrix(K, [[ebar, 0], [0, 1]])
    h = g.affine_pullback(sigma)
    sec = h.section(0, x.shift(_vneg(delta0)).residue())
    if not sec.terms:
        return None
    a = -(x * e).shift(_vneg(delta0))
    return LiftedTerm(sec, (a,), (_vneg(delta0),), one)


# -- reports ---------------------------------------------------------------------------

@dataclass
class FubiniReport:
    values: dict = dc_field(default_factory=dict)
    closed_form: GammaValue | None = None

    @property
    def passed(self) -> bool:
        vals = list(self.values.values())
        return all(v == self.closed_form for v in vals)

    def render(self) -> str:
        if self.passed:
            return f"PASS, value = {self.closed_form.render()}"
        lines = [f"FAIL, closed form = {self.closed_form.render()}"]
        for order, v in self.values.items():
            mark = "ok" if v == self.closed_form else "differs"
            lines.append(f"  order {tuple(i + 1 for i in order)}: {v.render()} ({mark})")
        return "\n".join(lines)


def fubini_report(f: FFunction) -> FubiniReport:
    rep = FubiniReport(closed_form=f.closed_form())
    for order in itertools.permutations(range(f.dim)):
        rep.values[order] = f.repeated_integral(order)
    return rep


# -- functional surface ----------------------------------------------------------------

def lift(g: StepFunction, a, gamma, coeff=1) -> LiftedTerm:
    if len(a) != g.dim or len(gamma) != g.dim:
        raise ValueError("lift data does not match the dimension of g")
    if not isinstance(coeff, GammaValue):
        coeff = GammaValue.const(coeff, g.rank)
    return LiftedTerm(g, tuple(a), tuple(tuple(x) for x in gamma), coeff)


def ff_eval(f: FFunction, x) -> GammaValue:
    return f.eval(x)


def integrate_simple(term: LiftedTerm) -> GammaValue:
    if term.dim != 1:
        raise ValueError("integrate_simple needs a one-variable lift")
    return term.coeff * term.g.haar_integral() * GammaValue.X(term.gamma[0])


def scale_translate(f: FFunction, alpha, a=None) -> FFunction:
    return f.scale_translate(alpha, a)


def partial_integral(f: FFunction, r: int) -> FFunction:
    return f.partial_integral(r)


def repeated_integral(f: FFunction, order=None) -> GammaValue:
    return f.repeated_integral(order)


def integral_closed_form(f: FFunction) -> GammaValue:
    return f.closed_form()
