"""Schwartz-Bruhat step functions on K^n and their exact Haar calculus.

A step function is a finite list of (box, coefficient) pairs, where a box
is a product of balls and the coefficient lies in C(Gamma).  The value at
a point is the sum of the coefficients of the boxes containing it; boxes
may overlap.  Haar measure is normalized by mu(O_K) = 1.

Coordinates are numbered from 0.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from .errors import DepthLimitError
from .gamma_values import GammaValue
from .linalg import Matrix
from .local_field import Ball, KElem, LocalFieldSpec

DEFAULT_DEPTH_LIMIT = 10 ** 6


class Box:
    """A product of balls, one per coordinate."""

    __slots__ = ("balls",)

    def __init__(self, balls):
        self.balls = tuple(balls)

    @property
    def dim(self):
        return len(self.balls)

    def __eq__(self, other):
        return isinstance(other, Box) and self.balls == other.balls

    def __hash__(self):
        return hash(self.balls)

    def __repr__(self):
        return " x ".join(repr(b) for b in self.balls) or "Box()"

    def sort_key(self):
        return tuple(b.sort_key() for b in self.balls)

    def measure(self) -> Fraction:
        m = Fraction(1)
        for b in self.balls:
            m *= b.measure()
        return m

    def contains(self, u) -> bool:
        return all(b.contains_point(x) for b, x in zip(self.balls, u))

    def drop(self, r) -> "Box":
        return Box(self.balls[:r] + self.balls[r + 1:])

    def refine(self, depths) -> list["Box"]:
        per = [b.split(max(m, b.depth)) for b, m in zip(self.balls, depths)]
        return [Box(c) for c in itertools.product(*per)]


class StepFunction:
    __slots__ = ("field", "dim", "rank", "terms")

    def __init__(self, field: LocalFieldSpec, dim: int, terms=(), rank: int = 1):
        self.field = field
        self.dim = dim
        self.rank = rank
        out = []
        for box, c in terms:
            if box.dim != dim:
                raise ValueError(f"box of dimension {box.dim} in a {dim}-dimensional step function")
            if not isinstance(c, GammaValue):
                c = GammaValue.const(c, rank)
            elif c.rank != rank:
                raise ValueError("coefficient rank mismatch")
            if c:
                out.append((box, c))
        self.terms = tuple(out)

    # -- construction -----------------------------------------------------------

    @classmethod
    def indicator(cls, box: Box, rank: int = 1, coeff=1) -> "StepFunction":
        field = box.balls[0].field if box.balls else None
        return cls(field, box.dim, [(box, coeff)], rank)

    @classmethod
    def zero(cls, field, dim, rank=1) -> "StepFunction":
        return cls(field, dim, (), rank)

    @classmethod
    def constant(cls, field, value, rank=1) -> "StepFunction":
        """A 0-dimensional step function, i.e. a value of C(Gamma)."""
        return cls(field, 0, [(Box(()), value)], rank)

    def _check(self, other: "StepFunction"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.rank != self.rank:
            raise ValueError("rank mismatch")

    def __add__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        self._check(other)
        return StepFunction(self.field or other.field, self.dim,
                            self.terms + other.terms, self.rank).merged()

    def scale(self, c) -> "StepFunction":
        return StepFunction(self.field, self.dim, [(b, v * c) for b, v in self.terms], self.rank)

    def __mul__(self, c):
        if isinstance(c, StepFunction):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def merged(self) -> "StepFunction":
        """Combine identical boxes, drop zero coefficients, sort deterministically."""
        acc: dict = {}
        for b, c in self.terms:
            acc[b] = acc[b] + c if b in acc else c
        items = sorted(((b, c) for b, c in acc.items() if c), key=lambda bc: bc[0].sort_key())
        return StepFunction(self.field, self.dim, items, self.rank)

    def is_zero(self) -> bool:
        return not self.canonical().terms

    # -- evaluation and integration ---------------------------------------------

    def eval(self, u) -> GammaValue:
        if len(u) != self.dim:
            raise ValueError("point has wrong dimension")
        total = GammaValue.zero(self.rank)
        for b, c in self.terms:
            if b.contains(u):
                total = total + c
        return total

    def haar_integral(self) -> GammaValue:
        total = GammaValue.zero(self.rank)
        for b, c in self.terms:
            total = total + c * b.measure()
        return total

    def canonical(self, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> "StepFunction":
        """Pointwise-equal form with pairwise-disjoint boxes of a common depth per coordinate."""
        if not self.terms:
            return self
        depths = [max(b.balls[i].depth for b, _ in self.terms) for i in range(self.dim)]
        count = sum(self.field.p ** sum(m - bl.depth for m, bl in zip(depths, b.balls))
                    for b, _ in self.terms)
        if count > depth_limit:
            raise DepthLimitError(f"canonical form needs {count} boxes")
        acc: dict = {}
        for b, c in self.terms:
            for sub in b.refine(depths):
                acc[sub] = acc[sub] + c if sub in acc else c
        items = sorted(((b, c) for b, c in acc.items() if c), key=lambda bc: bc[0].sort_key())
        return StepFunction(self.field, self.dim, items, self.rank)

    def equals(self, other: "StepFunction") -> bool:
        """Pointwise equality."""
        self._check(other)
        return (self - other).is_zero()

    def section(self, r: int, v: KElem) -> "StepFunction":
        """u -> f(u with v inserted at coordinate r)."""
        if not 0 <= r < self.dim:
            raise ValueError(f"coordinate {r} out of range")
        terms = [(b.drop(r), c) for b, c in self.terms if b.balls[r].contains_point(v)]
        return StepFunction(self.field, self.dim - 1, terms, self.rank).merged()

    def partial_integral(self, r: int) -> "StepFunction":
        """Integrate out coordinate r."""
        if not 0 <= r < self.dim:
            raise ValueError(f"coordinate {r} out of range")
        terms = [(b.drop(r), c * b.balls[r].measure()) for b, c in self.terms]
        return StepFunction(self.field, self.dim - 1, terms, self.rank).merged()

    def affine_pullback(self, A: Matrix, b=None, depth_limit: int = DEFAULT_DEPTH_LIMIT):
        """u -> f(A u + b) for A in GL_n(K), as a step function."""
        return _pullback(self, A, b, depth_limit)

    def __repr__(self):
        return f"StepFunction(dim={self.dim}, terms={list(self.terms)!r})"


def _val(x: KElem):
    return x.valuation


def _pullback(f: StepFunction, A: Matrix, b, depth_limit):
    n = f.dim
    if A.shape != (n, n):
        raise ValueError("matrix size does not match the step function")
    K = f.field or A.field
    if b is None:
        b = (K.zero(),) * n
    b = tuple(K(x) for x in b)
    Ainv = A.inverse()
    vA = [[_val(A[i, j]) for j in range(n)] for i in range(n)]
    vAi = [[_val(Ainv[i, j]) for j in range(n)] for i in range(n)]
    work = 0
    out = []
    for box, coeff in f.terms:
        cs = [bl.center for bl in box.balls]
        ks = [bl.depth for bl in box.balls]
        u0 = Ainv.apply(tuple(c - x for c, x in zip(cs, b)))
        d0 = [min(vAi[j][i] + ks[i] for i in range(n)) for j in range(n)]
        stack = [Box(Ball(u0[j], d0[j]) for j in range(n))]
        while stack:
            Q = stack.pop()
            work += 1
            if work > depth_limit:
                raise DepthLimitError(f"pullback refinement exceeded {depth_limit} boxes")
            qs = [bl.center for bl in Q.balls]
            ds = [bl.depth for bl in Q.balls]
            y = A.apply(qs)
            split_row = None
            disjoint = False
            for i in range(n):
                e = min(vA[i][j] + ds[j] for j in range(n))
                dv = (y[i] + b[i] - cs[i]).valuation
                if e >= ks[i]:
                    if dv < ks[i]:
                        disjoint = True
                        break
                elif dv < e:
                    disjoint = True
                    break
                elif split_row is None:
                    split_row = i
            if disjoint:
                continue
            if split_row is None:
                out.append((Q, coeff))
                continue
            row = vA[split_row]
            j = min(range(n), key=lambda j: (row[j] + ds[j], j))
            for child in Q.balls[j].split(ds[j] + 1):
                stack.append(Box(Q.balls[:j] + (child,) + Q.balls[j + 1:]))
    return StepFunction(K, n, out, f.rank).merged()


def enumerate_integral(f: StepFunction, m, limit: int = 200_000) -> GammaValue:
    """Brute-force oracle: sum of f over depth-m coset representatives times their measure.

    m is one depth for every coordinate or a sequence of per-coordinate depths.
    Exact once every box of f has depth <= m in every coordinate.
    """
    if f.dim == 0:
        return f.haar_integral()
    if not f.terms:
        return GammaValue.zero(f.rank)
    ms = [m] * f.dim if isinstance(m, int) else list(m)
    rows = []
    for i, mi in enumerate(ms):
        if any(b.balls[i].depth > mi for b, _ in f.terms):
            raise ValueError(f"depth {mi} is too coarse for coordinate {i}")
        tops = []
        for bl in sorted({b.balls[i] for b, _ in f.terms}, key=lambda x: x.depth):
            if not any(t.contains_ball(bl) for t in tops):
                tops.append(bl)
        pts = [s.center for t in tops for s in t.split(mi)]
        if len(pts) > limit:
            raise DepthLimitError(f"enumeration oracle would visit {len(pts)} cosets")
        # a point lies in term k iff each of its coordinates does; track that as bitmasks
        row = Counter()
        for x in pts:
            bits = 0
            for k, (b, _) in enumerate(f.terms):
                if b.balls[i].contains_point(x):
                    bits |= 1 << k
            row[bits] += 1
        rows.append(row)
    hits = Counter({(1 << len(f.terms)) - 1: 1})
    for row in rows:
        nxt = Counter()
        for bits, mult in hits.items():
            for x, k in row.items():
                if bits & x:
                    nxt[bits & x] += mult * k
        hits = nxt
    total = GammaValue.zero(f.rank)
    for bits, mult in hits.items():
        for k, (_, c) in enumerate(f.terms):
            if bits >> k & 1:
                total = total + c * mult
    return total * (Fraction(f.field.p) ** (-sum(ms)))


# -- functional surface (coordinates numbered from 0) -------------------------------

def sf_indicator(box: Box, rank: int = 1) -> StepFunction:
    return StepFunction.indicator(box, rank)


def sf_add(f: StepFunction, g: StepFunction) -> StepFunction:
    return f + g


def sf_scale(c, f: StepFunction) -> StepFunction:
    return f.scale(c)


def sf_eval(f: StepFunction, u) -> GammaValue:
    return f.eval(u)


def sf_canonicalize(f: StepFunction) -> StepFunction:
    return f.canonical()


def sf_haar_integral(f: StepFunction) -> GammaValue:
    return f.haar_integral()


def sf_section(f: StepFunction, r: int, v: KElem) -> StepFunction:
    return f.section(r, v)


def sf_partial_integral(f: StepFunction, r: int) -> StepFunction:
    return f.partial_integral(r)


def sf_affine_pullback(f: StepFunction, A: Matrix, b=None,
                       depth_limit: int = DEFAULT_DEPTH_LIMIT) -> StepFunction:
    return f.affine_pullback(A, b, depth_limit)
