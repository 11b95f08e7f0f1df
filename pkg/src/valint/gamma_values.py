"""Exact arithmetic in C(Gamma), the fraction field of the group algebra of Z^r.

Elements are quotients of Laurent polynomials in X_1..X_r with Gaussian
rational coefficients.  A group element gamma in Z^r is a plain tuple of
ints; tuple comparison is exactly the lexicographic order we need.

Canonical form: numerator and denominator are divided by the lex-least
term of the denominator, so that term becomes 1*X^0.  No polynomial gcd
is taken; equality is decided by cross-multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

GroupElement = tuple


class GaussQ:
    """An exact Gaussian rational re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        if isinstance(x, complex):
            raise TypeError("floating complex coefficients are not exact")
        raise TypeError(f"cannot use {type(x).__name__} as a coefficient")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussQ):
            try:
                other = GaussQ.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = GaussQ.coerce(other)
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.coerce(other))

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __mul__(self, other):
        other = GaussQ.coerce(other)
        if not self.im and not other.im:
            return GaussQ(self.re * other.re)
        return GaussQ(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussQ":
        if not self:
            raise ZeroDivisionError("inverse of zero coefficient")
        if not self.im:
            return GaussQ(1 / self.re)
        norm = self.re * self.re + self.im * self.im
        return GaussQ(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussQ.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussQ.coerce(other) * self.inverse()

    def is_real(self) -> bool:
        return not self.im

    def render(self) -> str:
        if not self.im:
            return _frac_str(self.re)
        if not self.re:
            return f"{_frac_str(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{_frac_str(self.re)}{sign}{_frac_str(abs(self.im))}*i"

    def __repr__(self):
        return f"GaussQ({self.render()})"


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- Laurent polynomials: dict {exponent tuple: GaussQ}, no zero values ------

def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    if len(a) == 1 and len(b) == 1:
        (ka, ca), = a.items()
        (kb, cb), = b.items()
        return {tuple(x + y for x, y in zip(ka, kb)): ca * cb}
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _poly_scale(a: dict, c: GaussQ, shift: tuple) -> dict:
    return {tuple(x + y for x, y in zip(k, shift)): v * c for k, v in a.items()}


class GammaValue:
    """An element of C(Gamma) for Gamma = Z^rank, kept in canonical form."""

    __slots__ = ("rank", "num", "den")
    __hash__ = None  # equality is by cross-multiplication, not structural

    def __init__(self, rank: int, num: dict, den: dict | None = None):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank
        if den is None:
            den = {(0,) * rank: GaussQ(1)}
        num = {k: GaussQ.coerce(c) for k, c in num.items() if c}
        den = {k: GaussQ.coerce(c) for k, c in den.items() if c}
        if not den:
            raise ZeroDivisionError("zero denominator")
        for k in list(num) + list(den):
            if len(k) != rank:
                raise ValueError(f"exponent {k} has wrong length for rank {rank}")
        self.num, self.den = _canonical(num, den, rank)

    # -- constructors --------------------------------------------------------

    @classmethod
    def monomial(cls, c, gamma: GroupElement) -> "GammaValue":
        gamma = tuple(gamma)
        c = GaussQ.coerce(c)
        return cls(len(gamma), {gamma: c} if c else {})

    @classmethod
    def const(cls, c, rank: int) -> "GammaValue":
        return cls.monomial(c, (0,) * rank)

    @classmethod
    def zero(cls, rank: int) -> "GammaValue":
        return cls(rank, {})

    @classmethod
    def one(cls, rank: int) -> "GammaValue":
        return cls.const(1, rank)

    @classmethod
    def X(cls, gamma: GroupElement) -> "GammaValue":
        return cls.monomial(1, gamma)

    def _coerce(self, other) -> "GammaValue":
        if isinstance(other, GammaValue):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        return GammaValue.const(other, self.rank)

    # -- field operations ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self._den_is_one() and other._den_is_one():
            return GammaValue(self.rank, _poly_add(self.num, other.num))
        num = _poly_add(_poly_mul(self.num, other.den), _poly_mul(other.num, self.den))
        return GammaValue(self.rank, num, _poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        g = object.__new__(GammaValue)
        g.rank = self.rank
        g.num = {k: -c for k, c in self.num.items()}
        g.den = self.den
        return g

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return GammaValue.zero(self.rank)
            c = GaussQ(other)
            g = object.__new__(GammaValue)
            g.rank, g.den = self.rank, self.den
            g.num = {k: v * c for k, v in self.num.items()}
            return g
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return GammaValue.zero(self.rank)
        return GammaValue(self.rank, _poly_mul(self.num, other.num),
                          _poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "GammaValue":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in C(Gamma)")
        return GammaValue(self.rank, self.den, self.num)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GammaValue.one(self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GammaValue):
            if other.rank != self.rank:
                return False
        else:
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return _poly_mul(self.num, other.den) == _poly_mul(other.num, self.den)

    # -- inspection ----------------------------------------------------------

    def _den_is_one(self) -> bool:
        if len(self.den) != 1:
            return False
        (k, c), = self.den.items()
        return not any(k) and c == 1

    def as_monomial(self):
        """Return (c, gamma) if this value is c*X^gamma, else None."""
        if not self.num:
            return None
        if len(self.num) == 1 and self._den_is_one():
            (k, c), = self.num.items()
            return c, k
        return None

    def canonical(self) -> "GammaValue":
        return GammaValue(self.rank, self.num, self.den)

    def render(self) -> str:
        num = _render_poly(self.num, self.rank)
        if self._den_is_one():
            return num
        return f"({num})/({_render_poly(self.den, self.rank)})"

    __str__ = render

    def __repr__(self):
        return f"GammaValue({self.render()})"


def _canonical(num: dict, den: dict, rank: int):
    lead = min(den)
    c = den[lead]
    shift = tuple(-x for x in lead)
    inv = c.inverse()
    return _poly_scale(num, inv, shift), _poly_scale(den, inv, shift)


def _render_monomial(k: tuple, rank: int) -> str:
    if rank == 1:
        e = k[0]
        return "X" if e == 1 else f"X^{e}"
    parts = []
    for i, e in enumerate(k, 1):
        if e == 0:
            continue
        parts.append(f"X{i}" if e == 1 else f"X{i}^{e}")
    return "*".join(parts)


def _render_poly(p: dict, rank: int) -> str:
    if not p:
        return "0"
    pieces = []
    for k in sorted(p):
        c = p[k]
        unit = not any(k)
        neg = c.is_real() and c.re < 0
        mag = -c if neg else c
        if unit:
            body = mag.render()
        else:
            mono = _render_monomial(k, rank)
            if mag == 1:
                body = mono
            elif mag.is_real():
                body = f"{mag.render()}*{mono}"
            else:
                body = f"({mag.render()})*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


# -- functional surface -----------------------------------------------------

def gv_monomial(c, gamma: GroupElement) -> GammaValue:
    return GammaValue.monomial(c, gamma)


def gv_add(a: GammaValue, b: GammaValue) -> GammaValue:
    return a + b


def gv_mul(a: GammaValue, b: GammaValue) -> GammaValue:
    return a * b


def gv_inv(a: GammaValue) -> GammaValue:
    return a.inverse()


def gv_eq(a: GammaValue, b: GammaValue) -> bool:
    return a == b


def gv_as_monomial(a: GammaValue):
    return a.as_monomial()
