"""The valued field F = K((t_1))...((t_r)) with split valuation into Z^r.

An FElem is a finite sum of c_gamma * t^gamma (c_gamma in K) together with
a cutoff: every exponent lex-greater-or-equal to the cutoff is unknown.
A cutoff of None marks an exact element (a Laurent polynomial).  Truncated
elements only arise from inversion; everything that depends on an unknown
coefficient raises PrecisionError instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, PrecisionError
from .gamma_values import GammaValue
from .local_field import KElem, LocalFieldSpec


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _vscale(k, a):
    return tuple(k * x for x in a)


def _cmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class ValuedFieldSpec:
    base: LocalFieldSpec
    rank: int = 1
    depth: int = 8

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if self.depth < 1:
            raise ValueError("depth must be positive")

    @property
    def variables(self) -> tuple[str, ...]:
        if self.rank == 1:
            return ("t",)
        return tuple(f"t{i}" for i in range(1, self.rank + 1))

    @property
    def origin(self) -> tuple:
        return (0,) * self.rank

    def zero(self) -> "FElem":
        return FElem(self, {})

    def one(self) -> "FElem":
        return FElem(self, {self.origin: self.base.one()})

    def t(self, gamma) -> "FElem":
        """The splitting t(gamma) = t_1^gamma_1 ... t_r^gamma_r."""
        gamma = tuple(gamma)
        if len(gamma) != self.rank:
            raise ValueError(f"group element {gamma} has wrong rank")
        return FElem(self, {gamma: self.base.one()})

    def var(self, i: int = 0) -> "FElem":
        e = [0] * self.rank
        e[i] = 1
        return self.t(e)

    def __call__(self, x) -> "FElem":
        if isinstance(x, FElem):
            if x.field != self:
                raise ValueError("element of a different valued field")
            return x
        c = self.base(x)
        return FElem(self, {self.origin: c} if c else {})

    def relative_target(self) -> tuple:
        return (self.depth,) + (0,) * (self.rank - 1)


class FElem:
    __slots__ = ("field", "terms", "cutoff")

    def __init__(self, field: ValuedFieldSpec, terms: dict, cutoff=None):
        self.field = field
        if cutoff is not None:
            cutoff = tuple(cutoff)
            terms = {k: c for k, c in terms.items() if k < cutoff and c}
        else:
            terms = {k: c for k, c in terms.items() if c}
        self.terms = terms
        self.cutoff = cutoff

    # -- predicates -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.cutoff is None

    def is_exact_zero(self) -> bool:
        return not self.terms and self.cutoff is None

    def is_zero_to_precision(self) -> bool:
        return not self.terms

    def nu(self) -> tuple:
        """The valuation; raises if it is not determined."""
        if self.terms:
            return min(self.terms)
        if self.cutoff is None:
            raise DomainError("valuation of zero")
        raise PrecisionError(f"element is zero to precision {self._order_term(self.cutoff)}")

    def val_info(self):
        """(kind, value): ('val', nu), ('bound', cutoff) or ('zero', None)."""
        if self.terms:
            return "val", min(self.terms)
        if self.cutoff is None:
            return "zero", None
        return "bound", self.cutoff

    def coefficient(self, gamma) -> KElem:
        gamma = tuple(gamma)
        if self.cutoff is not None and gamma >= self.cutoff:
            raise PrecisionError(f"coefficient of t^{gamma} is beyond the cutoff {self.cutoff}")
        return self.terms.get(gamma, self.field.base.zero())

    def leading(self):
        g = self.nu()
        return self.terms[g], g

    # -- arithmetic ------------------------------------------------------------

    def _other(self, other) -> "FElem":
        if isinstance(other, FElem):
            if other.field != self.field:
                raise ValueError("mixing elements of different valued fields")
            return other
        return self.field(other)

    def __add__(self, other):
        try:
            other = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return FElem(self.field, out, _cmin(self.cutoff, other.cutoff))

    __radd__ = __add__

    def __neg__(self):
        return FElem(self.field, {k: -c for k, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other):
        try:
            other = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        try:
            other = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        a, b = self, other
        if a.is_exact_zero() or b.is_exact_zero():
            return a.field.zero()
        cut = None
        if a.cutoff is not None:
            cut = _cmin(cut, _vadd(a.cutoff, min(b.terms) if b.terms else b.cutoff))
        if b.cutoff is not None:
            cut = _cmin(cut, _vadd(b.cutoff, min(a.terms) if a.terms else a.cutoff))
        out: dict = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = _vadd(ka, kb)
                if cut is not None and k >= cut:
                    continue
                s = out.get(k)
                out[k] = ca * cb if s is None else s + ca * cb
        return FElem(a.field, out, cut)

    __rmul__ = __mul__

    def shift(self, gamma) -> "FElem":
        """Multiply by t(gamma); exact."""
        gamma = tuple(gamma)
        return FElem(self.field, {_vadd(k, gamma): c for k, c in self.terms.items()},
                     None if self.cutoff is None else _vadd(self.cutoff, gamma))

    def scale(self, c: KElem) -> "FElem":
        if not c:
            return self.field.zero()
        return FElem(self.field, {k: v * c for k, v in self.terms.items()},
                     self.cutoff)

    def truncated(self, cutoff) -> "FElem":
        return FElem(self.field, self.terms, _cmin(self.cutoff, tuple(cutoff)))

    def inverse(self) -> "FElem":
        if self.is_exact_zero():
            raise DomainError("inverse of zero in F")
        c0, g0 = self.leading()
        unit = self.shift(_vneg(g0)).scale(c0.inverse())  # 1 - z
        if len(unit.terms) == 1 and unit.cutoff is None:
            return FElem(self.field, {_vneg(g0): c0.inverse()})
        target = self.field.relative_target() if unit.cutoff is None else unit.cutoff
        z = self.field.one() - unit
        nz = z.nu() if z.terms else z.cutoff
        total = self.field.one()
        power = self.field.one()
        k = 1
        max_terms = self.field.depth * self.field.rank
        while True:
            tail = _vscale(k, nz)
            if tail >= target or k > max_terms:
                break
            power = (power * z).truncated(target)
            total = total + power
            k += 1
        total = total.truncated(min(target, _vscale(k, nz)))
        return total.shift(_vneg(g0)).scale(c0.inverse())

    def __truediv__(self, other):
        try:
            other = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        """Equality to the available precision."""
        try:
            other = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).is_zero_to_precision()

    def __hash__(self):
        if self.cutoff is not None:
            raise TypeError("truncated FElem is unhashable")
        return hash((self.field, frozenset(self.terms.items())))

    # -- valuation theory ------------------------------------------------------

    def residue(self) -> KElem:
        """rho: O_F -> K, the coefficient of t^0 of an integral element."""
        if not self.is_integral():
            raise DomainError("residue of a non-integral element")
        return self.coefficient(self.field.origin)

    def is_integral(self) -> bool:
        kind, v = self.val_info()
        if kind == "zero":
            return True
        origin = self.field.origin
        if kind == "val":
            return v >= origin
        if v >= origin:
            return True
        raise PrecisionError(f"integrality undecided below cutoff {self._order_term(v)}")

    def abs(self) -> GammaValue:
        """|a| = |residue(a t(-nu(a)))|_K * X^nu(a)."""
        c, g = self.leading()
        return GammaValue.monomial(c.abs(), g)

    def _order_term(self, k) -> str:
        return f"O({_monomial(self.field.variables, k) or '1'})"

    def render(self) -> str:
        names = self.field.variables
        parts = []
        for k in sorted(self.terms):
            parts.append(_render_term(self.terms[k], _monomial(names, k)))
        if self.cutoff is not None:
            parts.append(self._order_term(self.cutoff))
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __repr__(self):
        return f"FElem({self.render()})"


def _monomial(names, k) -> str:
    out = []
    for n, e in zip(names, k):
        if e == 1:
            out.append(n)
        elif e:
            out.append(f"{n}^{e}")
    return "*".join(out)


def _render_term(c: KElem, mono: str) -> str:
    text = c.render()
    if not mono:
        return text
    if text == "1":
        return mono
    if text == "-1":
        return "-" + mono
    if " " in text:
        text = f"({text})"
    return f"{text}*{mono}"


def f_add(a: FElem, b: FElem) -> FElem:
    return a + b


def f_mul(a: FElem, b: FElem) -> FElem:
    return a * b


def f_inv(a: FElem) -> FElem:
    return a.inverse()


def f_nu(a: FElem) -> tuple:
    return a.nu()


def f_split(field: ValuedFieldSpec, gamma) -> FElem:
    return field.t(gamma)


def f_residue(a: FElem) -> KElem:
    return a.residue()


def f_is_integral(a: FElem) -> bool:
    return a.is_integral()


def f_abs(a: FElem) -> GammaValue:
    return a.abs()


def in_coset(x: FElem, a: FElem, gamma) -> bool:
    """Membership x in a + t(gamma) O_F."""
    return ((x - a).shift(_vneg(tuple(gamma)))).is_integral()
