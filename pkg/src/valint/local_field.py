"""The residue field K: Q_p or F_p((u)), with balls and their Haar measure.

Elements are stored exactly, as members of the dense subfields Q and
F_p(u).  Digit expansions are produced on demand, so a KElem can report
as many digits as a caller asks for; ``precision`` only controls the
default length of ``digits`` and of rendered expansions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DomainError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class LocalFieldSpec:
    kind: str  # "padic" or "laurent"
    p: int
    default_precision: int = 20

    def __post_init__(self):
        if self.kind not in ("padic", "laurent"):
            raise ValueError(f"unknown local field kind {self.kind!r}")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.default_precision < 1:
            raise ValueError("precision must be positive")

    @property
    def name(self) -> str:
        return f"Q{self.p}" if self.kind == "padic" else f"F{self.p}((u))"

    def zero(self) -> "KElem":
        return KElem(self, _ZERO[self.kind](self.p))

    def one(self) -> "KElem":
        return self(1)

    def uniformizer(self) -> "KElem":
        if self.kind == "padic":
            return KElem(self, Fraction(self.p))
        return KElem(self, FpRational.u_power(self.p, 1))

    def pi_power(self, k: int) -> "KElem":
        if self.kind == "padic":
            return KElem(self, Fraction(self.p) ** k)
        return KElem(self, FpRational.u_power(self.p, k))

    def __call__(self, x) -> "KElem":
        """Coerce an int or Fraction (or KElem of this field) into K."""
        if isinstance(x, KElem):
            if x.field != self:
                raise ValueError(f"element of {x.field.name} used in {self.name}")
            return x
        if self.kind == "padic":
            return KElem(self, Fraction(x))
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise DomainError(f"{x} has no image in F_{self.p}")
        return KElem(self, FpRational.const(self.p, x.numerator * pow(x.denominator, -1, self.p)))

    def from_digits(self, valuation: int, digits) -> "KElem":
        """Exact element sum(d_i * pi^(valuation + i))."""
        p = self.p
        if any(not 0 <= d < p for d in digits):
            raise ValueError(f"digits must lie in [0, {p})")
        if self.kind == "padic":
            n = 0
            for d in reversed(digits):
                n = n * p + d
            return KElem(self, Fraction(n) * Fraction(p) ** valuation)
        return KElem(self, FpRational(p, tuple(digits), (1,)).shift(valuation))

    def digit_elements(self, k: int) -> list["KElem"]:
        """The p elements d*pi^k, d = 0..p-1, in digit order."""
        pk = self.pi_power(k)
        return [self(d) * pk for d in range(self.p)]


def PAdic(p: int, precision: int = 20) -> LocalFieldSpec:
    return LocalFieldSpec("padic", p, precision)


def LaurentFF(p: int, precision: int = 20) -> LocalFieldSpec:
    return LocalFieldSpec("laurent", p, precision)


# -- F_p(u), exactly ------------------------------------------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


# over F_2 a polynomial packs into the bits of an int, which is much faster
def _to_bits(a):
    return int("".join(map(str, a[::-1])), 2) if a else 0


def _from_bits(n):
    return tuple(map(int, bin(n)[:1:-1])) if n else ()


def _bmul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _bdivmod(a, b):
    q, nb = 0, b.bit_length()
    while a.bit_length() >= nb:
        s = a.bit_length() - nb
        q |= 1 << s
        a ^= b << s
    return q, a


def _pmul(a, b, p):
    if not a or not b:
        return ()
    if p == 2:
        return _from_bits(_bmul(_to_bits(a), _to_bits(b)))
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n))


def _pdivmod(a, b, p):
    if p == 2:
        q, r = _bdivmod(_to_bits(a), _to_bits(b))
        return _from_bits(q), _from_bits(r)
    a = list(a)
    inv = pow(b[-1], -1, p)
    nb = len(b)
    q = [0] * max(len(a) - nb + 1, 0)
    while len(a) >= nb:
        c = a[-1] * inv % p
        s = len(a) - nb
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return _trim(q), tuple(a)


def _pgcd(a, b, p):
    if p == 2:
        a, b = _to_bits(a), _to_bits(b)
        while b:
            a, b = b, _bdivmod(a, b)[1]
        return _from_bits(a)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _cancel(a, b, p):
    """a/g, b/g for g = gcd(a, b)."""
    if len(a) == 1 or len(b) == 1:
        return a, b
    g = _pgcd(a, b, p)
    if len(g) == 1:
        return a, b
    return _pdivmod(a, g, p)[0], _pdivmod(b, g, p)[0]


def _ord(a):
    for i, x in enumerate(a):
        if x:
            return i
    return math.inf


class FpRational:
    """An element num/den of F_p(u); polys are coefficient tuples, low degree first.

    Normal form: gcd(num, den) = 1, den monic, and a common power of u is
    kept outside as ``shift`` so that neither polynomial is divisible by u.
    """

    __slots__ = ("p", "num", "den", "vshift")

    def __init__(self, p, num, den, vshift=0):
        num, den = _trim(num), _trim(den)
        if not den:
            raise DomainError("division by zero in F_p(u)")
        self.p = p
        if not num:
            self.num, self.den, self.vshift = (), (1,), 0
            return
        on, od = _ord(num), _ord(den)
        num, den = num[on:], den[od:]
        if len(num) > 1 and len(den) > 1:
            g = _pgcd(num, den, p)
            if len(g) > 1:
                num = _pdivmod(num, g, p)[0]
                den = _pdivmod(den, g, p)[0]
        self._set(num, den, vshift + on - od)

    def _set(self, num, den, vshift):
        p = self.p
        if den[-1] != 1:
            inv = pow(den[-1], -1, p)
            num = tuple(x * inv % p for x in num)
            den = tuple(x * inv % p for x in den)
        self.num, self.den, self.vshift = num, den, vshift

    @classmethod
    def _reduced(cls, p, num, den, vshift):
        """num/den * u^vshift with num, den coprime, u-free and nonzero."""
        r = object.__new__(cls)
        r.p = p
        r._set(num, den, vshift)
        return r

    @classmethod
    def const(cls, p, c):
        return cls(p, (c % p,), (1,))

    @classmethod
    def u_power(cls, p, k):
        return cls(p, (1,), (1,), k)

    def shift(self, k):
        if not self.num:
            return self
        return FpRational(self.p, self.num, self.den, self.vshift + k)

    def _parts(self, other):
        # returns (num, den) for self and other over a common u-power base
        s = min(self.vshift, other.vshift)
        a = (0,) * (self.vshift - s) + self.num
        b = (0,) * (other.vshift - s) + other.num
        return a, b, s

    def __add__(self, other):
        if not self.num:
            return other
        if not other.num:
            return self
        a, b, s = self._parts(other)
        p = self.p
        num = _padd(_pmul(a, other.den, p), _pmul(b, self.den, p), p)
        return FpRational(p, num, _pmul(self.den, other.den, p), s)

    def __neg__(self):
        r = object.__new__(FpRational)
        r.p, r.den, r.vshift = self.p, self.den, self.vshift
        r.num = tuple((-x) % self.p for x in self.num)
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        p = self.p
        if not self.num or not other.num:
            return FpRational(p, (), (1,))
        # cancel across before multiplying, so the product is already reduced
        n1, d2 = _cancel(self.num, other.den, p)
        n2, d1 = _cancel(other.num, self.den, p)
        return FpRational._reduced(p, _pmul(n1, n2, p), _pmul(d1, d2, p),
                                   self.vshift + other.vshift)

    def __truediv__(self, other):
        if not other.num:
            raise DomainError("division by zero in F_p(u)")
        inv = FpRational._reduced(self.p, other.den, other.num, -other.vshift)
        return self * inv

    def __eq__(self, other):
        return (isinstance(other, FpRational) and self.num == other.num
                and self.den == other.den and self.vshift == other.vshift)

    def __hash__(self):
        return hash((self.num, self.den, self.vshift))

    def __bool__(self):
        return bool(self.num)

    def valuation(self):
        return self.vshift if self.num else math.inf

    def unit_series(self, n):
        """First n coefficients of num/den as a power series (both are u-free)."""
        p = self.p
        inv0 = pow(self.den[0], -1, p)
        rem = list(self.num[:n]) + [0] * max(0, n - len(self.num))
        out = []
        for i in range(n):
            c = rem[i] * inv0 % p
            out.append(c)
            if c:
                for j, d in enumerate(self.den):
                    if i + j < n:
                        rem[i + j] = (rem[i + j] - c * d) % p
        return out


_ZERO = {"padic": lambda p: Fraction(0), "laurent": lambda p: FpRational(p, (), (1,))}


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class KElem:
    """An exact element of the local field K = spec."""

    __slots__ = ("field", "x", "__dict__")

    def __init__(self, field: LocalFieldSpec, x):
        self.field = field
        self.x = x

    def _wrap(self, x):
        return KElem(self.field, x)

    def _other(self, other) -> "KElem":
        if isinstance(other, KElem):
            if other.field != self.field:
                raise ValueError(f"mixing {self.field.name} and {other.field.name}")
            return other
        return self.field(other)

    def __add__(self, other):
        return self._wrap(self.x + self._other(other).x)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.x - self._other(other).x)

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return self._wrap(-self.x)

    def __mul__(self, other):
        return self._wrap(self.x * self._other(other).x)

    __rmul__ = __mul__

    def inverse(self) -> "KElem":
        if not self.x:
            raise DomainError(f"inverse of zero in {self.field.name}")
        if self.field.kind == "padic":
            return self._wrap(1 / self.x)
        return self._wrap(FpRational.const(self.field.p, 1) / self.x)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

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
        if isinstance(other, KElem):
            return self.field == other.field and self.x == other.x
        try:
            return self.x == self.field(other).x
        except (TypeError, ValueError, DomainError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.x))

    def is_zero(self) -> bool:
        return not self.x

    def __bool__(self):
        return bool(self.x)

    # -- valuation, absolute value, digits ------------------------------------

    @cached_property
    def valuation(self):
        """Integer valuation; math.inf for zero."""
        x = self.x
        if not x:
            return math.inf
        if self.field.kind == "padic":
            p = self.field.p
            return _vp(x.numerator, p) - _vp(x.denominator, p)
        return x.valuation()

    def abs(self) -> Fraction:
        """Normalized absolute value p^-v."""
        if not self.x:
            raise DomainError("absolute value of zero")
        return Fraction(self.field.p) ** (-self.valuation)

    def unit_digits(self, n: int) -> list[int]:
        """The first n digits of the expansion, starting at the valuation."""
        if not self.x:
            return [0] * n
        p, v = self.field.p, self.valuation
        if self.field.kind == "padic":
            q = self.x / Fraction(p) ** v
            m = p ** n
            r = q.numerator * pow(q.denominator, -1, m) % m
            out = []
            for _ in range(n):
                r, d = divmod(r, p)
                out.append(d)
            return out
        return self.x.unit_series(n)

    @property
    def precision(self) -> int:
        return self.field.default_precision

    @property
    def digits(self) -> list[int]:
        return self.unit_digits(self.precision)

    def digit_at(self, k: int) -> int:
        """Coefficient of pi^k in the expansion."""
        v = self.valuation
        if k < v:
            return 0
        return self.unit_digits(k - v + 1)[-1]

    def truncate(self, k: int) -> "KElem":
        """Canonical representative of self mod pi^k (digits below k only)."""
        v = self.valuation
        if v >= k:
            return self.field.zero()
        return self.field.from_digits(v, self.unit_digits(k - v))

    def render(self) -> str:
        if self.field.kind == "padic":
            q = self.x
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        x = self.x
        if not x:
            return "0"
        if x.den == (1,):
            return " + ".join(_u_term(c, i + x.vshift) for i, c in enumerate(x.num) if c)
        num = KElem(self.field, FpRational(x.p, x.num, (1,), x.vshift)).render()
        den = KElem(self.field, FpRational(x.p, x.den, (1,))).render()
        wrap = (lambda s: f"({s})" if " " in s else s)
        return f"{wrap(num)}/{wrap(den)}"

    def __repr__(self):
        return f"KElem[{self.field.name}]({self.render()})"


def _u_term(c: int, e: int) -> str:
    if e == 0:
        return str(c)
    mono = "u" if e == 1 else f"u^{e}"
    return mono if c == 1 else f"{c}*{mono}"


def k_add(a: KElem, b: KElem) -> KElem:
    return a + b


def k_mul(a: KElem, b: KElem) -> KElem:
    return a * b


def k_neg(a: KElem) -> KElem:
    return -a


def k_inv(a: KElem) -> KElem:
    return a.inverse()


def k_valuation(a: KElem):
    return a.valuation


def k_abs(a: KElem) -> Fraction:
    return a.abs()


# -- balls ----------------------------------------------------------------------

class Ball:
    """The coset center + pi^depth O_K, with a canonical center."""

    __slots__ = ("center", "depth", "_key")

    def __init__(self, center: KElem, depth: int):
        self.center = center.truncate(depth)
        self.depth = depth
        self._key = (depth, self.center.x)

    @classmethod
    def _raw(cls, center: KElem, depth: int) -> "Ball":
        b = object.__new__(cls)
        b.center, b.depth = center, depth
        b._key = (depth, center.x)
        return b

    @property
    def field(self) -> LocalFieldSpec:
        return self.center.field

    def __eq__(self, other):
        return isinstance(other, Ball) and self.field == other.field and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def sort_key(self):
        # nonzero (position, digit) pairs of the truncated center
        if not self.center:
            return (self.depth, ())
        v = self.center.valuation
        digits = self.center.unit_digits(self.depth - v)
        return (self.depth, tuple((k, d) for k, d in zip(range(v, self.depth), digits) if d))

    def __repr__(self):
        return f"Ball({self.center.render()}, {self.depth})"

    def measure(self) -> Fraction:
        return Fraction(self.field.p) ** (-self.depth)

    def contains_point(self, x: KElem) -> bool:
        return (x - self.center).valuation >= self.depth

    def contains_ball(self, other: "Ball") -> bool:
        return other.depth >= self.depth and self.contains_point(other.center)

    def intersect(self, other: "Ball") -> "Ball | None":
        if self.depth <= other.depth:
            return other if self.contains_point(other.center) else None
        return self if other.contains_point(self.center) else None

    def split(self, m: int) -> list["Ball"]:
        """The p^(m-depth) sub-balls of depth m, in digit order."""
        if m < self.depth:
            raise ValueError(f"cannot split depth {self.depth} ball to depth {m}")
        balls = [self]
        for k in range(self.depth, m):
            digits = self.field.digit_elements(k)
            balls = [Ball._raw(b.center + d, k + 1) for b in balls for d in digits]
        return balls


def ball_measure(b: Ball) -> Fraction:
    return b.measure()


def ball_member(x: KElem, b: Ball) -> bool:
    return b.contains_point(x)


def ball_split(b: Ball, m: int) -> list[Ball]:
    return b.split(m)
