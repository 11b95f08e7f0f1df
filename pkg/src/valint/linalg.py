"""Small dense matrices over K or F.

Elimination always pivots on an entry of minimal valuation (lowest row
index on ties), which keeps multipliers integral and makes every
factorization deterministic.
"""
from __future__ import annotations

from .errors import PrecisionError, SingularMatrixError
from .local_field import KElem


def val_info(x):
    if isinstance(x, KElem):
        return ("zero", None) if not x else ("val", x.valuation)
    return x.val_info()


def choose_pivot(entries):
    """Index of the entry of minimal valuation, or None if all are exactly zero.

    Raises PrecisionError when an entry that is zero only to precision might
    still have smaller valuation than the best known one.
    """
    best, best_v, bound = None, None, None
    for i, x in enumerate(entries):
        kind, v = val_info(x)
        if kind == "val":
            if best_v is None or v < best_v:
                best, best_v = i, v
        elif kind == "bound":
            bound = v if bound is None else min(bound, v)
    if bound is not None and (best_v is None or bound <= best_v):
        raise PrecisionError("pivot choice depends on coefficients beyond the cutoff")
    return best


class Matrix:
    """An immutable n x m matrix; ``field`` is a LocalFieldSpec or ValuedFieldSpec."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @classmethod
    def _trusted(cls, field, rows):
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls._trusted(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, field, entries):
        z = field.zero()
        n = len(entries)
        return cls._trusted(field, [[entries[i] if i == j else z for j in range(n)]
                                    for i in range(n)])

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix._trusted(self.field, list(zip(*self.rows)) if self.rows else [])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows))
            if self.shape[1] != other.shape[0]:
                raise ValueError("dimension mismatch")
            z = self.field.zero()
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    s = z
                    for a, b in zip(r, c):
                        if not _is_exact_zero(a) and not _is_exact_zero(b):
                            s = s + a * b
                    row.append(s)
                out.append(row)
            return Matrix._trusted(self.field, out)
        return self.apply(other)

    def apply(self, v):
        """Matrix-vector product, returning a tuple."""
        if len(v) != self.shape[1]:
            raise ValueError("dimension mismatch")
        z = self.field.zero()
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if not _is_exact_zero(a) and not _is_exact_zero(b):
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def map(self, fn, field=None) -> "Matrix":
        return Matrix._trusted(field or self.field, [[fn(x) for x in r] for r in self.rows])

    def delete(self, i, j) -> "Matrix":
        """Remove row i and column j."""
        return Matrix._trusted(self.field, [[x for c, x in enumerate(r) if c != j]
                                            for k, r in enumerate(self.rows) if k != i])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)))

    __hash__ = None

    def render(self) -> str:
        return "[" + ", ".join("[" + ", ".join(x.render() for x in r) + "]"
                               for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self.render()})"

    # -- elimination ----------------------------------------------------------

    def lu(self):
        """Valuation-pivoted elimination: returns (perm, L, R) with rows perm of self = L R.

        ``perm[i]`` is the original index of row i; L is unit lower triangular
        with integral entries, R upper triangular.
        """
        n, m = self.shape
        if n != m:
            raise ValueError("square matrix required")
        rows = [list(r) for r in self.rows]
        perm = list(range(n))
        z = self.field.zero()
        L = [[z] * n for _ in range(n)]
        for j in range(n):
            piv = choose_pivot([rows[i][j] for i in range(j, n)])
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            piv += j
            if piv != j:
                rows[j], rows[piv] = rows[piv], rows[j]
                perm[j], perm[piv] = perm[piv], perm[j]
                L[j], L[piv] = L[piv], L[j]
            inv = rows[j][j].inverse()
            for i in range(j + 1, n):
                if _is_exact_zero(rows[i][j]):
                    continue
                mult = rows[i][j] * inv
                L[i][j] = mult
                rows[i] = [z if k == j else (rows[i][k] - mult * rows[j][k] if k > j else rows[i][k])
                           for k in range(n)]
        one = self.field.one()
        for i in range(n):
            L[i][i] = one
        return perm, Matrix._trusted(self.field, L), Matrix._trusted(self.field, rows)

    def det(self):
        n = self.n
        if n == 0:
            return self.field.one()
        try:
            perm, _, R = self.lu()
        except SingularMatrixError:
            return self.field.zero()
        d = self.field.one()
        for i in range(n):
            d = d * R[i, i]
        return -d if _perm_sign(perm) < 0 else d

    def inverse(self) -> "Matrix":
        n = self.n
        if n == 0:
            return self
        perm, L, R = self.lu()
        z, one = self.field.zero(), self.field.one()
        cols = []
        for k in range(n):
            # solve L R x = P e_k
            e = [one if perm[i] == k else z for i in range(n)]
            y = forward_substitute(L, e)
            cols.append(back_substitute(R, y))
        return Matrix._trusted(self.field, [[cols[j][i] for j in range(n)] for i in range(n)])


def _is_exact_zero(x):
    if isinstance(x, KElem):
        return not x
    return x.is_exact_zero()


def _perm_sign(perm):
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def forward_substitute(L: Matrix, b):
    """Solve L y = b for unit lower triangular L."""
    y = []
    for i in range(L.n):
        s = b[i]
        for k in range(i):
            if not _is_exact_zero(L[i, k]):
                s = s - L[i, k] * y[k]
        y.append(s)
    return tuple(y)


def back_substitute(R: Matrix, b):
    """Solve R x = b for invertible upper triangular R."""
    n = R.n
    x = [None] * n
    for i in reversed(range(n)):
        s = b[i]
        for k in range(i + 1, n):
            if not _is_exact_zero(R[i, k]):
                s = s - R[i, k] * x[k]
        x[i] = s if _is_one(R[i, i]) else s * R[i, i].inverse()
    return tuple(x)


def _is_one(x):
    if isinstance(x, KElem):
        return x == 1
    return x.is_exact and len(x.terms) == 1 and x.terms.get(x.field.origin) == 1


def permutation_matrix(field, perm) -> Matrix:
    """P with (P v)[i] = v[perm[i]]."""
    n = len(perm)
    z, o = field.zero(), field.one()
    return Matrix._trusted(field, [[o if perm[i] == j else z for j in range(n)] for i in range(n)])
