"""Integrals over M_N(F) and GL_N(F).

Matrices are identified with F^(N*N) row-major: coordinate i*N + j is the
(i, j) entry.  A function phi on GL_N(F) is represented by its extension
x -> phi(x) |det x|^(-N) to M_N(F), which is an FFunction; the GL integral
is the M_N integral of the extension.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DepthLimitError, SingularMatrixError
from .gamma_values import GammaValue
from .lift_integrate import FFunction, lift
from .linalg import Matrix, permutation_matrix
from .local_field import Ball
from .step_functions import DEFAULT_DEPTH_LIMIT, Box, StepFunction
from .valued_field import ValuedFieldSpec

DEFAULT_VMAX = 3


@dataclass(frozen=True)
class IwasawaFactors:
    A: Matrix
    U: Matrix
    Lam: Matrix

    def product(self) -> Matrix:
        return self.A @ self.U @ self.Lam


def iwasawa(tau: Matrix) -> IwasawaFactors:
    """tau = A U Lam with A in GL_n(O_F), U unipotent upper triangular, Lam diagonal."""
    F = tau.field
    n = tau.n
    perm, L, R = tau.lu()
    if all(R[i, i].nu() == F.origin for i in range(n)) and all(
            R[i, j].is_integral() for i in range(n) for j in range(i, n)):
        return IwasawaFactors(tau, Matrix.identity(F, n), Matrix.identity(F, n))
    inv = [0] * n
    for i, k in enumerate(perm):
        inv[k] = i
    A = permutation_matrix(F, inv) @ L
    diag = [R[j, j] for j in range(n)]
    dinv = [d.inverse() for d in diag]
    z, one = F.zero(), F.one()
    U = Matrix._trusted(F, [[one if i == j else (R[i, j] * dinv[j] if j > i else z)
                             for j in range(n)] for i in range(n)])
    return IwasawaFactors(A, U, Matrix.diagonal(F, diag))


def det_abs(tau: Matrix) -> GammaValue:
    d = tau.det()
    if d.is_exact_zero():
        raise SingularMatrixError("matrix is singular")
    return d.abs()


# -- coordinates ---------------------------------------------------------------------

def to_matrix(x, N) -> list:
    return [list(x[i * N:(i + 1) * N]) for i in range(N)]


def from_matrix(rows) -> tuple:
    return tuple(v for r in rows for v in r)


def right_action(sigma: Matrix) -> Matrix:
    """r_sigma on F^(N*N): the coordinates of T(x) sigma."""
    N = sigma.n
    n = N * N
    z = sigma.field.zero()
    rows = [[z] * n for _ in range(n)]
    for i in range(N):
        for j in range(N):
            for k in range(N):
                rows[i * N + j][i * N + k] = sigma[k, j]
    return Matrix._trusted(sigma.field, rows)


def left_action(sigma: Matrix) -> Matrix:
    """l_sigma on F^(N*N): the coordinates of sigma T(x)."""
    N = sigma.n
    n = N * N
    z = sigma.field.zero()
    rows = [[z] * n for _ in range(n)]
    for i in range(N):
        for j in range(N):
            for k in range(N):
                rows[i * N + j][k * N + j] = sigma[i, k]
    return Matrix._trusted(sigma.field, rows)


def mn_integral(f: FFunction, verify: bool = False) -> GammaValue:
    value = f.closed_form()
    if verify and f.repeated_integral() != value:
        raise AssertionError("repeated integral disagrees with the closed form")
    return value


# -- the determinant weight ----------------------------------------------------------

def _det_bound(centers, depths, N):
    """A lower bound for v(det(C + E) - det(C)) over E in the box."""
    w = [[min(centers[i][j].valuation, depths[i][j]) for j in range(N)] for i in range(N)]
    best = None
    for perm in itertools.permutations(range(N)):
        for i in range(N):
            b = depths[i][perm[i]] + sum(w[l][perm[l]] for l in range(N) if l != i)
            best = b if best is None else min(best, b)
    return best


def _kdet(rows):
    N = len(rows)
    if N == 1:
        return rows[0][0]
    K = rows[0][0].field
    return Matrix(K, rows).det()


def gl_weight(g: StepFunction, N: int, v_max: int = DEFAULT_VMAX,
              depth_limit: int = DEFAULT_DEPTH_LIMIT) -> StepFunction:
    """u -> g(u) |det u|^(-N), refining boxes until |det| is constant on each."""
    if g.dim != N * N:
        raise ValueError(f"expected a function on K^{N * N}")
    K = g.field
    out = []
    work = 0
    for box, coeff in g.terms:
        stack = [box]
        while stack:
            b = stack.pop()
            work += 1
            if work > depth_limit:
                raise DepthLimitError("determinant refinement exceeded the depth limit")
            cs = to_matrix([bl.center for bl in b.balls], N)
            ks = to_matrix([bl.depth for bl in b.balls], N)
            d = _kdet(cs)
            vd = d.valuation
            bound = _det_bound(cs, ks, N)
            if vd < bound:
                if vd > v_max:
                    raise DepthLimitError(f"determinant valuation {vd} exceeds v_max={v_max}")
                out.append((b, coeff * Fraction(K.p) ** (N * vd)))
                continue
            if bound > v_max:
                raise DepthLimitError(f"support meets determinant valuation above v_max={v_max}")
            idx = min(range(N * N), key=lambda c: (b.balls[c].depth, c))
            bl = b.balls[idx]
            for child in bl.split(bl.depth + 1):
                stack.append(Box(b.balls[:idx] + (child,) + b.balls[idx + 1:]))
    return StepFunction(K, N * N, out, g.rank).merged()


# -- GL functions --------------------------------------------------------------------

@dataclass(frozen=True)
class GLFunction:
    extension: FFunction
    N: int
    description: str = ""

    def integral(self) -> GammaValue:
        return mn_integral(self.extension)


def gl_integral(phi: GLFunction) -> GammaValue:
    return phi.integral()


def gl_translate(phi: GLFunction, sigma: Matrix, side: str = "right") -> GLFunction:
    """tau -> phi(tau sigma) (side='right') or phi(sigma tau) (side='left')."""
    if sigma.n != phi.N:
        raise ValueError("translating by a matrix of the wrong size")
    if side == "right":
        action = right_action(sigma)
    elif side == "left":
        action = left_action(sigma)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    weight = det_abs(sigma) ** phi.N
    ext = phi.extension.compose(action).scale(weight)
    return GLFunction(ext, phi.N, f"{side} translate of {phi.description or 'phi'}")


def lift_group(g: StepFunction, field: ValuedFieldSpec, target: str = "M",
               N: int | None = None, v_max: int = DEFAULT_VMAX):
    """g^0 on M_N(F) (an FFunction) or on GL_N(F) (a GLFunction)."""
    if N is None:
        N = round(g.dim ** 0.5)
    if N * N != g.dim:
        raise ValueError("step function does not live on a space of square matrices")
    zero = (field.zero(),) * g.dim
    gamma = (field.origin,) * g.dim
    if target == "M":
        return FFunction.from_lift(lift(g, zero, gamma), field)
    if target == "GL":
        w = gl_weight(g, N, v_max)
        return GLFunction(FFunction.from_lift(lift(w, zero, gamma), field), N, "lift")
    raise ValueError(f"target must be 'M' or 'GL', not {target!r}")


def unit_det_cell(K, N: int, depth: int = 1, rank: int = 1) -> StepFunction:
    """Indicator of {u in M_N(O_K) : det u is a unit}, as depth-`depth` boxes."""
    reps = [b.center for b in Ball(K.zero(), 0).split(depth)]
    terms = []
    for entries in itertools.product(reps, repeat=N * N):
        if _kdet(to_matrix(entries, N)).valuation == 0:
            terms.append((Box(Ball(e, depth) for e in entries), 1))
    return StepFunction(K, N * N, terms, rank)
