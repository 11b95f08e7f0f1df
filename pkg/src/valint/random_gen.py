"""Seeded generators for random fields elements, step functions and matrices."""
from __future__ import annotations

import random

from .errors import PrecisionError
from .gamma_values import GammaValue
from .lift_integrate import FFunction, lift
from .linalg import Matrix
from .local_field import Ball, KElem, LocalFieldSpec
from .step_functions import Box, StepFunction
from .valued_field import FElem, ValuedFieldSpec


def random_kelem(K: LocalFieldSpec, rng: random.Random, vmin=-2, vmax=2, ndigits=3) -> KElem:
    if rng.random() < 0.1:
        return K.zero()
    v = rng.randint(vmin, vmax)
    digits = [rng.randrange(1, K.p)] + [rng.randrange(K.p) for _ in range(ndigits - 1)]
    return K.from_digits(v, digits)


def random_unit(K: LocalFieldSpec, rng: random.Random, ndigits=3) -> KElem:
    digits = [rng.randrange(1, K.p)] + [rng.randrange(K.p) for _ in range(ndigits - 1)]
    return K.from_digits(0, digits)


def random_ball(K: LocalFieldSpec, rng: random.Random, dmin=0, dmax=2) -> Ball:
    depth = rng.randint(dmin, dmax)
    center = random_kelem(K, rng, vmin=min(0, depth), vmax=max(depth, 0) + 1)
    return Ball(center, depth)


def random_step_function(K, n, rng, max_terms=3, dmin=0, dmax=2, rank=1,
                         coeffs=(1, 2, -1, 3)) -> StepFunction:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        box = Box(random_ball(K, rng, dmin, dmax) for _ in range(n))
        terms.append((box, rng.choice(coeffs)))
    return StepFunction(K, n, terms, rank)


def random_group_element(rng, rank, lo=-2, hi=2) -> tuple:
    return tuple(rng.randint(lo, hi) for _ in range(rank))


def random_felem(F: ValuedFieldSpec, rng: random.Random, lo=-2, hi=2, nterms=2,
                 allow_zero=True) -> FElem:
    """A Laurent polynomial whose valuation has first component in [lo, hi]."""
    if allow_zero and rng.random() < 0.15:
        return F.zero()
    terms = {}
    lead = (rng.randint(lo, hi),) + random_group_element(rng, F.rank - 1, -1, 1)
    terms[lead] = random_unit(F.base, rng) * F.base.pi_power(rng.randint(-1, 1))
    for _ in range(nterms - 1):
        g = (lead[0] + rng.randint(1, 2),) + random_group_element(rng, F.rank - 1, -1, 1)
        c = random_kelem(F.base, rng, -1, 1)
        if c:
            terms[g] = terms[g] + c if g in terms else c
    return FElem(F, terms)


def random_fmatrix(F: ValuedFieldSpec, n: int, rng: random.Random, lo=-2, hi=2,
                   tries=50) -> Matrix:
    """A random element of GL_n(F) whose determinant is decidable."""
    for _ in range(tries):
        M = Matrix(F, [[random_felem(F, rng, lo, hi) for _ in range(n)] for _ in range(n)])
        try:
            d = M.det()
            if not d.is_zero_to_precision():
                d.nu()
                return M
        except PrecisionError:
            continue
    raise RuntimeError("could not generate an invertible matrix")


def random_kmatrix(K: LocalFieldSpec, n: int, rng: random.Random, lo=-2, hi=2) -> Matrix:
    while True:
        M = Matrix(K, [[random_kelem(K, rng, lo, hi, ndigits=2) for _ in range(n)]
                       for _ in range(n)])
        if M.det():
            return M


def random_lift(F: ValuedFieldSpec, n, rng, dmax=2, max_terms=3) -> FFunction:
    g = random_step_function(F.base, n, rng, max_terms=max_terms, dmax=dmax, rank=F.rank)
    a = tuple(random_felem(F, rng) for _ in range(n))
    gamma = tuple(random_group_element(rng, F.rank) for _ in range(n))
    coeff = GammaValue.monomial(rng.choice((1, 2, -1)), random_group_element(rng, F.rank, -1, 1))
    return FFunction.from_lift(lift(g, a, gamma, coeff), F)
