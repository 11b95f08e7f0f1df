import itertools
import random
from fractions import Fraction

import pytest

from valint.errors import DepthLimitError, SingularMatrixError
from valint.gamma_values import GammaValue
from valint.linalg import Matrix
from valint.local_field import Ball
from valint.random_gen import random_kelem, random_kmatrix, random_step_function
from valint.step_functions import (Box, StepFunction, enumerate_integral, sf_add,
                                   sf_affine_pullback, sf_canonicalize, sf_eval,
                                   sf_haar_integral, sf_indicator, sf_partial_integral, sf_scale,
                                   sf_section)

from oracles import pointwise_equal, pullback_by_enumeration
from strategies import F2u, Q3

O = Ball(Q3(0), 0)


def box(*balls):
    return Box(balls)


def test_eval_on_unit_square():
    f = sf_indicator(box(O, O))
    assert sf_eval(f, (Q3(0), Q3(0))) == 1
    assert sf_eval(f, (Q3(Fraction(1, 3)), Q3(0))) == 0


def test_f_minus_f_is_zero():
    f = sf_indicator(box(O, Ball(Q3(1), 1)))
    assert sf_canonicalize(sf_add(f, sf_scale(-1, f))).terms == ()


def test_canonical_form_of_overlapping_balls():
    f = sf_add(sf_indicator(box(O)), sf_indicator(box(Ball(Q3(1), 1))))
    c = sf_canonicalize(f)
    assert [(b.balls[0].center, b.balls[0].depth) for b, _ in c.terms] == \
        [(Q3(0), 1), (Q3(1), 1), (Q3(2), 1)]
    assert [v for _, v in c.terms] == [1, 2, 1]
    assert sf_canonicalize(c).terms == c.terms
    assert pointwise_equal(f, c, 0, 2)


def test_haar_integral_examples():
    assert sf_haar_integral(sf_indicator(box(O, O))) == 1
    assert sf_haar_integral(sf_indicator(box(Ball(Q3(0), 1), Ball(Q3(0), 2)))) == Fraction(1, 27)
    assert sf_haar_integral(sf_indicator(box(Ball(Q3(0), -1)))) == 3


def test_gamma_valued_coefficients():
    X = GammaValue.X((1,))
    f = sf_scale(X, sf_indicator(box(Ball(Q3(0), 1))))
    assert sf_haar_integral(f) == X / 3


def test_sections():
    f = sf_indicator(box(O, O))
    assert sf_section(f, 0, Q3(0)).equals(sf_indicator(box(O)))
    assert sf_section(f, 0, Q3(Fraction(1, 3))).terms == ()


def test_partial_integral_of_square():
    f = sf_indicator(box(O, Ball(Q3(2), 1)))
    assert sf_partial_integral(f, 1).equals(sf_scale(Fraction(1, 3), sf_indicator(box(O))))
    assert sf_partial_integral(f, 0).equals(sf_indicator(box(Ball(Q3(2), 1))))


def test_pullback_identity():
    f = random_step_function(Q3, 2, random.Random(0))
    g = sf_affine_pullback(f, Matrix.identity(Q3, 2))
    assert g.equals(f)


def test_pullback_diag_p():
    f = sf_indicator(box(O, O))
    g = sf_affine_pullback(f, Matrix(Q3, [[3, 0], [0, 1]]))
    assert sf_haar_integral(g) == 3
    assert pullback_by_enumeration(f, Matrix(Q3, [[3, 0], [0, 1]]), (Q3(0), Q3(0)), -1, 0) == 3


def test_pullback_by_rotation_preserves_unit_square():
    f = sf_indicator(box(O, O))
    g = sf_affine_pullback(f, Matrix(Q3, [[0, 1], [-1, 0]]))
    assert g.equals(f)
    assert sf_haar_integral(g) == 1


def test_pullback_pointwise_against_direct_evaluation():
    rng = random.Random(7)
    for _ in range(10):
        f = random_step_function(Q3, 2, rng, dmax=1)
        A = random_kmatrix(Q3, 2, rng, lo=-1, hi=1)
        b = (random_kelem(Q3, rng, 0, 1), random_kelem(Q3, rng, 0, 1))
        g = sf_affine_pullback(f, A, b)
        for u in itertools.product([Q3(k) / 9 for k in range(-4, 5)], repeat=2):
            y = A.apply(u)
            assert g.eval(u) == f.eval((y[0] + b[0], y[1] + b[1]))


def test_pullback_singular_matrix():
    with pytest.raises(SingularMatrixError):
        sf_affine_pullback(sf_indicator(box(O, O)), Matrix(Q3, [[1, 1], [1, 1]]))


def test_pullback_depth_limit():
    f = sf_indicator(box(Ball(Q3(0), 6), Ball(Q3(0), 6)))
    with pytest.raises(DepthLimitError):
        sf_affine_pullback(f, Matrix(Q3, [[1, 1], [1, 4]]), depth_limit=5)


def test_canonical_depth_limit():
    f = sf_add(sf_indicator(box(Ball(Q3(0), -3))), sf_indicator(box(Ball(Q3(0), 5))))
    with pytest.raises(DepthLimitError):
        f.canonical(depth_limit=100)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        sf_add(sf_indicator(box(O)), sf_indicator(box(O, O)))


def test_partial_integrals_commute():
    rng = random.Random(11)
    for K in (Q3, F2u):
        for _ in range(10):
            f = random_step_function(K, 3, rng)
            vals = []
            for order in itertools.permutations(range(3)):
                g, rest = f, list(range(3))
                for c in order:
                    g = sf_partial_integral(g, rest.index(c))
                    rest.remove(c)
                vals.append(sf_haar_integral(g))
            assert all(v == sf_haar_integral(f) for v in vals)


def test_enumeration_oracle_matches_haar_integral():
    rng = random.Random(5)
    for _ in range(20):
        f = random_step_function(Q3, rng.choice((1, 2)), rng)
        assert enumerate_integral(f, 2) == sf_haar_integral(f)


def test_translation_invariance():
    rng = random.Random(9)
    for _ in range(10):
        f = random_step_function(Q3, 2, rng)
        b = (random_kelem(Q3, rng), random_kelem(Q3, rng))
        g = sf_affine_pullback(f, Matrix.identity(Q3, 2), b)
        assert sf_haar_integral(g) == sf_haar_integral(f)


def test_zero_dimensional_constant():
    c = StepFunction.constant(Q3, 5)
    assert sf_haar_integral(c) == 5
    assert sf_eval(c, ()) == 5
