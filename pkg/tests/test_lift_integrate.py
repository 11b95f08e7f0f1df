import itertools
import random
from fractions import Fraction

import pytest

from valint.errors import DomainError, SingularMatrixError
from valint.gamma_values import GammaValue
from valint.linalg import Matrix
from valint.lift_integrate import (FFunction, case_lemma_matrix, case_lemma_section,
                                   ff_eval, fubini_report, integral_closed_form,
                                   integrate_simple, lift, partial_integral, repeated_integral,
                                   scale_translate)
from valint.local_field import Ball
from valint.random_gen import random_felem, random_fmatrix, random_lift, random_step_function
from valint.step_functions import Box, sf_indicator
from valint.valued_field import ValuedFieldSpec

from oracles import lift_by_hand
from strategies import F2u, Q3

F = ValuedFieldSpec(Q3, rank=1, depth=8)
F2 = ValuedFieldSpec(Q3, rank=2, depth=6)
G = ValuedFieldSpec(F2u, rank=1, depth=8)
t = F.var()
X = GammaValue.X


def ind(K, *balls, rank=1):
    return sf_indicator(Box(tuple(Ball(K(c), d) for c, d in balls)), rank)


def ff(term, field=F):
    return FFunction.from_lift(term, field)


def test_lift_of_unit_ball_integrates_to_one():
    g = ind(Q3, (0, 0))
    assert integrate_simple(lift(g, (F.zero(),), ((0,),))) == 1


def test_lift_with_shifted_value_group():
    g = ind(Q3, (0, 0))
    assert integrate_simple(lift(g, (F.zero(),), ((2,),))) == X((2,))


def test_lift_at_t_inverse():
    g = ind(Q3, (0, 1))
    term = lift(g, (t ** -1,), ((-1,),))
    assert integrate_simple(term) == X((-1,)) / 3
    f = ff(term)
    assert f.repeated_integral() == X((-1,)) / 3


def test_scaling_by_t():
    f = ff(lift(ind(Q3, (0, 0)), (F.zero(),), ((0,),)))
    # x -> f(t x) is supported on t^-1 O_F
    assert scale_translate(f, (t,)).repeated_integral() == X((-1,))


def test_two_variable_lift_weight_adds_gammas():
    f = ff(lift(ind(Q3, (0, 0), (0, 0)), (F.zero(), F.zero()), ((1,), (2,))))
    assert integral_closed_form(f) == X((3,))
    assert repeated_integral(f, (1, 0)) == X((3,))


def test_compose_with_diagonal():
    f = ff(lift(ind(Q3, (0, 0), (0, 0)), (F.zero(), F.zero()), ((0,), (0,))))
    h = f.compose(Matrix.diagonal(F, [t, F.one()]))
    assert repeated_integral(h, (0, 1)) == X((-1,))
    assert repeated_integral(h, (1, 0)) == X((-1,))


def test_rank_two_value_group():
    t1, t2 = F2.var(0), F2.var(1)
    g = ind(Q3, (0, 0), (0, 0), rank=2)
    f = FFunction.from_lift(lift(g, (F2.zero(), F2.zero()), ((0, 1), (1, -1))), F2)
    h = f.compose(Matrix(F2, [[t1, t2], [1, 1 + t2]]))
    rep = fubini_report(h)
    assert rep.passed
    # det = -t2 + t1 + t1*t2 has valuation (0, 1)
    assert rep.closed_form == X((1, -1))
    with pytest.raises(ValueError):
        FFunction.from_lift(lift(ind(Q3, (0, 0)), (F2.zero(),), ((0, 0),)), F2)


def test_eval_matches_definition():
    rng = random.Random(2)
    g = random_step_function(Q3, 1, rng)
    a = t ** -1 + 2
    term = lift(g, (a,), ((-1,),), coeff=1)
    for k in range(-3, 4):
        for c in range(9):
            x = F(c) * t ** k + t ** -1
            assert term.eval((x,)) == lift_by_hand(g, a, (-1,), x)


def test_ff_eval_after_compose():
    f = ff(lift(ind(Q3, (0, 0), (0, 1)), (F.zero(), F.zero()), ((0,), (0,))))
    h = f.compose(Matrix(F, [[1, 1], [0, 1]]))
    # h(x, y) = f(x + y, y)
    assert ff_eval(h, (F(5), F(-2))) == 0
    assert ff_eval(h, (F(5), F(-3))) == 1


def test_case_lemma_matrices():
    assert case_lemma_matrix(Q3, (-1,), 1) == Matrix(Q3, [[0, 1], [-1, 0]])
    assert case_lemma_matrix(Q3, (0,), 1) == Matrix(Q3, [[0, 1], [-1, 1]])
    assert case_lemma_matrix(Q3, (2,), 1) == Matrix(Q3, [[1, 0], [-1, 1]])


@pytest.mark.parametrize("field", [F, G])
def test_case_lemma_section_matches_direct_evaluation(field):
    rng = random.Random(13)
    K = field.base
    tt = field.var()
    for _ in range(15):
        g = random_step_function(K, 2, rng)
        alpha = random_felem(field, rng, -2, 2, allow_zero=False)
        x = random_felem(field, rng, -1, 2)
        sec = case_lemma_section(g, alpha, x)
        one = lift(g, (field.zero(), field.zero()), (field.origin, field.origin))
        for k in range(-3, 4):
            for y in [field(c) * tt ** k for c in range(1, K.p)] + [field.zero()]:
                expect = one.eval((x + alpha * y, y))
                got = sec.eval((y,)) if sec else GammaValue.zero(1)
                assert got == expect


def test_partial_integral_dimension():
    rng = random.Random(1)
    f = random_lift(F, 3, rng)
    assert partial_integral(f, 1).dim == 2
    with pytest.raises(ValueError):
        partial_integral(f, 3)


def test_zero_scale_rejected():
    f = ff(lift(ind(Q3, (0, 0)), (F.zero(),), ((0,),)))
    with pytest.raises(DomainError):
        scale_translate(f, (F.zero(),))


def test_singular_compose_detected():
    f = ff(lift(ind(Q3, (0, 0), (0, 0)), (F.zero(), F.zero()), ((0,), (0,))))
    h = f.compose(Matrix(F, [[1, 1], [1, 1]]))
    with pytest.raises(SingularMatrixError):
        h.closed_form()
    with pytest.raises(SingularMatrixError):
        h.repeated_integral()


def test_translation_and_scaling_invariants():
    rng = random.Random(21)
    for _ in range(10):
        f = random_lift(F, 2, rng)
        v = f.closed_form()
        a = (random_felem(F, rng), random_felem(F, rng))
        assert scale_translate(f, (1, 1), a).repeated_integral() == v
        s = random_felem(F, rng, allow_zero=False)
        assert scale_translate(f, (s, 1)).repeated_integral() == v / s.abs()


def test_fubini_report_is_deterministic():
    rng1, rng2 = random.Random(5), random.Random(5)
    f1 = random_lift(F, 2, rng1).compose(random_fmatrix(F, 2, rng1))
    f2 = random_lift(F, 2, rng2).compose(random_fmatrix(F, 2, rng2))
    r1, r2 = fubini_report(f1), fubini_report(f2)
    assert r1.passed and r1.render() == r2.render()
    assert r1.render().startswith("PASS, value = ")


@pytest.mark.parametrize("field", [F, G])
def test_all_orders_in_three_variables(field):
    rng = random.Random(8)
    for _ in range(4):
        f = random_lift(field, 3, rng, dmax=1, max_terms=2)
        h = f.compose(random_fmatrix(field, 3, rng, lo=-1, hi=1))
        v = h.closed_form()
        for order in itertools.permutations(range(3)):
            assert h.repeated_integral(order) == v


def test_sum_of_terms_is_additive():
    rng = random.Random(4)
    f, g = random_lift(F, 2, rng), random_lift(F, 2, rng)
    assert (f + g).repeated_integral() == f.closed_form() + g.closed_form()
    assert f.scale(Fraction(2, 3)).repeated_integral() == f.closed_form() * Fraction(2, 3)
