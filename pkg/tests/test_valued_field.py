from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valint.errors import DomainError, PrecisionError
from valint.gamma_values import GammaValue
from valint.valued_field import (ValuedFieldSpec, f_abs, f_inv, f_is_integral, f_nu,
                                 f_residue, f_split, in_coset)

from strategies import F2u, Q3, felems

F1 = ValuedFieldSpec(Q3, rank=1, depth=6)
F2 = ValuedFieldSpec(Q3, rank=2, depth=4)
G1 = ValuedFieldSpec(F2u, rank=1, depth=6)


def test_split_valuation_is_a_section():
    for g in [(-3,), (0,), (5,)]:
        assert f_nu(f_split(F1, g)) == g
    for a in range(-2, 3):
        for b in range(-2, 3):
            assert f_nu(f_split(F2, (a, b))) == (a, b)


def test_valuation_is_lexicographic_in_rank_two():
    t1, t2 = F2.var(0), F2.var(1)
    assert f_nu(t1 + t2 ** -5) == (0, -5)
    assert f_nu(t1 * t2 ** -9 + t1 ** 2) == (1, -9)


def test_abs_combines_residue_and_value_group():
    t = F1.var()
    assert f_abs(3 * t ** 2 + t ** 3) == GammaValue.monomial(Fraction(1, 3), (2,))
    assert f_abs(F1(Fraction(1, 9))) == 9


def test_residue_of_integral_elements():
    t = F1.var()
    assert f_residue(5 + t) == Q3(5)
    assert f_residue(t ** 3) == 0
    with pytest.raises(DomainError):
        f_residue(t ** -1)


def test_integrality():
    t = F1.var()
    assert f_is_integral(t ** 2 + 7)
    assert not f_is_integral(t ** -1 + 1)
    assert f_is_integral(F1.zero())


def test_inverse_is_geometric_series_with_cutoff():
    t = F1.var()
    x = f_inv(1 - t)
    assert x.cutoff == (6,)
    assert all(x.coefficient((k,)) == 1 for k in range(6))
    with pytest.raises(PrecisionError):
        x.coefficient((6,))
    assert x * (1 - t) == 1


def test_inverse_of_monomial_is_exact():
    t = F1.var()
    x = f_inv(3 * t ** 2)
    assert x.is_exact
    assert x == Fraction(1, 3) * t ** -2


def test_inverse_over_laurent_residue_field():
    t, u = G1.var(), F2u.uniformizer()
    x = G1(1 + u) + t
    assert (x * f_inv(x)) == 1


def test_zero_to_precision_valuation_raises():
    t = F1.var()
    x = f_inv(1 - t) - f_inv(1 - t)
    assert x.is_zero_to_precision() and not x.is_exact
    with pytest.raises(PrecisionError):
        x.nu()
    with pytest.raises(DomainError):
        F1.zero().nu()


def test_cosets():
    t = F1.var()
    assert in_coset(t ** -1 + 2 * t, t ** -1, (1,))
    assert not in_coset(t ** -1 + 2, t ** -1, (1,))
    assert in_coset(t ** -1 + 2, t ** -1, (0,))


def test_render():
    t1, t2 = F2.var(0), F2.var(1)
    assert (t1 * t2 ** -1 - 3 + Fraction(1, 3) * t1 ** 2).render() == "-3 + t1*t2^-1 + 1/3*t1^2"
    assert f_inv(1 + F1.var()).render() == "1 - t + t^2 - t^3 + t^4 - t^5 + O(t^6)"


@pytest.mark.parametrize("F", [F1, F2, G1])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_field_axioms(F, data):
    a = data.draw(felems(F))
    b = data.draw(felems(F))
    c = data.draw(felems(F, nonzero=True))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * c) / c == a


@pytest.mark.parametrize("F", [F1, F2, G1])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_abs_is_multiplicative(F, data):
    a = data.draw(felems(F, nonzero=True))
    b = data.draw(felems(F, nonzero=True))
    assert f_abs(a * b) == f_abs(a) * f_abs(b)
    assert f_nu(a * b) == tuple(x + y for x, y in zip(f_nu(a), f_nu(b)))
