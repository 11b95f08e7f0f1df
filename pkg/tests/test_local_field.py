from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valint.errors import DomainError
from valint.local_field import (Ball, LaurentFF, PAdic, ball_measure, ball_member, ball_split,
                                k_abs, k_inv, k_valuation)

from strategies import F2u, F3u, Q3, Q5, kelems


def test_padic_valuation_and_abs():
    assert k_valuation(Q3(3)) == 1
    assert k_valuation(Q3(Fraction(1, 3))) == -1
    assert k_abs(Q3(Fraction(1, 3))) == 3
    assert k_abs(Q3(18)) == Fraction(1, 9)
    assert k_valuation(Q3(0)) == float("inf")


def test_padic_digits():
    # -1 = 2 + 2*3 + 2*9 + ...
    assert Q3(-1).unit_digits(4) == [2, 2, 2, 2]
    # 1/2 = 2 + 1*3 + 1*9 + ... in Z_3
    assert Q3(Fraction(1, 2)).unit_digits(4) == [2, 1, 1, 1]
    assert Q5(Fraction(7, 5)).digit_at(-1) == 2
    assert Q5(Fraction(7, 5)).digit_at(0) == 1


def test_laurent_inverse_expansion():
    u = F2u.uniformizer()
    x = k_inv(1 + u)
    assert x.unit_digits(6) == [1, 1, 1, 1, 1, 1]
    assert x * (1 + u) == 1
    assert F3u(2) + F3u(2) == F3u(1)


def test_laurent_rejects_denominators_divisible_by_p():
    with pytest.raises(DomainError):
        F2u(Fraction(1, 2))


def test_zero_has_no_inverse_or_abs():
    with pytest.raises(DomainError):
        k_inv(Q3(0))
    with pytest.raises(DomainError):
        Q3(0).abs()


def test_from_digits_round_trip():
    x = Q3.from_digits(-1, [1, 2, 0, 1])
    assert x == Fraction(1, 3) + 2 + 9
    assert x.unit_digits(4) == [1, 2, 0, 1]


def test_ball_canonical_center_and_membership():
    b = Ball(Q3(10), 1)  # 10 = 1 + 3*3, so the ball is 1 + 3 Z_3
    assert b == Ball(Q3(1), 1)
    assert ball_member(Q3(4), b)
    assert not ball_member(Q3(2), b)
    assert ball_measure(b) == Fraction(1, 3)
    assert Ball(Q3(0), -2).measure() == 9


def test_ball_split_of_ring_of_integers():
    kids = ball_split(Ball(Q3(0), 0), 1)
    assert [k.center for k in kids] == [Q3(0), Q3(1), Q3(2)]
    assert len(ball_split(Ball(Q3(0), 0), 2)) == 9
    assert sum(k.measure() for k in ball_split(Ball(Q5(1), -1), 2)) == 5


def test_ball_intersection():
    big, small = Ball(Q3(0), 0), Ball(Q3(3), 2)
    assert big.intersect(small) == small
    assert small.intersect(big) == small
    assert Ball(Q3(1), 1).intersect(Ball(Q3(2), 1)) is None
    assert big.contains_ball(small) and not small.contains_ball(big)


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        PAdic(4)
    with pytest.raises(ValueError):
        LaurentFF(1)


def test_laurent_render():
    u = F3u.uniformizer()
    assert (2 * u ** -1 + 1).render() == "2*u^-1 + 1"
    assert k_inv(1 + u).render() == "1/(1 + u)"


@pytest.mark.parametrize("K", [Q3, F2u, F3u])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_field_axioms(K, data):
    a = data.draw(kelems(K))
    b = data.draw(kelems(K))
    c = data.draw(kelems(K, nonzero=True))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a / c) * c == a
    assert a - a == 0


@pytest.mark.parametrize("K", [Q3, F2u])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_valuation_laws(K, data):
    a = data.draw(kelems(K, nonzero=True))
    b = data.draw(kelems(K, nonzero=True))
    assert (a * b).valuation == a.valuation + b.valuation
    assert (a * b).abs() == a.abs() * b.abs()
    if a + b:
        assert (a + b).valuation >= min(a.valuation, b.valuation)
