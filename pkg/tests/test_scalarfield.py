from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cmsbasis.scalarfield import (
    ONE,
    THETA,
    ZERO,
    PoleError,
    RationalFunction,
    format_rf,
    generalized_binomial,
    minus_theta_pow,
    parse_rational,
)

small = st.integers(min_value=-5, max_value=5)
polys = st.lists(small, min_size=1, max_size=4).map(RationalFunction)
nonzero = polys.filter(lambda r: not r.is_zero())
rfs = st.builds(lambda a, b: a / b, polys, nonzero)


def test_basic_arithmetic():
    t = THETA
    r = t / (t + 1)
    assert r + ONE / (t + 1) == ONE
    assert r * (t + 1) == t
    assert (t * t - 1) / (t - 1) == t + 1
    assert -r + r == ZERO


def test_formatting():
    assert format_rf(THETA / (THETA + 1)) == "θ/(θ + 1)"
    assert str(ZERO) == "0"
    assert str(RationalFunction(Fraction(3, 2))) == "3/2"
    assert str(minus_theta_pow(-1)) == "-1/θ"


def test_minus_theta_powers():
    assert minus_theta_pow(0) == ONE
    assert minus_theta_pow(1) == -THETA
    assert minus_theta_pow(2) == THETA * THETA
    assert minus_theta_pow(-2) * minus_theta_pow(2) == ONE


def test_generalized_binomial():
    assert generalized_binomial(THETA, 0) == ONE
    assert generalized_binomial(THETA, 2) == THETA * (THETA - 1) / 2
    assert generalized_binomial(-1, 3) == RationalFunction(-1)
    assert generalized_binomial(5, 7) == ZERO


def test_evaluation_and_poles():
    r = THETA / (THETA + 1)
    assert r.evaluate(Fraction(1, 2)) == Fraction(1, 3)
    with pytest.raises(PoleError, match="evaluation at pole"):
        (ONE / (THETA - 1)).evaluate(1)
    with pytest.raises(ZeroDivisionError, match="zero denominator"):
        ONE / ZERO


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)
    with pytest.raises(ValueError):
        parse_rational("x")


@given(rfs, rfs, rfs)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a


@given(rfs)
def test_json_round_trip(r):
    assert RationalFunction.from_json(r.to_json()) == r
