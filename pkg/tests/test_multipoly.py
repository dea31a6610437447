import pytest
from hypothesis import given, settings, strategies as st

from cmsbasis.multipoly import HyperplaneDivisionError, MultiPoly, VarSpace, format_poly, is_deformed_symmetric
from cmsbasis.scalarfield import ONE, THETA, ZERO, RationalFunction

SP = VarSpace(2, 1)
exps = st.tuples(*[st.integers(0, 2)] * 3)
coefs = st.integers(-3, 3)
polys = st.dictionaries(exps, coefs, max_size=4).map(
    lambda d: sum((MultiPoly.monomial(SP, e, c) for e, c in d.items()), MultiPoly.zero(SP)))


def x(i, sp=SP):
    return MultiPoly.var(sp, i)


def test_space_layout():
    sp = VarSpace(2, 1, 1, 1)
    assert sp.names == ("x1", "x2", "xt1", "y1", "yt1")
    assert list(sp.first_family) == [0, 1, 2]
    assert list(sp.second_family) == [3, 4]
    assert [sp.parity(i) for i in range(5)] == [0, 0, 1, 0, 1]
    assert sp.first() == VarSpace(2, 1)
    assert sp.second() == VarSpace(1, 1)
    assert VarSpace(2, 1).joint(VarSpace(1, 1)) == sp


def test_formatting():
    p = x(0) - x(2).scale(ONE / THETA)
    assert format_poly(p) == "x1 - (1/θ)·xt1"
    assert str(MultiPoly.zero(SP)) == "0"
    assert str(x(0) * x(0) + x(1)) == "x1^2 + x2"


def test_calculus():
    p = x(0) ** 3 * x(2)
    assert p.partial_derivative(0) == (x(0) ** 2 * x(2)).scale(3)
    assert p.partial_derivative(1).is_zero()
    assert x(0).mul_var(0, 2) == x(0) ** 3


def test_divided_difference():
    p = x(0) ** 3 - x(1) ** 3
    q = p.exact_divide_linear(0, 1)
    assert q == x(0) ** 2 + x(0) * x(1) + x(1) ** 2
    with pytest.raises(HyperplaneDivisionError, match="hyperplane division failed"):
        (x(0) + x(1)).exact_divide_linear(0, 1)


def test_symmetry_and_components():
    p = x(0) * x(1) + x(2) ** 2
    assert p.is_symmetric_in([0, 1])
    assert not (x(0) + x(2)).is_symmetric_in([0, 1])
    assert p.homogeneous_component(2) == p
    assert (p + x(0)).homogeneous_component(1) == x(0)
    assert p.swap(0, 2) == x(2) * x(1) + x(0) ** 2


def test_truncated_product():
    p = x(0) + x(1) + ONE_poly()
    full = p * p
    cut = p.mul_truncated(p, [0, 1], 1)
    assert cut == full.truncate_in([0, 1], 1)


def ONE_poly():
    return MultiPoly.one(SP)


def test_embed_and_restrict():
    big = VarSpace(2, 1, 1, 0)
    p = x(0) * x(2)
    e = p.embed(big, [0, 1, 2])
    assert e.space == big
    assert e.restrict(SP, [0, 1, 2]) == p


def test_evaluation():
    p = (x(0) + x(2)).scale(THETA)
    assert p.evaluate([1, 0, 2], theta=3) == RationalFunction(9)
    assert p.evaluate_theta(2) == (x(0) + x(2)).scale(2)


def test_deformed_symmetry():
    # p_1 deformed: x1 + x2 - xt1 / theta is annihilated by the hyperplane condition
    p1 = x(0) + x(1) - x(2).scale(ONE / THETA)
    assert is_deformed_symmetric(p1)
    assert not is_deformed_symmetric(x(0) + x(1) + x(2))


@given(polys, polys, polys)
@settings(max_examples=40, deadline=None)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_leibniz_rule(a, b):
    for i in range(3):
        assert (a * b).partial_derivative(i) == a.partial_derivative(i) * b + a * b.partial_derivative(i)


@given(polys)
@settings(max_examples=40, deadline=None)
def test_json_round_trip(p):
    assert MultiPoly.from_json(SP, p.scale(THETA / (THETA + 2)).to_json()) == p.scale(THETA / (THETA + 2))
