import pytest

from cmsbasis.jacksuite import (
    NotInSpanError,
    expand_in_super_jack,
    jack_in_power_sums,
    jack_polynomial,
    laplace_beltrami_apply,
    leading_exponent,
    super_jack,
    super_schur,
    super_schur_elementary,
)
from cmsbasis.multipoly import MultiPoly, VarSpace
from cmsbasis.partitions import hook_partitions, partitions_of
from cmsbasis.scalarfield import ONE, THETA
from cmsbasis.symbases import elementary, monomial_sym, power_sum


def test_jack_two_boxes():
    p = jack_polynomial((2,), 2)
    assert p.monomial_expansion[(2,)] == ONE
    assert p.monomial_expansion[(1, 1)] == 2 * THETA / (THETA + 1)


def test_jack_column_is_elementary():
    for n in range(1, 4):
        assert jack_polynomial((1,) * n, n).value == elementary(n, VarSpace(n))


def test_jack_is_eigenfunction():
    for lam in partitions_of(3):
        p = jack_polynomial(lam, 3).value
        lb = laplace_beltrami_apply(p)
        top = lb.coefficient(next(iter(monomial_sym(lam, 3).terms)))
        assert lb == p.scale(top)


def test_jack_needs_enough_variables():
    with pytest.raises(ValueError):
        jack_polynomial((1, 1, 1), 2)


def test_power_sum_expansion():
    e = jack_in_power_sums((1,))
    assert e.basis == "powerSum"
    assert e[(1,)] == ONE


def test_super_jack_examples():
    sp = VarSpace(1, 1)
    assert str(super_jack((1,), sp).value) == "x1 - (1/θ)·xt1"
    assert super_jack((2, 2), sp).value.is_zero()
    with pytest.raises(ValueError):
        super_jack((1,), VarSpace(1, 1, 1, 0))


def test_super_jack_without_odd_variables_is_jack():
    for lam in partitions_of(3, max_len=2):
        assert super_jack(lam, VarSpace(2)).value == jack_polynomial(lam, 2).value


def test_leading_exponent():
    assert leading_exponent((3, 2, 1, 1), VarSpace(2, 1)) == (3, 2, 2)
    assert leading_exponent((1, 1), VarSpace(0, 1)) == (2,)


def test_expand_in_super_jack_round_trip():
    sp = VarSpace(2, 1)
    p = super_jack((2, 1), sp).value.scale(THETA) + super_jack((1, 1, 1), sp).value
    c = expand_in_super_jack(p).coeffs
    assert c == {(2, 1): THETA, (1, 1, 1): ONE}


def test_expand_rejects_non_members():
    sp = VarSpace(2, 1)
    with pytest.raises(NotInSpanError, match="not in span"):
        expand_in_super_jack(MultiPoly.var(sp, 0))


def test_super_schur_forms_agree():
    sp = VarSpace(2, 1)
    for k in range(5):
        for lam in partitions_of(k):
            assert super_schur(lam, sp) == super_schur_elementary(lam, sp)


def test_super_schur_first():
    sp = VarSpace(2, 1)
    assert super_schur((1,), sp) == sum((MultiPoly.var(sp, i) for i in range(3)), MultiPoly.zero(sp))


def test_super_schur_vanishes_off_hook():
    sp = VarSpace(1, 1)
    assert super_schur((2, 2), sp).is_zero()
    assert not super_schur((3, 1, 1), sp).is_zero()
