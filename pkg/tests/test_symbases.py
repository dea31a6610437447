import pytest

from cmsbasis.multipoly import MultiPoly, VarSpace
from cmsbasis.partitions import partitions_of
from cmsbasis.scalarfield import ONE, THETA, ZERO
from cmsbasis.symbases import (
    BasisExpansion,
    complete_h,
    deformed_power_sum,
    elementary,
    from_monomial_basis,
    from_power_sums,
    g_theta,
    h_quotient,
    modified_g,
    monomial_sym,
    power_sum,
    power_sum_product,
    to_monomial_basis,
    to_power_sums,
)


def test_small_bases_in_three_variables():
    sp = VarSpace(3)
    assert elementary(0, sp) == MultiPoly.one(sp)
    assert elementary(4, sp).is_zero()
    assert monomial_sym((1, 1, 1), sp) == elementary(3, sp)
    assert complete_h(2, sp) == monomial_sym((2,), sp) + monomial_sym((1, 1), sp)
    assert power_sum(2, sp) == monomial_sym((2,), sp)
    assert power_sum_product((1, 1), sp) == power_sum(1, sp) * power_sum(1, sp)


def test_newton_identity():
    # k e_k = sum (-1)^(i-1) e_{k-i} p_i
    sp = VarSpace(4)
    for k in range(1, 5):
        rhs = MultiPoly.zero(sp)
        for i in range(1, k + 1):
            rhs = rhs + (elementary(k - i, sp) * power_sum(i, sp)).scale((-1) ** (i - 1))
        assert elementary(k, sp).scale(k) == rhs


def test_modified_complete():
    sp = VarSpace(2)
    # exponent -1 gives the complete symmetric functions
    for r in range(4):
        assert modified_g(r, -1, sp) == complete_h(r, sp)
    assert g_theta(1, sp) == power_sum(1, sp).scale(THETA)


def test_deformed_power_sum():
    sp = VarSpace(1, 1)
    x, xt = MultiPoly.var(sp, 0), MultiPoly.var(sp, 1)
    assert deformed_power_sum(1, sp) == x - xt.scale(ONE / THETA)
    assert deformed_power_sum(2, sp) == x ** 2 - (xt ** 2).scale(ONE / THETA)


def test_monomial_round_trip():
    sp = VarSpace(3)
    p = complete_h(3, sp)
    e = to_monomial_basis(p)
    assert e.basis == "monomial"
    assert set(e.coeffs) == set(partitions_of(3))
    assert from_monomial_basis(e, sp) == p
    with pytest.raises(ValueError):
        to_monomial_basis(MultiPoly.var(sp, 0))


def test_power_sum_round_trip():
    sp = VarSpace(4)
    for lam in partitions_of(4):
        p = monomial_sym(lam, sp)
        assert from_power_sums(to_power_sums(p), sp) == p


def test_expansion_json():
    e = BasisExpansion("monomial", {(2,): THETA, (1, 1): ONE}, {"n": 2})
    d = e.to_json()
    assert d["basis"] == "monomial"
    with pytest.raises(ValueError):
        BasisExpansion("nonsense", {}, {})


def test_h_quotient_small():
    for k in range(6):
        r = h_quotient(k)
        assert r["pass"], k
