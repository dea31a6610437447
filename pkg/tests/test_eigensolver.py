import pytest

from cmsbasis.cmsops import apply_D, apply_E, apply_L
from cmsbasis.eigensolver import (
    D2_SPEC,
    DegenerateLadderError,
    action_on_f,
    check_m_independence,
    eigen_transition_matrix,
    eigenbasis,
    eigenvalue_of_partition,
    eigenvalue_of_vector,
    is_admissible,
    ladder_offsets,
    leading_coefficient,
    solve_eigenfunction,
    super_jack_series,
)
from cmsbasis.fbasis import f_value
from cmsbasis.jacksuite import super_jack
from cmsbasis.multipoly import MultiPoly, VarSpace
from cmsbasis.opspec import OperatorSpec, hermite, laguerre, trig
from cmsbasis.partitions import b_lambda, enumerate_cone_window, phi_map
from cmsbasis.scalarfield import ONE, THETA


def test_eigenvalue_forms_agree():
    for spec in (trig(), laguerre()):
        for lam in ((1,), (2, 1), (1, 1, 1)):
            phi = phi_map(lam, (2, 1))
            assert eigenvalue_of_vector(phi, spec, (2, 1), (2, 1)) == eigenvalue_of_partition(lam, spec, (2, 1))


def test_action_of_euler():
    for a in ((2, 0), (1, 1), (0, 2)):
        terms = dict(action_on_f("E1", a, (1, 1), (1, 1)))
        assert {tuple(b): c for b, c in terms.items()} == {a: ONE * 2}


def test_action_matches_direct_application():
    nbar, mbar = (2, 1), (1, 1)
    for which, op in (("E0", lambda p: apply_E(0, p)), ("D1", lambda p: apply_D(1, p))):
        for a in ((1, 1), (2, 0), (0, 2)):
            rhs = MultiPoly.zero(VarSpace(*nbar))
            for b, c in action_on_f(which, a, nbar, mbar):
                rhs = rhs + f_value(b.entries if hasattr(b, "entries") else b, nbar, mbar).scale(c)
            assert op(f_value(a, nbar, mbar)) == rhs


def test_leading_coefficient():
    assert leading_coefficient((1, 1, 1), (2, 1)) == -THETA
    assert leading_coefficient((2, 1), (2, 1)) == ONE


def test_trig_eigenfunction_is_super_jack_multiple():
    ef = solve_eigenfunction((2, 1), trig(), (2, 1), (2, 1))
    sp = super_jack((2, 1), VarSpace(2, 1)).value
    assert ef.value == sp.scale(ef.value.coefficient(next(iter(sp.terms))) / sp.coefficient(next(iter(sp.terms))))
    assert apply_L(trig(), ef.value) == ef.value.scale(ef.eigenvalue)


def test_hermite_ladder_is_smaller_than_cone():
    lam = (1, 1)
    reach = ladder_offsets(lam, hermite(), (2, 1), (2, 1))
    cone = enumerate_cone_window(lam, (2, 1), hermite())
    assert set(reach) <= set(cone) and len(reach) < len(cone)
    assert is_admissible(lam, hermite(), (2, 1), (2, 1))
    assert not is_admissible(lam, hermite(), (2, 1), (2, 1), strict=True)
    ef = solve_eigenfunction(lam, hermite(), (2, 1), (2, 1))
    assert apply_L(hermite(), ef.value) == ef.value.scale(ef.eigenvalue)


def test_degenerate_ladder_raises():
    # alpha_1 alone couples degrees but gives every f_a eigenvalue zero
    spec = OperatorSpec(a1=1)
    with pytest.raises(DegenerateLadderError, match="degenerate eigenvalue ladder"):
        solve_eigenfunction((1,), spec, (1, 1), (1, 1))


def test_hook_precondition():
    with pytest.raises(ValueError):
        solve_eigenfunction((2, 2), trig(), (1, 1), (1, 0))


def test_series_small():
    ef = super_jack_series((2,), (1, 1), (1, 1))
    assert ef.value == super_jack((2,), VarSpace(1, 1)).value.scale(b_lambda((2,)))


def test_m_independence_small():
    assert check_m_independence((1, 1), laguerre(), (1, 1), (1, 1), (2, 0))["pass"]


def test_eigenbasis_and_matrix():
    funcs = eigenbasis(trig(), (1, 1), (1, 1), 2)
    assert [tuple(f.lam) for f in funcs] == [(), (1,), (2,), (1, 1)]
    n = eigen_transition_matrix(funcs, (1, 1))
    for lam, row in n.items():
        assert set(row) == {lam}


def test_json_shape():
    d = solve_eigenfunction((1,), trig(), (1, 1), (1, 1)).to_json()
    assert d["lambda"] == "1" and d["coefficients"][0]["a"] == "(0,0|1)"
