import pytest
from hypothesis import given, strategies as st

from cmsbasis.opspec import bessel, hermite, laguerre, trig
from cmsbasis.partitions import (
    HookShape,
    IntVector,
    Partition,
    b_lambda,
    cone_membership,
    conjugate,
    dominance_leq,
    enumerate_cone_window,
    hook_partitions,
    in_hook,
    parse_partition,
    partitions_of,
    phi_map,
    prec_leq,
    shift_vector,
    suffix_sums,
)
from cmsbasis.scalarfield import ONE, THETA

partitions = st.integers(0, 8).flatmap(lambda k: st.sampled_from(partitions_of(k)))
vectors = st.lists(st.integers(-3, 3), min_size=1, max_size=4).map(tuple)


def test_partition_basics():
    lam = Partition((3, 1, 0, 0))
    assert lam == (3, 1)
    assert lam.weight == 4
    assert lam.part(1) == 3 and lam.part(5) == 0
    assert str(lam) == "3,1"
    assert parse_partition("2,2,1") == (2, 2, 1)
    assert parse_partition("1,2") == (2, 1)
    with pytest.raises(ValueError):
        parse_partition("2,-1")
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_partitions_of_counts():
    assert [len(partitions_of(k)) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partitions_of(4)[0] == (4,)
    assert len(partitions_of(5, max_len=2)) == 3


def test_conjugate_and_dominance():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert dominance_leq((2, 2), (3, 1))
    assert not dominance_leq((3, 1, 1, 1), (2, 2, 2))
    with pytest.raises(ValueError):
        dominance_leq((1,), (2,))


@given(partitions)
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@given(partitions, partitions)
def test_dominance_reverses_under_conjugation(lam, mu):
    if sum(lam) == sum(mu):
        assert dominance_leq(mu, lam) == dominance_leq(conjugate(lam), conjugate(mu))


def test_suffix_order():
    assert suffix_sums((1, -1, 2)) == (2, 1, 2)
    assert prec_leq((0, 0), (1, 0))
    assert not prec_leq((0, 1), (1, 0))
    with pytest.raises(ValueError):
        prec_leq((0,), (0, 0))


@given(vectors, vectors, vectors)
def test_prec_is_a_partial_order(a, b, c):
    n = min(len(a), len(b), len(c))
    a, b, c = a[:n], b[:n], c[:n]
    assert prec_leq(a, a)
    if prec_leq(a, b) and prec_leq(b, a):
        assert a == b
    if prec_leq(a, b) and prec_leq(b, c):
        assert prec_leq(a, c)


def test_hooks():
    assert in_hook((5, 3, 1, 1), HookShape(2, 1))
    assert not in_hook((2, 2, 2), (2, 1))
    assert hook_partitions(3, (2, 1)) == ((3,), (2, 1), (1, 1, 1))
    assert len(hook_partitions(4, (1, 1))) == 4
    assert len(hook_partitions(4, (2, 1), (1, 0))) == 1


def test_phi_map():
    assert phi_map((3, 1, 1), (2, 1)) == (3, 1, 1)
    assert phi_map((1, 1, 1), (0, 1)) == (3,)
    assert phi_map((4, 2, 2, 1), (1, 2)) == (4, 3, 2)
    with pytest.raises(ValueError):
        phi_map((2, 2), (1, 1))


def test_int_vector_text():
    v = IntVector((1, 0, 2), 2)
    assert str(v) == "(1,0,2|2)"
    w = IntVector.parse(str(v))
    assert w.entries == (1, 0, 2) and w.m == 2


def test_b_lambda():
    assert b_lambda(()) == ONE
    assert b_lambda((1,)) == THETA
    assert b_lambda((2,)) == THETA * (THETA + 1) / 2
    # at theta = 1 every b_lambda is 1
    for lam in partitions_of(5):
        assert b_lambda(lam, ONE) == ONE


def test_shift_vector():
    s = shift_vector((2, 1), (2, 1))
    assert s == (2 * THETA - 1, THETA - 1, ONE / THETA)


def test_cone_membership():
    assert cone_membership((-1, 1, 0), trig())
    assert not cone_membership((1, -1, 0), trig())
    # hermite allows |a| = 2 drops, laguerre |a| = 1 drops
    assert cone_membership((0, 2), hermite())
    assert not cone_membership((0, 1), hermite())
    assert cone_membership((0, 1), laguerre())
    # the b0 term lowers the degree by one
    assert cone_membership((1,), bessel())
    assert not cone_membership((-1,), bessel())


def test_cone_window_contains_zero():
    for spec in (trig(), hermite(), laguerre()):
        w = enumerate_cone_window((2, 1), (2, 1), spec)
        assert (0, 0, 0) in w
        assert w == sorted(w)
