import pytest
from hypothesis import given, settings, strategies as st

from gcontact import I, Polyform, Scalar, Vector, blade, eps
from gcontact.forms import DimensionError
from gcontact.frame import FrameAlgebra
from gcontact.sections import SplitMix64, random_form, random_vector

F6 = FrameAlgebra(6, "invariant")
seeds = st.integers(0, 10_000)


def rand(seed, deg):
    return random_form(SplitMix64(seed), F6, deg)


@settings(max_examples=40)
@given(seeds)
def test_wedge_associative(seed):
    rng = SplitMix64(seed)
    a, b, c = (random_form(rng, F6, k) for k in (1, 2, 1))
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(max_examples=40)
@given(seeds, st.integers(0, 3), st.integers(0, 3))
def test_graded_commutative(seed, p, q):
    rng = SplitMix64(seed)
    a, b = random_form(rng, F6, p), random_form(rng, F6, q)
    sign = -1 if p * q % 2 else 1
    assert a.wedge(b) == b.wedge(a).scale(sign)


@settings(max_examples=40)
@given(seeds, st.integers(1, 3))
def test_contraction_antiderivation(seed, p):
    rng = SplitMix64(seed)
    a, b, v = random_form(rng, F6, p), random_form(rng, F6, 2), random_vector(rng, F6)
    lhs = a.wedge(b).contract(v)
    rhs = a.contract(v).wedge(b) + a.wedge(b.contract(v)).scale(-1 if p % 2 else 1)
    assert lhs == rhs


def test_double_contraction_fills_first_slot_first():
    w = blade(3, (1, 2, 3))
    assert w.contract(Vector.basis(3, 1)).contract(Vector.basis(3, 2)) == eps(3, 3)


def test_exp_of_two_form():
    w = blade(4, (1, 2)) + blade(4, (3, 4))
    assert w.scale(I).exp() == Polyform.scalar(4, 1) + w.scale(I) - blade(4, (1, 2, 3, 4))


def test_exp_rejects_odd_forms():
    with pytest.raises(ValueError):
        eps(3, 1).exp()


def test_blade_order_carries_sign():
    assert blade(3, (2, 1)) == -blade(3, (1, 2))
    assert not blade(3, (1, 1))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        eps(3, 1) + eps(4, 1)


def test_reversal_and_grade_involution():
    a = Polyform.scalar(3, 1) + eps(3, 1) + blade(3, (1, 2)) + blade(3, (1, 2, 3))
    assert a.reversal() == Polyform.scalar(3, 1) + eps(3, 1) - blade(3, (1, 2)) - blade(3, (1, 2, 3))
    assert a.grade_involution() == Polyform.scalar(3, 1) - eps(3, 1) + blade(3, (1, 2)) - blade(3, (1, 2, 3))


def test_encode_round_trip():
    a = rand(3, 2) + rand(4, 3).scale(Scalar(1, 2))
    assert Polyform.decode(6, a.encode()) == a
