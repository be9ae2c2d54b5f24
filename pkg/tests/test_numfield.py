from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynpoly.exactalg import UniPoly
from dynpoly.numfield import ModulusMismatch, NFElem, NotInvertible, nf_invert, root_of_unity_order

C6 = UniPoly([1, -1, 1])  # t^2 - t + 1


def test_invert_generator():
    t = NFElem.gen(C6)
    inv = nf_invert(t)
    assert inv * t == 1
    # t^6 = 1, so t^-1 = t^5 = 1 - t
    assert inv == 1 - t


def test_invert_rational_scalar():
    two = NFElem(UniPoly([2]), UniPoly([1, 0, 1]))
    assert nf_invert(two).rational_value() == Fraction(1, 2)


def test_not_invertible():
    t = NFElem.gen(UniPoly([0, 0, 1]))
    with pytest.raises(NotInvertible):
        nf_invert(t)


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        NFElem.gen(C6) + NFElem.gen(UniPoly([1, 0, 1]))


@pytest.mark.parametrize("value, bound, want", [(-1, 10, 2), (1, 10, 1), (2, 100, None)])
def test_root_of_unity_rational(value, bound, want):
    assert root_of_unity_order(value, bound) == want


def test_root_of_unity_sixth():
    t = NFElem.gen(C6)
    assert root_of_unity_order(t, 20) == 6
    assert t**6 == 1 and t**3 == -1


def test_root_of_unity_cube():
    t = NFElem.gen(UniPoly([1, 1, 1]))
    assert root_of_unity_order(t, 20) == 3


coeffs = st.lists(st.fractions(max_denominator=7), min_size=1, max_size=3)


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_field_axioms(a, b, c):
    m = UniPoly([-2, 0, 0, 1])  # t^3 - 2, irreducible
    A, B, C = (NFElem(UniPoly(v), m) for v in (a, b, c))
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    if not UniPoly(a).is_zero():
        assert nf_invert(A) * A == 1
        assert (B / A) * A == B


@settings(max_examples=100, deadline=None)
@given(coeffs)
def test_invert_on_reducible_modulus(a):
    # (t - 1)(t + 2) is reducible; inversion either works exactly or raises
    m = UniPoly([-2, 1, 1])
    A = NFElem(UniPoly(a), m)
    try:
        inv = nf_invert(A)
    except NotInvertible:
        return
    assert inv * A == 1
