from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gtmod.core.arith import (
    Jet,
    as_rational,
    format_rational,
    jet_arith,
    jet_coeff,
    jet_is_regular,
    pole_floor,
    truncation,
    current_trunc_order,
)
from gtmod.core.errors import (
    InputError,
    InsufficientTruncationError,
    JetZeroDivisionError,
    PoleOrderError,
)

EPS = Jet.linear(0, 1, 2)
ONE = Jet.constant(1, 2)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def regular_jets(draw, nonzero_const=False):
    c0 = draw(rationals)
    if nonzero_const and c0 == 0:
        c0 = Fraction(1)
    return Jet(0, (c0, draw(rationals), draw(rationals)), 2)


def test_mul_exponents_cancel():
    inv = ONE / EPS
    assert jet_coeff(inv, -1) == 1
    assert jet_arith("mul", EPS, inv).terms() == {0: Fraction(1)}


def test_div_factor_cancellation():
    a = Jet(1, (Fraction(1), Fraction(1)), 2)  # eps + eps^2
    q = jet_arith("div", a, EPS)
    assert q.terms() == {0: 1, 1: 1}


def test_geometric_series():
    g = ONE / (ONE - EPS)
    assert [jet_coeff(g, k) for k in range(3)] == [1, 1, 1]
    back = g * (ONE - EPS)
    assert back.terms() == {0: Fraction(1)}


def test_coeff_below_window_is_zero_and_above_is_error():
    j = Jet.linear(1, 2, 2)
    assert jet_coeff(j, 1) == 2
    assert jet_coeff(j, -3) == 0
    with pytest.raises(InsufficientTruncationError):
        jet_coeff(j, 3)
    assert jet_coeff(ONE / EPS, -1) == 1


def test_regularity():
    assert not jet_is_regular(ONE / EPS)
    assert jet_is_regular((EPS * EPS) / EPS)
    assert jet_is_regular(Jet.zero())


def test_divided_difference_is_regular():
    # f = 1/(x - y + 1) along x - y = eps; tau.f = 1/(1 - eps)
    f = ONE / (EPS + 1)
    q = (f - f.flipped()) / EPS
    assert jet_is_regular(q)
    assert jet_coeff(q, 0) == -2


def test_division_by_zero_jet():
    with pytest.raises(JetZeroDivisionError):
        ONE / Jet.zero()
    with pytest.raises(ZeroDivisionError):
        ONE / 0


def test_pole_floor():
    deep = EPS ** 3
    with pytest.raises(PoleOrderError):
        ONE / (deep * deep)
    with pole_floor(-6):
        assert jet_coeff(ONE / (deep * deep), -6) == 1


def test_truncation_context():
    assert current_trunc_order() == 2
    with truncation(4):
        assert current_trunc_order() == 4
    with pytest.raises(InputError):
        with truncation(0):
            pass


def test_canonical_form_strips_leading_zeros():
    j = Jet(-1, (0, 0, 3), 2)
    assert j.min_exp == 1
    assert j == Jet(1, (3,), 2)
    assert Jet.zero(2).min_exp == 3


def test_rational_parsing():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(" -2 ") == -2
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(5) == "5"
    for bad in ("0.5", "1e3", "", True, 0.5, "1/0"):
        with pytest.raises(InputError):
            as_rational(bad)


def agree(a: Jet, b: Jet) -> bool:
    """Equal on every coefficient both jets know."""
    top = min(a.trunc_order, b.trunc_order)
    return all(a._raw(e) == b._raw(e) for e in range(min(a.min_exp, b.min_exp, 0), top + 1))


@given(regular_jets(), regular_jets(), regular_jets())
def test_ring_axioms(a, b, c):
    assert agree((a + b) + c, a + (b + c))
    assert agree(a * (b + c), a * b + a * c)


@given(regular_jets(), regular_jets(nonzero_const=True))
def test_division_undoes_multiplication(a, b):
    assert agree((a * b) / b, a)


@given(regular_jets(), regular_jets())
def test_leibniz_at_order_one(a, b):
    lhs = jet_coeff(a * b, 1)
    assert lhs == jet_coeff(a, 0) * jet_coeff(b, 1) + jet_coeff(a, 1) * jet_coeff(b, 0)


@given(rationals.filter(lambda q: q != 0))
def test_rational_inverse_exact(q):
    assert q * (1 / q) == 1


@given(regular_jets())
def test_flip_is_an_involution(a):
    assert a.flipped().flipped() == a
