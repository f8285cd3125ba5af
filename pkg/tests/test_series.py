from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicmaps.series import (
    VAR_U2,
    VAR_W,
    BeyondHorizonError,
    TruncatedSeries,
    assert_same_series,
    from_coefficients,
    monomial,
)

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=8)


def w_series(coeffs, offset=0):
    return TruncatedSeries(VAR_W, offset, tuple(coeffs))


series_strategy = st.builds(
    w_series,
    st.lists(rationals, min_size=1, max_size=7),
    st.integers(min_value=-3, max_value=4),
)


def test_mul_drops_unknown_tail():
    # (1 + q + q^2/2) * (1 - q) tracked through q^2
    a = w_series([1, 1, Fraction(1, 2)])
    b = w_series([1, -1, 0])
    prod = a * b
    assert prod.coefficient(0) == 1
    assert prod.coefficient(1) == 0
    assert prod.coefficient(2) == Fraction(-1, 2)
    assert prod.known_max == 2
    with pytest.raises(BeyondHorizonError):
        prod.coefficient(3)


def test_known_window_mul_rule():
    a = w_series([1, 2, 3], offset=1)  # known through w^3
    b = w_series([5, 7], offset=0)  # known through w^1
    prod = a * b
    # unknown b-coefficients first pollute exponent (1) + (2) = 3
    assert prod.offset == 1
    assert prod.known_max == 2
    assert prod.coefficient(1) == 5
    assert prod.coefficient(2) == 17


def test_add_aligns_offsets():
    a = w_series([1, 2], offset=2)
    b = w_series([3, 0, 5], offset=0)
    s = a + b
    assert s.coefficient(0) == 3
    assert s.coefficient(1) == 0
    assert s.coefficient(2) == 6
    assert s.known_max == 2  # min of the two known windows


def test_add_window_is_min_of_known():
    a = w_series([1, 2, 3, 4])  # known to 3
    b = w_series([1, 1])  # known to 1
    assert (a + b).known_max == 1


def test_divide_shifts_offset():
    num = monomial(VAR_W, 54, 1, 12)
    den = w_series([1, 36, 3240], offset=1)  # valuation 1
    q = num / den
    assert q.offset == 0
    assert q.coefficient(0) == 54
    assert q.coefficient(1) == 54 * -36


def test_divide_then_multiply_roundtrip():
    a = w_series([2, 5, Fraction(7, 3), 1], offset=1)
    b = w_series([1, -4, 6, -2], offset=2)
    q = b / a
    assert_same_series(q * a, b)


def test_differentiate_slides_window():
    s = w_series([1, 36, 3240], offset=1)  # known to w^3
    d = s.differentiate()
    assert d.coefficient(0) == 1
    assert d.coefficient(1) == 72
    assert d.coefficient(2) == 3 * 3240
    assert d.known_max == 2


def test_integrate_inverts_differentiate():
    s = w_series([4, 9, 16], offset=1)
    assert_same_series(s.differentiate().integrate(), s)


def test_integrate_rejects_pole():
    s = w_series([1], offset=-1)
    with pytest.raises(ZeroDivisionError):
        s.integrate()


def test_sqrt_unit_roundtrip():
    s = w_series([Fraction(9, 4), 3, 7, -2])
    r = s.sqrt_unit()
    assert r.coefficient(0) == Fraction(3, 2)
    assert_same_series(r * r, s)


def test_sqrt_rejects_nonsquare_lead():
    with pytest.raises(ValueError):
        w_series([2, 1]).sqrt_unit()


def test_var_mixing_rejected():
    a = w_series([1, 2])
    b = TruncatedSeries(VAR_U2, 0, (Fraction(1),))
    with pytest.raises(ValueError):
        _ = a + b


def test_retag_and_shift():
    g = w_series([1, 36], offset=1)
    f = g.retag(VAR_U2).shift(-1)
    assert f.var == VAR_U2
    assert f.coefficient(0) == 1
    assert f.coefficient(1) == 36


def test_from_coefficients_and_accessors():
    s = from_coefficients(VAR_W, {1: 6, 3: 324}, known_max=4)
    assert s.coefficient(2) == 0
    assert s.coefficient(4) == 0
    assert s.valuation() == 1
    assert s.coefficients() == {1: Fraction(6), 3: Fraction(324)}


def test_scalar_mixing():
    s = w_series([1, 5])
    t = 1 - s * 6
    assert t.coefficient(0) == -5
    assert t.coefficient(1) == -30
    u = 2 / w_series([1, 3])
    assert u.coefficient(0) == 2
    assert u.coefficient(1) == -6


@settings(max_examples=120, deadline=None)
@given(series_strategy, series_strategy, series_strategy)
def test_ring_laws(a, b, c):
    assert_same_series(a * b, b * a)
    assert_same_series((a + b) + c, a + (b + c))
    assert_same_series((a + b) * c, a * c + b * c)


@settings(max_examples=80, deadline=None)
@given(series_strategy, series_strategy)
def test_division_roundtrip_property(a, b):
    if b.is_zero():
        return
    q = a / b
    assert_same_series(q * b, a)


@settings(max_examples=80, deadline=None)
@given(series_strategy)
def test_derivative_of_product_rule(a):
    b = a * a
    assert_same_series(b.differentiate(), a.differentiate() * a * 2)
