from fractions import Fraction

import pytest

from cubicmaps.equilibrium import endpoint_series
from cubicmaps.hierarchy import (
    StringHierarchy,
    build_hierarchy,
    compute_g0_series,
    g0_coefficient,
    g2_closed_form,
    g2_coefficient,
    hat_equation_residuals,
    solve_order_k,
    to_u_variable,
)
from cubicmaps.series import assert_same_series, monomial, VAR_U2, VAR_W


# leading coefficients 1, 36, 3240, 373248, 48498912 pin the closed form;
# the Newton cross-check runs inside compute_g0_series on every call
G0_HEAD = [1, 36, 3240, 373248, 48498912]


def test_g0_closed_form_head():
    assert [g0_coefficient(j) for j in range(1, 6)] == G0_HEAD


def test_g0_series_dual_route():
    s = compute_g0_series(33)  # odd horizon exercises the half-integer gamma path
    assert s.offset == 1
    assert [s.coefficient(j) for j in range(1, 6)] == G0_HEAD
    with pytest.raises(ValueError):
        compute_g0_series(0)


def test_g2_coefficient_head():
    assert g2_coefficient(1) == 810
    assert g2_coefficient(2) == 326592


def test_g2_closed_form_matches_residue_sum():
    g2, b2 = g2_closed_form(8)
    for j in range(1, 9):
        assert g2.coefficient(j) == g2_coefficient(j)
    assert b2.coefficient(0) == 54
    assert b2.offset == 0


def test_hierarchy_first_order_matches_closed_form():
    h = build_hierarchy(1, 12)
    g2, b2 = g2_closed_form(12)
    assert_same_series(h.g_hat[1], g2)
    assert_same_series(h.b_hat[1], b2)


def test_second_order_starts_at_w1():
    h = build_hierarchy(2, 10)
    assert h.g_hat[2].valuation() == 1


def test_hat_equations_hold_through_order_three():
    h = build_hierarchy(3, 12)
    for k, eq1, eq2 in hat_equation_residuals(h):
        assert eq1.is_zero(), f"b-equation residual at order {k}: {eq1}"
        assert eq2.is_zero(), f"g-equation residual at order {k}: {eq2}"


def test_determinant_is_invertible_unit():
    h = build_hierarchy(0, 15)
    assert h.det.coefficient(0) == 1
    assert h.det.coefficient(1) == -108
    product = (1 / h.det) * h.det
    assert_same_series(product, monomial(VAR_W, 1, 0, product.known_max))


def test_leading_orders_match_equilibrium_endpoints():
    # b0 in the u-variable is the endpoint midpoint series, g0 is (half-width)^2 / 4
    X, Y = endpoint_series(9)
    h = build_hierarchy(0, 11)
    assert_same_series(to_u_variable(h, 0, "b"), X)
    assert_same_series(to_u_variable(h, 0, "g"), Y * Y * Fraction(1, 4))


def test_u_variable_indexing_and_slope():
    h = build_hierarchy(1, 6)
    g2u = to_u_variable(h, 1, "g")
    assert g2u.var == VAR_U2
    assert g2u.coefficient(2) == 810  # w^1 coefficient lands at u^4
    scaled = to_u_variable(h, 0, "g", s=Fraction(1, 3))
    assert scaled.coefficient(0) == Fraction(1, 3)
    assert scaled.coefficient(1) == 4  # 36 / 3^2


def test_solve_order_k_rejects_bad_prefixes():
    h = build_hierarchy(1, 6)
    with pytest.raises(ValueError):
        solve_order_k([], [], h.det)
    with pytest.raises(ValueError):
        solve_order_k([h.g_hat[0]], [], h.det)
