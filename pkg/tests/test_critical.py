"""Critical-point amplitudes: recursion, local expansion, fits, Painleve I."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, workdps

from cubicmaps.critical import (
    B0_AT_CRITICAL,
    CriticalConstants,
    _amplitude_exact,
    _neville_to_zero,
    compute_K,
    critical_leading,
    delta_expansion,
    painleve_check,
    run_C_recursion,
)
from cubicmaps.hierarchy import build_hierarchy
from cubicmaps.numbers import BETA, SQRT3, W_CRITICAL, Qbeta
from cubicmaps.toda import _AMPLITUDES


@pytest.fixture(scope="module")
def consts() -> CriticalConstants:
    return run_C_recursion(10)


@pytest.fixture(scope="module")
def h60():
    return build_hierarchy(3, 60)


def test_published_amplitudes(consts):
    assert consts.C[0] == -BETA / 18
    assert consts.C[1] == Qbeta.rational(Fraction(1, 5184))
    assert consts.C[2] == Qbeta((0, 0, 0, Fraction(49, 35831808)))
    assert consts.D[0] == -(BETA**3) / 6
    for k in range(consts.G + 1):
        assert consts.D[k] == 6 * SQRT3 * consts.C[k]
    assert consts.w_c == W_CRITICAL
    assert consts.g0_at_wc == Fraction(1, 108)
    assert consts.b0_at_wc == (6 - BETA**2) / 36
    # numeric shadow of D_0 = -2^(1/2) 3^(-1/4)
    with workdps(30):
        target = -mp.sqrt(2) / mp.root(3, 4)
        assert abs(consts.D[0].evaluate(mp.mpf(1)) - target) < mp.mpf(10) ** -28


def test_intermediate_amplitudes(consts):
    # order-1 right-hand side, solved by hand from the singular 2x2 system
    assert consts.A[0] is None and consts.B[0] is None
    assert consts.A[1] == -BETA / 96
    assert consts.B[1] == BETA**3 / 3456
    assert len(consts.A) == consts.G + 1 == len(consts.B)


def test_signs_and_grades(consts):
    assert consts.signs[0] == -1
    assert all(s == 1 for s in consts.signs[1:])
    for k in range(consts.G + 1):
        assert consts.C[k].grades() <= {(1 - k) % 4}


def test_critical_point_identities():
    assert (W_CRITICAL * W_CRITICAL).rational_part() == Fraction(1, 34992)
    assert Fraction(1, 34992) == Fraction(1, 3 * 108**2)
    g0 = Fraction(1, 108)
    assert 72 * g0**3 - g0**2 + Fraction(1, 34992) == 0
    assert B0_AT_CRITICAL * 6 * g0 + 0 == (g0 - W_CRITICAL) * 1  # b0 = (g0 - w_c)/(6 g0)


def test_count_amplitude_reduction(consts):
    # symbolic reduction pinned for low genus; rational whenever g is odd
    assert _amplitude_exact(consts.C[0], 0) == (Fraction(1), -1)
    assert _amplitude_exact(consts.C[1], 1) == (Fraction(1, 48), 0)
    assert _amplitude_exact(consts.C[2], 2) == (Fraction(7, 1440), -1)
    assert _amplitude_exact(consts.C[3], 3) == (Fraction(245, 5308416), 0)
    assert _amplitude_exact(consts.C[4], 4) == (Fraction(37079, 5337446400), -1)
    # oracle: evaluate the defining ratio 6*3^(1/4) C_2g / (Gamma((5g-1)/2) u_c^g)
    with workdps(50):
        u_c = mp.root(3, 4) / 18
        for g in range(7):
            direct = 6 * mp.root(3, 4) * consts.C[g].evaluate(mp.mpf(1))
            direct /= mp.gamma(mp.mpf(5 * g - 1) / 2) * u_c**g
            q, n = _amplitude_exact(consts.C[g], g)
            folded = mp.mpf(q.numerator) / q.denominator
            if n == -1:
                folded /= mp.sqrt(6 * mp.pi)
            assert abs(direct - folded) < abs(direct) * mp.mpf(10) ** -45


def test_count_amplitude_values(consts):
    with workdps(45):
        targets = {
            0: 1 / mp.sqrt(6 * mp.pi),
            1: mp.mpf(1) / 48,
            2: 7 / (1440 * mp.sqrt(6 * mp.pi)),
        }
        for g, target in targets.items():
            got = compute_K(consts, g, precision=40)
            assert got.dps == 40
            assert abs(got.value - target) < abs(target) * mp.mpf(10) ** -39
    # same constants the asymptotic estimator uses
    for g, (q, p) in _AMPLITUDES.items():
        qq, n = _amplitude_exact(consts.C[g], g)
        assert (qq, Fraction(n, 2)) == (q, p)
    with pytest.raises(ValueError):
        compute_K(consts, consts.G + 1)


def test_delta_expansion_dual_route(consts):
    de = delta_expansion(10)
    assert de.g0.coefficient(0) == Qbeta.rational(Fraction(1, 108))
    assert de.g0.coefficient(1) == consts.C[0]
    assert de.b0.coefficient(0) == consts.b0_at_wc
    assert de.b0.coefficient(1) == consts.D[0]
    assert de.g2.offset == -4
    assert de.g2.coefficient(-4) == consts.C[1]
    assert de.det.coefficient(0) == Qbeta.rational(0)
    assert de.det.coefficient(1) == 6 * BETA
    with pytest.raises(ValueError):
        delta_expansion(4)


def test_fit_leading_order(consts, h60):
    fit = critical_leading(h60, 0, 60)
    assert fit.exponent == Fraction(1, 2)
    with workdps(45):
        exact = consts.C[0].evaluate(mp.mpf(1))
        assert abs(fit.amplitude.value - exact) < abs(exact) / 100
        assert abs(fit.radius.value - mp.sqrt(3) / 324) < mp.mpf(10) ** -8
        assert float(fit.radius_error.value) < 1e-6


def test_fit_order_one(consts, h60):
    fit = critical_leading(h60, 1, 60)
    assert fit.exponent == Fraction(-2)
    with workdps(45):
        exact = mp.mpf(1) / 5184
        assert abs(fit.amplitude.value - exact) < exact / 100


def test_fit_determinant(h60):
    fit = critical_leading(h60, 0, 60, determinant=True)
    with workdps(45):
        target = (6 * BETA).evaluate(mp.mpf(1))
        assert abs(fit.amplitude.value - target) < target / 100


def test_fit_matches_recursion_within_reported_error(consts, h60):
    for k in range(4):
        fit = critical_leading(h60, k, 60)
        with workdps(45):
            exact = consts.C[k].evaluate(mp.mpf(1))
            assert abs(fit.amplitude.value - exact) < fit.amplitude_error.value
            assert abs(fit.radius.value - mp.sqrt(3) / 324) < fit.radius_error.value


def test_fit_rejections(h60):
    with pytest.raises(ValueError):
        critical_leading(h60, 1, 60, determinant=True)
    with pytest.raises(ValueError):
        critical_leading(h60, 4, 60)
    with pytest.raises(ValueError):
        critical_leading(h60, 0, 61)
    with pytest.raises(ValueError):
        critical_leading(h60, 0, 30)


def test_painleve_report(consts):
    rep = painleve_check(consts, 9)
    assert rep.q == Qbeta.rational(-648)
    assert rep.orders_verified == 8
    assert rep.mu == BETA**3 / 3456
    assert rep.nu == 3 * BETA**3 / 4
    assert rep.nu_normalization == Qbeta.rational(1)
    assert rep.q_over_inv_8mu == Qbeta((0, 0, 0, Fraction(-3, 2)))
    assert not rep.matches_inv_8mu
    assert rep.matches_inv_8mu_c0
    assert rep.standard_form_q == 36 * BETA
    assert float(rep.standard_form_deviation.value) < 1e-38


def test_painleve_preconditions(consts):
    with pytest.raises(ValueError):
        painleve_check(consts, 0)
    with pytest.raises(ValueError):
        painleve_check(run_C_recursion(3), 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=6))
def test_extrapolation_recovers_polynomials(coeffs):
    # Neville at x = 0 is exact for polynomial data on >= degree+1 nodes
    with workdps(60):
        xs = [1 / mp.sqrt(j) for j in range(20, 32)]
        ys = [sum(c * x**i for i, c in enumerate(coeffs)) for x in xs]
        value, err = _neville_to_zero(xs, ys)
        assert abs(value - coeffs[0]) < mp.mpf(10) ** -40
        assert err < mp.mpf(10) ** -38
