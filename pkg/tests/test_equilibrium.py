from __future__ import annotations

from fractions import Fraction

import pytest
from mpmath import mp, workdps

from cubicmaps.equilibrium import (
    EquilibriumData,
    critical_coupling,
    density_at,
    density_normalization,
    endpoint_series,
    phi_check,
    solve_endpoints,
)
from cubicmaps.precision import agreement_digits


def test_zero_coupling_is_semicircle():
    eq = solve_endpoints(0, precision=30)
    assert (eq.x, eq.y, eq.a, eq.b) == (0, 2, -2, 2)
    with workdps(40):
        val = density_at(eq, 0)
        assert agreement_digits(val.real, 1 / mp.pi) > 28
        assert abs(val.imag) < mp.mpf(10) ** -28


def test_series_match_known_terms():
    X, Y = endpoint_series(4)
    # x(u) = 6u + 324u^3 + 31104u^5 + ..., y(u) = 2 + 36u^2 + 2916u^4 + ...
    assert X.coefficient(0) == 6
    assert X.coefficient(1) == 324
    assert X.coefficient(2) == 31104
    assert Y.coefficient(0) == 2
    assert Y.coefficient(1) == 36
    assert Y.coefficient(2) == 2916


def test_series_satisfy_defining_relations():
    X, Y = endpoint_series(8)
    q2 = X * X
    cubic = (q2 * X).shift(2) * 18 - q2.shift(1) * 9 + X - 6
    assert cubic.is_zero()
    hw = Y * Y * (1 - X.shift(1) * 6) - 4
    assert hw.is_zero()


def test_numeric_root_matches_series():
    u = mp.mpf("0.05")
    eq = solve_endpoints(u, precision=40)
    X, _ = endpoint_series(6)
    with workdps(50):
        partial = u * X.evaluate(u * u)
        # remainder bounded by the first omitted term (positive coefficients, u well inside)
        omitted = 2 * abs(X.coefficient(6)) * u ** 13
        assert abs(eq.x - partial) < omitted
    # exact cubic residual small relative to precision
    with workdps(60):
        r = ((18 * u * u * eq.x - 9 * u) * eq.x + 1) * eq.x - 6 * u
        assert abs(r) < mp.mpf(10) ** -30


def test_branch_continuity_small_steps():
    prev = mp.mpf(0)
    for k in range(1, 8):
        u = critical_coupling(30) * k / 10
        x = solve_endpoints(u, precision=30).x
        assert x > prev  # x increases along the physical branch
        prev = x


def test_critical_endpoints_exact():
    dps = 45
    uc = critical_coupling(dps)
    eq = solve_endpoints(uc, precision=dps)
    assert eq.critical
    with workdps(dps + 5):
        t34 = mp.root(3, 4) ** 3  # 3^(3/4)
        a_exact = t34 - mp.root(3, 4) * 3  # 3^(3/4) - 3^(5/4)
        b_exact = t34 + mp.root(3, 4)
        assert agreement_digits(eq.a, a_exact) > 35
        assert agreement_digits(eq.b, b_exact) > 35
        assert agreement_digits(eq.z0, eq.b) > 30


def test_supercritical_rejected():
    with pytest.raises(ValueError):
        solve_endpoints(mp.mpf("0.08"), precision=30)


def test_one_cut_gap_closes_monotonically():
    uc = critical_coupling(30)
    gaps = []
    for frac in ("0.3", "0.6", "0.9", "0.99"):
        eq = solve_endpoints(uc * mp.mpf(frac), precision=30)
        gaps.append(eq.z0 - eq.b)
        assert eq.z0 > eq.b
    assert gaps == sorted(gaps, reverse=True)


def test_discriminant_positive_on_grid():
    uc = critical_coupling(30)
    with workdps(40):
        for k in range(1, 20):
            u = (uc - mp.mpf(10) ** -3) * k / 19
            disc = 9 * u * u * (1 - 34992 * u**4)
            if u > 0:
                assert disc > 0
            eq = solve_endpoints(u, precision=30)
            assert abs(1 - 6 * u * eq.x) > mp.mpf(10) ** -6


def test_density_normalization_and_h_zero():
    for ustr in ("0.02", "0.0657"):
        eq = solve_endpoints(mp.mpf(ustr), precision=40)
        norm = density_normalization(eq)
        assert abs(norm.value - 1) < mp.mpf(10) ** -20
        assert abs(density_at(eq, eq.z0)) < mp.mpf(10) ** -30


def test_phi_positivity_and_growth():
    eq = solve_endpoints(mp.mpf("0.05"), precision=40)
    rep = phi_check(eq, samples=12, zmax=100.0)
    assert rep.all_positive, rep.violations
    assert rep.min_left[1] > 0 and rep.min_gap[1] > 0 and rep.min_ray[1] > 0
    # the integrand's cubic growth term is -u/2 z^3; the fit should land near it
    assert rep.vs_half_u < 0.25
    # specific sampled points from the contract
    mid = (eq.b + eq.z0) / 2
    assert any(abs(z - mid) < (eq.z0 - eq.b) for z, _ in [rep.min_gap])


def test_phi_rejects_zero_coupling():
    eq = solve_endpoints(0, precision=30)
    with pytest.raises(ValueError):
        phi_check(eq)
