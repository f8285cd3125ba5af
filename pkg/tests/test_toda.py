from fractions import Fraction
from math import factorial

import pytest
from mpmath import mp

from cubicmaps.hierarchy import build_hierarchy
from cubicmaps.series import TruncatedSeries, VAR_W
from cubicmaps.toda import (
    asymptotic_estimate,
    count_vs_estimate,
    decay_constants,
    free_energy_series,
    genus0_closed_form,
    genus1_closed_form,
    genus_table,
    hypergeom_3f2_reduction_check,
    toda_integrate,
)

# genus 0..2 free-energy heads through u^10
F0_HEAD = [6, 216, 13608, 1119744, Fraction(540416448, 5)]
F2_HEAD = [Fraction(3, 2), 189, 26892, 4076568, Fraction(3213210384, 5)]
F4_HEAD = [0, 0, Fraction(8505, 2), 2217618, Fraction(3905028468, 5)]


def test_free_energy_heads():
    F = free_energy_series(2, 5)
    assert [F[0].coefficient(j) for j in range(1, 6)] == F0_HEAD
    assert [F[1].coefficient(j) for j in range(1, 6)] == F2_HEAD
    assert [F[2].coefficient(j) for j in range(1, 6)] == F4_HEAD


def test_leading_term_normalization_guard():
    # window that misses the subtraction terms
    h = build_hierarchy(0, 8)
    tail = TruncatedSeries(VAR_W, 3, h.g_hat[0].coeffs[2:])
    with pytest.raises(ValueError):
        toda_integrate(0, tail)
    # tampered subtraction coefficient
    bad = TruncatedSeries(VAR_W, 1, (1, 35) + h.g_hat[0].coeffs[2:])
    with pytest.raises(ValueError):
        toda_integrate(0, bad)


def test_first_correction_matches_direct_rule():
    # at order one the general rule collapses to c_j / (36 * 3j * (3j+2))
    h = build_hierarchy(1, 10)
    F2 = toda_integrate(1, h.g_hat[1])
    for j in range(1, 11):
        assert F2.coefficient(j) == h.g_hat[1].coefficient(j) / (36 * 3 * j * (3 * j + 2))


def test_closed_forms_head():
    assert [genus0_closed_form(j) for j in (1, 2, 3)] == [12, 5184, 9797760]
    assert [genus1_closed_form(j) for j in (1, 2, 3)] == [3, 4536, 19362240]


def test_closed_forms_match_pipeline():
    F = free_energy_series(1, 8)
    for j in range(1, 9):
        assert genus0_closed_form(j) == F[0].coefficient(j) * factorial(2 * j)
        assert genus1_closed_form(j) == F[1].coefficient(j) * factorial(2 * j)


def test_hypergeometric_reduction():
    for j in (2, 3, 15):
        assert hypergeom_3f2_reduction_check(j)
    with pytest.raises(ValueError):
        hypergeom_3f2_reduction_check(1)


def test_genus_table_invariants():
    t = genus_table(2, 6)
    assert t.count(0, 1) == 12
    assert t.count(2, 1) == 0 and t.count(2, 2) == 0
    assert t.count(2, 3) == 3061800
    for (g, j), f in t.counts.items():
        assert isinstance(f, int) and f >= 0
        assert t.coefficient(g, j) * factorial(2 * j) == f


def test_asymptotic_ratio_at_j200():
    r0 = count_vs_estimate(0, 200, genus0_closed_form(200), 30)
    r1 = count_vs_estimate(1, 200, genus1_closed_form(200), 30)
    assert abs(r0.value - 1) < 0.02
    assert abs(r1.value - 1) < 0.10


def test_asymptotic_estimate_magnitude():
    # j = 1 estimate should at least be on the scale of the true count
    est = asymptotic_estimate(0, 1, 20)
    assert 1 < est.value < 150
    with pytest.raises(ValueError):
        asymptotic_estimate(3, 10)


def test_genus2_asymptotics_extended_horizon():
    # the slowest check in this file: full pipeline to u^800
    F = free_energy_series(2, 400)
    f = F[2].coefficient(400) * factorial(800)
    assert f.denominator == 1 and f > 0
    r = count_vs_estimate(2, 400, f, 30)
    assert abs(r.value - 1) < 0.10


def test_decay_constants_leading():
    d = decay_constants(0)
    assert abs(d.a0.value - mp.mpf(1) / 2) < 1e-8
    assert abs(d.a1.value - 18) < 1e-6
    assert abs(d.C.value + mp.log(2) / 2) < 1e-6
    assert abs(d.D.value) < 1e-12
    assert d.check_residual.value < 1e-8


def test_decay_constants_vanish_at_higher_order():
    d = decay_constants(1)
    for v in (d.a0.value, d.a1.value, d.C.value, d.D.value):
        assert abs(v) < 1e-6
    assert abs(d.D.value) < 1e-12
    assert d.check_residual.value < 1e-8
