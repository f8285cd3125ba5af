"""Genus expansion of the free energy from the recurrence-coefficient hierarchy.

The time-like deformation variable t and the coupling are tied by
72 u^2 = t^(-3/2).  In that variable the free energy satisfies a Toda
equation, and integrating its genus-k term twice (with integration constants
fixed by decay at t -> infinity) turns the w-series g_hat[2k] into the
genus-k free-energy series F^(2k)(u).  Each w-term c_j contributes

    2 c_j / (72 (3j+6k-4)(3j+6k-6))  at  u^(2(j+2k-2)),

except that for k = 0 the j = 1, 2 terms are the subtracted non-decaying
pieces (the t^(3/2) and log parts) and must be excluded.  The resulting
coefficients, times (2j)!, are nonnegative integers: they count connected
3-valent labeled graphs of genus k on 2j vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from types import MappingProxyType

from mpmath import mp

from .hierarchy import build_hierarchy
from .numbers import gamma_ratio, pochhammer
from .precision import BigFloat
from .series import VAR_U2, VAR_W, TruncatedSeries, from_coefficients

# k = 0 subtraction-term coefficients: w and w^2 of the leading series
_SUBTRACTED = {1: Fraction(1), 2: Fraction(36)}


def toda_integrate(k: int, ghat: TruncatedSeries) -> TruncatedSeries:
    """Double-integrate the order-k hierarchy member into F^(2k)(u).

    Input is a w-series; output exponents count powers of u^2.  For k = 0
    the input window must contain the two subtraction terms with their exact
    coefficients 1 and 36, or the decay normalization would be wrong.
    """
    if k < 0:
        raise ValueError("negative expansion order")
    if ghat.var != VAR_W:
        raise ValueError("hierarchy members are w-series")
    if k == 0:
        if ghat.offset > 1 or ghat.known_max < 2:
            raise ValueError("k = 0 input window must cover the subtraction terms w^1, w^2")
        for j, expect in _SUBTRACTED.items():
            if ghat.coefficient(j) != expect:
                raise ValueError(
                    f"k = 0 subtraction term w^{j} is {ghat.coefficient(j)}, expected {expect}"
                )
    pairs: dict[int, Fraction] = {}
    for j in range(ghat.offset, ghat.known_max + 1):
        if k == 0 and j <= 2:
            continue
        c = ghat.coefficient(j)
        d1, d2 = 3 * j + 6 * k - 4, 3 * j + 6 * k - 6
        if d1 == 0 or d2 == 0:
            raise ArithmeticError(f"double integration hits a resonance at w^{j}, order {k}")
        if c:
            pairs[j + 2 * k - 2] = c * Fraction(2, 72 * d1 * d2)
    return from_coefficients(VAR_U2, pairs, ghat.known_max + 2 * k - 2)


def free_energy_series(g_max: int, horizon: int) -> tuple:
    """F^(0)..F^(2 g_max) through u^(2 horizon), one hierarchy build."""
    h = build_hierarchy(g_max, horizon + 2)
    return tuple(toda_integrate(k, h.g_hat[k]).truncate_to(horizon) for k in range(g_max + 1))


@dataclass(frozen=True)
class GenusCoeffTable:
    g_max: int
    j_max: int
    counts: MappingProxyType  # (g, j) -> int, the connected graph count f^(2g)_{2j}
    series_coefficients: MappingProxyType  # (g, j) -> Fraction, F-series coefficient

    def count(self, g: int, j: int) -> int:
        return self.counts[(g, j)]

    def coefficient(self, g: int, j: int) -> Fraction:
        return self.series_coefficients[(g, j)]


def genus_table(g_max: int, j_max: int) -> GenusCoeffTable:
    """Tabulate f^(2g)_{2j} for g <= g_max, 1 <= j <= j_max, checking integrality.

    A non-integer or negative entry means the pipeline is broken, so those
    are hard failures rather than recorded values.
    """
    series = free_energy_series(g_max, j_max)
    counts: dict[tuple[int, int], int] = {}
    coeffs: dict[tuple[int, int], Fraction] = {}
    for g in range(g_max + 1):
        for j in range(1, j_max + 1):
            c = series[g].coefficient(j)
            f = c * factorial(2 * j)
            if f.denominator != 1 or f < 0:
                raise ArithmeticError(f"graph count f(g={g}, j={j}) = {f} is not a nonnegative integer")
            if 2 * j < 2 * g and f != 0:
                raise ArithmeticError(f"count f(g={g}, j={j}) nonzero below the vertex threshold")
            counts[(g, j)] = int(f)
            coeffs[(g, j)] = c
    if counts.get((0, 1)) not in (None, 12):
        raise ArithmeticError("f(0, 1) must be 12")
    return GenusCoeffTable(
        g_max=g_max,
        j_max=j_max,
        counts=MappingProxyType(counts),
        series_coefficients=MappingProxyType(coeffs),
    )


def genus0_closed_form(j: int) -> Fraction:
    """Planar count: 72^j Gamma(3j/2) (2j)! / (2 Gamma(j+3) Gamma(j/2+1))."""
    if j < 1:
        raise ValueError("counts start at j = 1")
    ratio = gamma_ratio(Fraction(3 * j, 2), Fraction(j, 2) + 1)
    return 72**j * factorial(2 * j) * ratio / (2 * factorial(j + 2))


def _hyp_2f1_terminating(a, b, c, z: Fraction, terms: int) -> Fraction:
    acc = Fraction(0)
    for m in range(terms):
        acc += pochhammer(a, m) * pochhammer(b, m) / (pochhammer(c, m) * factorial(m)) * z**m
    return acc


def _genus1_hyp_sum(j: int) -> Fraction:
    """3F2(-j+1, 2, 6; 5, -3j/2+1; 3/2), terminating after j terms."""
    acc = Fraction(0)
    z = Fraction(3, 2)
    for m in range(j):
        num = pochhammer(-j + 1, m) * pochhammer(2, m) * pochhammer(6, m)
        den = pochhammer(5, m) * pochhammer(Fraction(-3 * j, 2) + 1, m) * factorial(m)
        acc += num / den * z**m
    return acc


def genus1_closed_form(j: int) -> Fraction:
    """Torus count via the terminating hypergeometric sum."""
    if j < 1:
        raise ValueError("counts start at j = 1")
    ratio = gamma_ratio(Fraction(3 * j, 2), Fraction(j, 2) + 1)
    prefactor = 5 * 72**j * factorial(2 * j) * ratio / (48 * (3 * j + 2) * factorial(j))
    return prefactor * _genus1_hyp_sum(j)


def hypergeom_3f2_reduction_check(j: int) -> bool:
    """Exact check of the contiguous-parameter reduction to two 2F1 sums.

    The 3F2 has numerator parameter 6 = denominator parameter 5 + 1, so
    it collapses to 2F1(-j+1, 2; -3j/2+1) plus a rational multiple of
    2F1(-j+2, 3; -3j/2+2), all terminating.
    """
    if j < 2:
        raise ValueError("reduction needs j >= 2")
    z = Fraction(3, 2)
    lhs = _genus1_hyp_sum(j)
    first = _hyp_2f1_terminating(-j + 1, 2, Fraction(-3 * j, 2) + 1, z, j)
    second = _hyp_2f1_terminating(-j + 2, 3, Fraction(-3 * j, 2) + 2, z, max(j - 1, 1))
    rhs = first + Fraction(6 * (j - 1), 5 * (3 * j - 2)) * second
    return lhs == rhs


# growth-rate amplitudes K_2g as q * (6 pi)^p, tabulated through genus 2;
# the critical-point module re-derives these from the singular expansion
_AMPLITUDES = {
    0: (Fraction(1), Fraction(-1, 2)),
    1: (Fraction(1, 48), Fraction(0)),
    2: (Fraction(7, 1440), Fraction(-1, 2)),
}


def log_count_estimate(g: int, j: int, precision: int = 30):
    """ln of K_2g (2j)! j^((5g-7)/2) u_c^(-2j), as an mpf at working precision."""
    if g not in _AMPLITUDES:
        raise ValueError("amplitude constant not tabulated beyond genus 2")
    q, p = _AMPLITUDES[g]
    with mp.workdps(precision + 20):
        ln_uc = mp.log(3) / 4 - mp.log(18)
        ln_k = mp.log(q.numerator) - mp.log(q.denominator) + p * mp.log(6 * mp.pi)
        return ln_k + mp.loggamma(2 * j + 1) + mp.mpf(5 * g - 7) / 2 * mp.log(j) - 2 * j * ln_uc


def asymptotic_estimate(g: int, j: int, precision: int = 30) -> BigFloat:
    """Large-j estimate K_2g (2j)! j^((5g-7)/2) u_c^(-2j), computed in log space."""
    with mp.workdps(precision + 20):
        return BigFloat(mp.exp(log_count_estimate(g, j, precision)), precision)


def count_vs_estimate(g: int, j: int, f_exact: Fraction, precision: int = 30) -> BigFloat:
    """Ratio of an exact count to its asymptotic estimate (log-space throughout)."""
    with mp.workdps(precision + 20):
        ln_f = mp.log(mp.mpf(f_exact.numerator)) - mp.log(mp.mpf(f_exact.denominator))
        return BigFloat(mp.exp(ln_f - log_count_estimate(g, j, precision)), precision)


@dataclass(frozen=True)
class DecayFit:
    """Constants of the t -> infinity template (4a0/3) t^(3/2) - (a1/72) ln t + C + D t."""

    order: int
    a0: BigFloat
    a1: BigFloat
    C: BigFloat
    D: BigFloat
    check_residual: BigFloat  # relative mismatch at a fifth sample point


def decay_constants(k: int, precision: int = 50, horizon: int = 14, t_base: float = 1.0e6) -> DecayFit:
    """Fit the large-t behavior of F~^(2k)(t) and read off the decay constants.

    For k = 0 the function is 2 t^(3/2)/3 - ln(4t)/4 + F^(0)(u(t)); for k >= 1
    it is F^(2k)(u(t)) alone.  Expected values: (1/2, 18, -ln2/2, 0) at k = 0,
    all zero at higher order.  Sample points are spread geometrically so the
    four basis functions stay well separated.
    """
    F = free_energy_series(k, horizon)[k]
    with mp.workdps(precision + 30):
        def f_tilde(t):
            u2 = t ** mp.mpf("-1.5") / 72
            val = F.evaluate(u2)
            if k == 0:
                val += 2 * t ** mp.mpf("1.5") / 3 - mp.log(4 * t) / 4
            return val

        ts = [mp.mpf(t_base) * 3**i for i in range(4)]
        rows = [[t ** mp.mpf("1.5"), t, mp.log(t), mp.mpf(1)] for t in ts]
        rhs = [f_tilde(t) for t in ts]
        sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
        t5 = mp.mpf(t_base) * 3**4
        model = sol[0] * t5 ** mp.mpf("1.5") + sol[1] * t5 + sol[2] * mp.log(t5) + sol[3]
        rel = abs(f_tilde(t5) - model) / (1 + abs(f_tilde(t5)))
        return DecayFit(
            order=k,
            a0=BigFloat(mp.mpf(3) / 4 * sol[0], precision),
            a1=BigFloat(-72 * sol[2], precision),
            C=BigFloat(sol[3], precision),
            D=BigFloat(sol[1], precision),
            check_residual=BigFloat(rel, precision),
        )
