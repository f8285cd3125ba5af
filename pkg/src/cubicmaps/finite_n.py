"""Finite-N orthogonal-polynomial data on the two-ray contours.

Everything past the moments is linear algebra, so the analytic error budget
lives in the quadrature: each ray is integrated panel-wise by Gauss-Legendre
with a truncation radius taken from an explicit tail bound.  Recurrence data
is then extracted twice (a Stieltjes bordering pass, and a direct Hankel
solve per degree) so that conditioning loss shows up as a measured number
instead of silently eating digits.

The string equations and the Toda relation are integration-by-parts and
determinant identities of the moment data, valid wherever the Hankel minors
are nonsingular.  The diagnostics here therefore run for any coupling with a
convergent weight, including couplings past the critical one, where the
1/N^2 comparison needs the analytically continued (complex) branch of the
leading coefficient function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, workdps
from mpmath.calculus.quadrature import GaussLegendre

from .precision import BigFloat, rational_to_mp

# Decay sectors for the ray angles, in units of pi.  The weight exp(-N V)
# dies along a ray iff cos(2*theta) > 0 and cos(3*theta) <= 0, which is
# exactly what these intervals guarantee for every u >= 0.
_SECTOR_LEFT = (Fraction(5, 6), Fraction(7, 6))
_SECTOR_UPPER = (Fraction(1, 6), Fraction(1, 4))

_QUAD_GUARD = 15  # extra working digits behind any quadrature target


@dataclass(frozen=True)
class ContourConfig:
    """Two-ray integration contour and quadrature budget.

    The contour runs in from infinity along the ray at angle_left * pi and
    back out along +/- angle_right * pi; alpha weights the upper-exit copy
    against the lower-exit mirror.  r_max = None lets each run choose its own
    truncation radius from the tail bound; an explicit value is honored but
    rejected when it cannot reach the configured precision.
    """

    alpha: complex = 1.0
    angle_left: Fraction = Fraction(1)
    angle_right: Fraction = Fraction(1, 5)
    r_max: float | None = None
    nodes_per_panel: int = 192
    precision: int = 80

    def __post_init__(self) -> None:
        if not _SECTOR_LEFT[0] < self.angle_left < _SECTOR_LEFT[1]:
            raise ValueError("left ray leaves its decay sector")
        if not _SECTOR_UPPER[0] < self.angle_right < _SECTOR_UPPER[1]:
            raise ValueError("exit ray leaves its decay sector")
        if self.nodes_per_panel < 6:
            raise ValueError("nodes_per_panel is too small for panel quadrature")
        if self.precision < 15:
            raise ValueError("precision below a useful floor")
        if self.r_max is not None and self.r_max <= 0:
            raise ValueError("r_max must be positive")


def _as_mp(x):
    if isinstance(x, BigFloat):
        return mp.mpmathify(x.value)
    if isinstance(x, Fraction):
        return rational_to_mp(x)
    return mp.mpmathify(x)


_GL = GaussLegendre(mp)
_NODE_CACHE: dict = {}


def _gl_nodes(requested: int, prec_bits: int):
    # mpmath's degree-d rule carries 3 * 2^(d-1) abscissas
    degree = 1
    while 3 * 2 ** (degree - 1) < requested:
        degree += 1
    key = (degree, prec_bits)
    nodes = _NODE_CACHE.get(key)
    if nodes is None:
        nodes = _GL.calc_nodes(degree, prec_bits)
        _NODE_CACHE[key] = nodes
    return nodes


def _decay_rate(angle: Fraction, u: float, N: int, r: float) -> float:
    # natural-log decay exponent of |exp(-N V)| at radius r along the ray
    theta = math.pi * float(angle)
    c2 = math.cos(2 * theta)
    c3 = math.cos(3 * theta)
    return N * (c2 * r * r / 2 - u * c3 * r ** 3)


def _ray_radius(cfg: ContourConfig, angle: Fraction, u: float, N: int, j_max: int) -> float:
    target = (cfg.precision + 12) * math.log(10) + 5

    def short(r: float) -> float:
        return target + (j_max + 1) * max(math.log(r), 0.0) - _decay_rate(angle, u, N, r)

    if cfg.r_max is not None:
        if short(cfg.r_max) > 0:
            raise ValueError(
                f"r_max = {cfg.r_max} cannot push the tail below the precision target"
            )
        return cfg.r_max
    r = 2.0
    while short(r) > 0:
        r *= 1.25
        if r > 1e6:
            raise ValueError("tail bound does not close; weight does not decay on this ray")
    return r


def _panel_count(cfg: ContourConfig, u: float, N: int, j_max: int, r_max: float, m: int) -> int:
    # Bernstein-ellipse estimate: an m-node panel of length L on which the
    # integrand's log-derivative is at most S errs like (e S L / 4m)^(2m),
    # so size L to push that under the quadrature target.
    slope = N * (r_max + 3 * u * r_max * r_max) + (j_max + 1) * math.sqrt(N)
    digits = cfg.precision + _QUAD_GUARD + 5
    bound = math.e * slope * r_max / (4 * m) * 10 ** (digits / (2 * m))
    panels = max(8, math.ceil(r_max * math.sqrt(N)), math.ceil(bound))
    if panels > 200_000:
        raise ValueError("precision target unreachable with the configured panel budget")
    return panels


def _ray_moments(u_m, N: int, angle: Fraction, cfg: ContourConfig, max_order: int,
                 r_max: float, panels: int):
    """Outward moments along one ray: e^(i theta) * int_0^rmax (r e^(i theta))^j w dr."""
    nodes = _gl_nodes(cfg.nodes_per_panel, mp.prec + 30)
    phase = mp.expjpi(mp.mpf(angle.numerator) / angle.denominator)
    acc = [mp.mpc(0)] * (max_order + 1)
    width = mp.mpf(r_max) / panels
    for p in range(panels):
        mid = width * p + width / 2
        hl = width / 2
        for x, wt in nodes:
            r = mid + hl * x
            z = r * phase
            z2 = z * z
            base = wt * hl * phase * mp.exp(-N * (z2 / 2 - u_m * z2 * z))
            zp = base
            for j in range(max_order + 1):
                acc[j] += zp
                zp *= z
    return acc


def compute_moments(cfg: ContourConfig, u, N: int, max_order: int) -> list[BigFloat]:
    """Contour moments c_j = int_Gamma z^j exp(-N V(z)) dz for j = 0..max_order."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    wdps = cfg.precision + _QUAD_GUARD
    with workdps(wdps):
        u_m = _as_mp(u)
        if mp.im(u_m) != 0 or u_m < 0:
            raise ValueError("the coupling must be real and nonnegative")
        u_f = float(u_m)
        alpha = mp.mpc(cfg.alpha)
        m = len(_gl_nodes(cfg.nodes_per_panel, mp.prec + 30))

        def outward(angle: Fraction):
            r_max = _ray_radius(cfg, angle, u_f, N, max_order)
            panels = _panel_count(cfg, u_f, N, max_order, r_max, m)
            return _ray_moments(u_m, N, angle, cfg, max_order, r_max, panels)

        # the inbound left ray is shared by both contours, so its weight is 1
        left = outward(cfg.angle_left)
        total = [-v for v in left]
        if alpha != 0:
            upper = outward(cfg.angle_right)
            for j in range(max_order + 1):
                total[j] += alpha * upper[j]
        if alpha != 1:
            lower = outward(-cfg.angle_right)
            for j in range(max_order + 1):
                total[j] += (1 - alpha) * lower[j]
        return [BigFloat(v, cfg.precision) for v in total]


def inner_product(moments, p_coeffs, q_coeffs) -> BigFloat:
    """<p, q> = sum_{i,j} p_i q_j c_{i+j} against precomputed moments (no conjugation)."""
    dps = min(m.dps for m in moments)
    with workdps(dps + _QUAD_GUARD):
        c = [_as_mp(m) for m in moments]
        if len(p_coeffs) + len(q_coeffs) - 1 > len(c):
            raise ValueError("moment table too short for this product")
        acc = mp.mpc(0)
        for i, pi in enumerate(p_coeffs):
            pi = _as_mp(pi)
            for j, qj in enumerate(q_coeffs):
                acc += pi * _as_mp(qj) * c[i + j]
        return BigFloat(acc, dps)


@dataclass(frozen=True)
class RecurrenceData:
    """Monic recurrence data extracted from a moment table.

    h[n] is the squared norm, gamma2[n] = h[n]/h[n-1] (gamma2[0] fixed at 0),
    beta[n] the diagonal coefficient; coefficients[n] are the monic polynomial
    coefficients from the bordering pass.  conditioning_loss[n] is the decimal
    cost of the n-th Hankel block, cross_check_digits the worst agreement
    between the bordering pass and the per-degree Hankel solves.
    """

    h: tuple
    gamma2: tuple
    beta: tuple
    coefficients: tuple
    dps: int
    conditioning_loss: tuple
    cross_check_digits: float

    def __iter__(self):
        return iter((self.h, self.gamma2, self.beta))


def _moment_against(coeffs, k: int, c) -> "mp.mpc":
    return mp.fsum(a * c[i + k] for i, a in enumerate(coeffs))


def recurrence_from_moments(moments, n_max: int) -> RecurrenceData:
    """h, gamma^2, beta for n <= n_max, with a Hankel-solve cross-check per degree."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if len(moments) < 2 * n_max + 2:
        raise ValueError(f"need moments through order {2 * n_max + 1}")
    dps = min(m.dps for m in moments)
    wdps = dps + _QUAD_GUARD
    with workdps(wdps):
        c = [_as_mp(m) for m in moments]
        scale = abs(c[0])
        if scale == 0:
            raise ArithmeticError("vanishing zeroth moment; no orthogonal family exists")
        floor = mp.mpf(10) ** (-(wdps - 10)) * scale

        h, beta, gamma2, coeffs = [], [], [mp.mpc(0)], []
        p_prev, p_cur = None, [mp.mpc(1)]
        for n in range(n_max + 1):
            hn = _moment_against(p_cur, n, c)
            if abs(hn) < floor:
                raise ArithmeticError(
                    f"Hankel data is numerically singular at n = {n}; "
                    f"lower n_max or raise the moment precision"
                )
            h.append(hn)
            if n >= 1:
                gamma2.append(h[n] / h[n - 1])
            bn = _moment_against(p_cur, n + 1, c) / hn
            if n >= 1:
                bn += p_cur[n - 1]
            beta.append(bn)
            coeffs.append(tuple(p_cur))
            if n < n_max:
                p_next = [mp.mpc(0)] + p_cur
                for i, a in enumerate(p_cur):
                    p_next[i] -= bn * a
                if p_prev is not None:
                    for i, a in enumerate(p_prev):
                        p_next[i] -= gamma2[n] * a
                p_prev, p_cur = p_cur, p_next

        # independent route: solve each Hankel system outright and compare
        losses = [0.0]
        solved = {0: []}
        worst = mp.inf
        for n in range(1, n_max + 1):
            M = mp.matrix(n, n)
            rhs = mp.matrix(n, 1)
            for k in range(n):
                for j in range(n):
                    M[k, j] = c[j + k]
                rhs[k] = -c[n + k]
            loss = float(mp.log10(mp.mnorm(M, 1) * mp.mnorm(mp.inverse(M), 1)))
            losses.append(loss)
            if loss > dps - 12:
                raise ArithmeticError(
                    f"Hankel conditioning exceeds the precision budget at n = {n} "
                    f"(about {loss:.0f} of {dps} digits)"
                )
            a = list(mp.lu_solve(M, rhs))
            solved[n] = a
            ref = coeffs[n]
            top = max(max(abs(v) for v in ref), mp.mpf(1))
            dev = max(abs(a[i] - ref[i]) for i in range(n)) / top if n else mp.mpf(0)
            if dev > 0:
                worst = min(worst, -mp.log10(dev))
            h_again = _moment_against(a + [mp.mpc(1)], n, c)
            worst = min(worst, _digits_between(h_again, h[n]))
        for n in range(n_max):
            lower = solved[n][n - 1] if n >= 1 else mp.mpc(0)
            worst = min(worst, _digits_between(lower - solved[n + 1][n], beta[n]))

        return RecurrenceData(
            h=tuple(h),
            gamma2=tuple(gamma2),
            beta=tuple(beta),
            coefficients=tuple(coeffs),
            dps=dps,
            conditioning_loss=tuple(losses),
            cross_check_digits=float(worst),
        )


def _digits_between(a, b) -> float:
    scale = max(abs(a), abs(b), mp.mpf(1) / 10 ** 6)
    dev = abs(a - b) / scale
    if dev == 0:
        return mp.inf
    return -mp.log10(dev)


def string_residuals(data: RecurrenceData, u, N: int):
    """Residuals of both string identities, keyed by degree n.

    First identity: 3u (gamma2[n+1] + beta[n]^2 + gamma2[n]) - beta[n], for
    n < n_max.  Second: gamma2[n] (1 - 3u (beta[n] + beta[n-1])) - n/N, for
    1 <= n <= n_max.  Both vanish identically for exact moments.
    """
    n_max = len(data.h) - 1
    with workdps(data.dps + _QUAD_GUARD):
        u_m = _as_mp(u)
        r1 = {}
        for n in range(n_max):
            lhs = 3 * u_m * (data.gamma2[n + 1] + data.beta[n] ** 2 + data.gamma2[n])
            r1[n] = BigFloat(abs(lhs - data.beta[n]), data.dps)
        r2 = {}
        for n in range(1, n_max + 1):
            lhs = data.gamma2[n] * (1 - 3 * u_m * (data.beta[n] + data.beta[n - 1]))
            r2[n] = BigFloat(abs(lhs - mp.mpf(n) / N), data.dps)
        return r1, r2


def tilde_moments(moments, u, N: int) -> list[BigFloat]:
    """Moments in the shifted, rescaled variable where the potential is -z^3/3 + t z.

    Exact linear transform of the input table: each new moment is a binomial
    combination of the old ones times the shared normalization.
    """
    dps = min(m.dps for m in moments)
    with workdps(dps + _QUAD_GUARD):
        u_m = _as_mp(u)
        if u_m <= 0:
            raise ValueError("the shift 1/(6u) needs u > 0")
        c = [_as_mp(m) for m in moments]
        d = 1 / (6 * u_m)
        cube = mp.cbrt(3 * u_m)
        norm = mp.exp(mp.mpf(N) / (108 * u_m ** 2))
        out = []
        for k in range(len(c)):
            acc = mp.mpc(0)
            term = mp.mpf(1)  # (-d)^(k-m) built from the m = k end downward
            for m_idx in range(k, -1, -1):
                acc += mp.binomial(k, m_idx) * term * c[m_idx]
                term *= -d
            out.append(BigFloat(cube ** (k + 1) * norm * acc, dps))
        return out


def _g0_branch(w, near):
    """Root of 72 x^3 - x^2 + w^2 nearest to `near`: the continued leading slice."""
    roots = mp.polyroots([mp.mpf(72), mp.mpf(-1), mp.mpf(0), w * w],
                         extraprec=80, maxsteps=200)
    return min(roots, key=lambda r: abs(r - near))


def _slice_values(g0, w):
    # closed forms on any branch; det is the Cramer denominator 1 - 108 g0
    det = 1 - 108 * g0
    g2 = 162 * g0 * (5 - 324 * g0) / det ** 4
    b0 = (g0 - w) / (6 * g0)
    b2 = 54 * w / (g0 * det ** 4)
    return g2, b0, b2


def expansion_prediction(u, N: int, gamma2_near):
    """(predicted gamma^2_N, predicted beta_N, branch tag) from the closed forms.

    gamma^2 uses the slice at s = 1, beta the half-shifted slice s = 1 + 1/(2N).
    gamma2_near (measured data) selects the branch of the leading cubic; past
    the critical coupling that branch is complex and the choice matters.
    """
    u_m = _as_mp(u)
    if u_m == 0:
        return mp.mpf(1), mp.mpf(0), "gaussian"
    w1 = u_m ** 2
    g0 = _g0_branch(w1, _as_mp(gamma2_near) * w1)
    g2, _, _ = _slice_values(g0, w1)
    pred_gamma = g0 / w1 + (u_m ** 2 * g2) / N ** 2
    s = 1 + mp.mpf(1) / (2 * N)
    ws = s * u_m ** 2
    g0s = _g0_branch(ws, g0)
    _, b0s, b2s = _slice_values(g0s, ws)
    pred_beta = b0s / u_m + (u_m ** 3 * b2s) / N ** 2
    if abs(mp.im(g0)) < mp.mpf(10) ** (-mp.dps // 2):
        branch = "real"
    elif mp.im(g0) > 0:
        branch = "upper"
    else:
        branch = "lower"
    return pred_gamma, pred_beta, branch


@dataclass(frozen=True)
class AsymptoticEntry:
    N: int
    gamma2: BigFloat
    beta: BigFloat
    gamma2_predicted: BigFloat
    beta_predicted: BigFloat
    epsilon_gamma: BigFloat
    epsilon_beta: BigFloat


@dataclass(frozen=True)
class AsymptoticReport:
    u: BigFloat
    precision: int
    branch: str
    entries: tuple
    gamma_ratios: tuple
    beta_ratios: tuple


def check_asymptotic_expansion(u, N_list, precision: int = 80, alpha=1.0) -> AsymptoticReport:
    """Distance of gamma^2_N and beta_N from the two-term 1/N^2 prediction.

    epsilon(N) should shrink like N^-4, so doubling N divides it by about 16;
    the consecutive ratios are reported alongside the per-N entries.  Report
    only: scaling conclusions are left to the caller.
    """
    cfg = ContourConfig(alpha=alpha, precision=precision)
    entries = []
    branch = "unset"
    with workdps(precision + _QUAD_GUARD):
        u_m = _as_mp(u)
        for N in sorted(N_list):
            moments = compute_moments(cfg, u_m, N, 2 * N + 1)
            rec = recurrence_from_moments(moments, N)
            g_meas = rec.gamma2[N]
            b_meas = rec.beta[N]
            pred_g, pred_b, branch = expansion_prediction(u_m, N, g_meas)
            entries.append(AsymptoticEntry(
                N=N,
                gamma2=BigFloat(g_meas, precision),
                beta=BigFloat(b_meas, precision),
                gamma2_predicted=BigFloat(pred_g, precision),
                beta_predicted=BigFloat(pred_b, precision),
                epsilon_gamma=BigFloat(abs(g_meas - pred_g), precision),
                epsilon_beta=BigFloat(abs(b_meas - pred_b), precision),
            ))
        g_ratios, b_ratios = [], []
        for prev, cur in zip(entries, entries[1:]):
            for eps_prev, eps_cur, sink in (
                (prev.epsilon_gamma, cur.epsilon_gamma, g_ratios),
                (prev.epsilon_beta, cur.epsilon_beta, b_ratios),
            ):
                ep = _as_mp(eps_prev)
                ratio = _as_mp(eps_cur) / ep if ep > 0 else mp.inf
                sink.append(BigFloat(ratio, precision))
        return AsymptoticReport(
            u=BigFloat(u_m, precision),
            precision=precision,
            branch=branch,
            entries=tuple(entries),
            gamma_ratios=tuple(g_ratios),
            beta_ratios=tuple(b_ratios),
        )


def _coupling_of_time(t):
    return 1 / (3 * (4 * t) ** mp.mpf("0.75"))


def toda_residual(u, N: int, h_step, precision: int = 80, alpha=1.0) -> BigFloat:
    """|second time-difference of the free energy - gamma-tilde^2_N|.

    The free energy in the shifted variable splits into the smooth map part
    2/3 t^(3/2) - ln(4t)/4 plus (1/N^2) sum ln h_n; constants drop in the
    second difference, and each h_n enters through the ratio
    h_n(t+h) h_n(t-h) / h_n(t)^2, which sits near 1 so the principal log is
    branch-safe even for complex h_n.
    """
    wdps = max(precision, 8 * (N + 1)) + 30
    with workdps(wdps):
        u_m = _as_mp(u)
        if u_m <= 0:
            raise ValueError("the time map needs u > 0")
        h = _as_mp(h_step)
        if h <= 0:
            raise ValueError("h_step must be positive")
        t0 = 1 / (4 * (3 * u_m) ** (mp.mpf(4) / 3))
        cfg = ContourConfig(alpha=alpha, precision=wdps - _QUAD_GUARD)
        recs = []
        for t in (t0 - h, t0, t0 + h):
            u_t = _coupling_of_time(t)
            moments = compute_moments(cfg, u_t, N, 2 * N + 1)
            recs.append(recurrence_from_moments(moments, N))
        lo, mid, hi = recs
        worst_loss = max(max(r.conditioning_loss) for r in recs)
        headroom = (wdps - _QUAD_GUARD - worst_loss) - 2 * float(mp.log10(1 / h)) - 8
        if headroom < 6:
            raise ArithmeticError(
                "second difference would be quadrature noise; raise precision or h_step"
            )

        def smooth(t):
            return 2 * t ** mp.mpf("1.5") / 3 - mp.log(4 * t) / 4

        d2 = smooth(t0 - h) - 2 * smooth(t0) + smooth(t0 + h)
        for n in range(N):
            d2 += mp.log(lo.h[n] * hi.h[n] / mid.h[n] ** 2) / N ** 2
        gamma_tilde2 = mid.gamma2[N] / (2 * mp.sqrt(t0))
        return BigFloat(abs(d2 / h ** 2 - gamma_tilde2), precision)


@dataclass(frozen=True)
class FiniteNReport:
    """Everything the finite-N validation measures at one (u, N)."""

    N: int
    u: BigFloat
    alpha: complex
    precision: int
    n_max: int
    moments: tuple
    h: tuple
    gamma2: tuple
    beta: tuple
    string_r1: dict
    string_r2: dict
    max_string_residual: BigFloat
    conditioning_loss: tuple
    cross_check_digits: float
    gaps: tuple
    asymptotic: AsymptoticEntry
    branch: str
    toda: BigFloat | None


def build_report(u, N: int, precision: int = 120, alpha=1.0, n_max: int | None = None,
                 include_toda: bool = False, h_step=Fraction(1, 1000)) -> FiniteNReport:
    """One-stop validation: moments, recurrence data, residuals, expansion check.

    Working precision follows max(80, 8 * n_max, precision); the reported
    values claim only `precision` digits.  A singular or budget-breaking
    Hankel block raises with the failing degree rather than reporting a
    shortened table.
    """
    if n_max is None:
        n_max = 3 * N // 2 + 1
    if n_max < N + 1:
        raise ValueError("n_max must reach N + 1 so gamma^2_{N+1} exists")
    wdps = max(80, 8 * n_max, precision)
    cfg = ContourConfig(alpha=alpha, precision=wdps)
    with workdps(wdps + _QUAD_GUARD):
        u_m = _as_mp(u)
        moments = compute_moments(cfg, u_m, N, 2 * n_max + 1)
        rec = recurrence_from_moments(moments, n_max)
        r1, r2 = string_residuals(rec, u_m, N)
        lo_n, hi_n = N // 2, min(3 * N // 2, n_max)
        window = [_as_mp(r1[n]) for n in r1 if lo_n <= n <= hi_n]
        window += [_as_mp(r2[n]) for n in r2 if lo_n <= n <= hi_n]
        worst = max(window)
        pred_g, pred_b, branch = expansion_prediction(u_m, N, rec.gamma2[N])
        entry = AsymptoticEntry(
            N=N,
            gamma2=BigFloat(rec.gamma2[N], precision),
            beta=BigFloat(rec.beta[N], precision),
            gamma2_predicted=BigFloat(pred_g, precision),
            beta_predicted=BigFloat(pred_b, precision),
            epsilon_gamma=BigFloat(abs(rec.gamma2[N] - pred_g), precision),
            epsilon_beta=BigFloat(abs(rec.beta[N] - pred_b), precision),
        )
        toda = None
        if include_toda:
            toda = toda_residual(u_m, N, h_step, precision=precision, alpha=alpha)
        return FiniteNReport(
            N=N,
            u=BigFloat(u_m, precision),
            alpha=complex(alpha),
            precision=precision,
            n_max=n_max,
            moments=tuple(BigFloat(_as_mp(m), precision) for m in moments),
            h=tuple(BigFloat(v, precision) for v in rec.h),
            gamma2=tuple(BigFloat(v, precision) for v in rec.gamma2),
            beta=tuple(BigFloat(v, precision) for v in rec.beta),
            string_r1={n: BigFloat(_as_mp(v), precision) for n, v in r1.items()},
            string_r2={n: BigFloat(_as_mp(v), precision) for n, v in r2.items()},
            max_string_residual=BigFloat(worst, precision),
            conditioning_loss=rec.conditioning_loss,
            cross_check_digits=rec.cross_check_digits,
            gaps=(),
            asymptotic=entry,
            branch=branch,
            toda=toda,
        )
