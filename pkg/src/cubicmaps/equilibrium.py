"""Equilibrium measure of the cubic model: endpoints, density, contour positivity.

The eigenvalue density in the one-cut regime is

    rho(z) = (1/2*pi*i) * sqrt((z-a)(z-b)) * h(z),    h(z) = 1 - 3*u*x - 3*u*z,

supported on [a, b] with a = x - y, b = x + y.  The center x solves the cubic
18 u^2 x^3 - 9 u x^2 + x - 6 u = 0 on the branch with x -> 0 as u -> 0, the
half-width is y = 2/sqrt(1 - 6 u x), and z0 = 1/(3u) - x is the extra zero of
h.  One-cut regularity (z0 > b) holds up to the critical coupling
u_c = 3^(1/4)/18, where z0 collides with b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, workdps

from .quadrature import integrate, legendre_nodes
from .series import VAR_U2, TruncatedSeries, monomial
from .precision import BigFloat


def critical_coupling(dps: int):
    with workdps(dps):
        return mp.root(3, 4) / 18


@dataclass(frozen=True)
class EquilibriumData:
    u: object
    x: object
    y: object
    a: object
    b: object
    z0: object  # mp.inf at u = 0
    critical: bool
    dps: int


def solve_endpoints(u, precision: int = 40) -> EquilibriumData:
    """Endpoint data on the branch continuous from x(0) = 0.

    Accepts 0 <= u <= u_c; exactly-critical input (to working tolerance) is
    flagged and solved on the double-root branch, u beyond u_c raises.
    """
    dps = precision
    with workdps(dps + 20):
        u = mp.mpf(u)
        if u < 0:
            raise ValueError("coupling must be nonnegative")
        uc = critical_coupling(dps + 20)
        band = mp.mpf(10) ** (-(dps - 8))
        if u > uc * (1 + band):
            raise ValueError(f"u={u} beyond the one-cut critical coupling {uc}")
        critical = abs(u - uc) <= uc * band
        if u == 0:
            return EquilibriumData(
                u=mp.mpf(0), x=mp.mpf(0), y=mp.mpf(2), a=mp.mpf(-2), b=mp.mpf(2),
                z0=mp.inf, critical=False, dps=dps,
            )
        if critical:
            # double root of the cubic = root of its derivative that stays bounded
            x = (18 - mp.sqrt(108)) / (108 * u)
        else:
            roots = mp.polyroots([18 * u * u, -9 * u, 1, -6 * u], maxsteps=200, extraprec=80)
            real = [r.real for r in roots if abs(r.imag) < mp.mpf(10) ** (-(dps + 5))]
            if not real:
                raise ArithmeticError("no real root of the endpoint cubic; bracketing failed")
            x = min(real)
            for _ in range(4):  # Newton polish on the selected branch
                p = ((18 * u * u * x - 9 * u) * x + 1) * x - 6 * u
                dp = (54 * u * u * x - 18 * u) * x + 1
                x -= p / dp
        one_minus = 1 - 6 * u * x
        if one_minus <= 0:
            raise ArithmeticError("1 - 6*u*x not positive; wrong root branch")
        y = 2 / mp.sqrt(one_minus)
        a, b = x - y, x + y
        z0 = 1 / (3 * u) - x
        if z0 - b < -mp.mpf(10) ** (-(dps - 10)) * max(1, abs(b)):
            raise ArithmeticError("double zero z0 fell inside the support")
        return EquilibriumData(u=u, x=x, y=y, a=a, b=b, z0=z0, critical=critical, dps=dps)


def endpoint_series(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Exact expansions of the endpoint center and half-width in the coupling.

    Returns (X, Y) in the u^2 variable, with x(u) = u * X(u^2) (the center is
    an odd function of u) and y(u) = Y(u^2).  X solves
    18 q^2 X^3 - 9 q X^2 + X - 6 = 0 term by term, q = u^2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    X = monomial(VAR_U2, 6, 0, order)
    steps = 0
    while (1 << steps) <= order + 1:
        steps += 1
    for _ in range(steps + 1):
        q2 = X * X
        f = (q2 * X).shift(2) * 18 - q2.shift(1) * 9 + X - 6
        df = q2.shift(2) * 54 - X.shift(1) * 18 + 1
        X = X - f / df
    q2 = X * X
    residual = (q2 * X).shift(2) * 18 - q2.shift(1) * 9 + X - 6
    if not residual.is_zero():
        raise ArithmeticError("endpoint series iteration did not close")
    Y = 2 / (1 - X.shift(1) * 6).sqrt_unit()
    return X.truncate_to(order), Y.truncate_to(order)


def _sqrt_r(z, a, b):
    # principal factors: the global branch with cut on [a,b], ~ +z at +infinity;
    # on the upper side of the cut this is the boundary value from above
    return mp.sqrt(z - a) * mp.sqrt(z - b)


def density_at(eq: EquilibriumData, z):
    """rho(z) with the principal branch; real and nonnegative on (a, b)."""
    with workdps(eq.dps + 10):
        z = mp.mpmathify(z)
        h = 1 - 3 * eq.u * eq.x - 3 * eq.u * z
        return _sqrt_r(z, eq.a, eq.b) * h / (2 * mp.pi * mp.mpc(0, 1))


def density_normalization(eq: EquilibriumData) -> BigFloat:
    """Integral of the density over [a, b], by quadrature at doubled precision.

    The substitution s = a + (b-a) sin^2(theta) absorbs both endpoint
    square-root singularities, leaving a smooth integrand for Gauss-Legendre.
    """
    dps = 2 * eq.dps
    fine = solve_endpoints(eq.u, dps)  # re-solve so endpoint error cannot cap the check
    with workdps(dps + 10):
        a, b, u, x = fine.a, fine.b, fine.u, fine.x
        width = b - a
        c0 = 1 - 3 * u * x

        def f(theta):
            s = a + width * mp.sin(theta) ** 2
            h = c0 - 3 * u * s
            return mp.sin(2 * theta) ** 2 * h

        val = integrate(f, mp.mpf(0), mp.pi / 2, max(64, dps // 2), dps) * width**2 / (4 * mp.pi)
        return BigFloat(value=val, dps=dps)


@dataclass(frozen=True)
class PhiReport:
    """Sampled effective-potential landscape along the two contour tails."""

    all_positive: bool
    min_left: tuple  # (z, Re phi1) with smallest Re phi1 on (-inf, a)
    min_gap: tuple  # worst sample on (b, z0)
    min_ray: tuple  # worst sample on the pi/3 ray from z0
    violations: tuple
    growth_coefficient: object  # fitted z^3 coefficient of Re phi2 on the ray
    vs_half_u: object  # |fit / (-u/2) - 1|: the integrand's own cubic term
    vs_third_u: object  # |fit / (-u/3) - 1|: the growth rate as printed in the source analysis
    samples: int
    zmax: float


def phi_check(eq: EquilibriumData, samples: int = 12, zmax: float = 100.0) -> PhiReport:
    """Verify Re phi > 0 along the contour tails by direct quadrature.

    phi1(z) = (1/2) int_a^z sqrt(R) h, phi2 likewise from b; positivity is
    sampled at log-spaced points on (-inf, a), on (b, z0), and on the ray
    z0 + r e^{i pi/3}, out to |z| <= zmax.  The sampling window is heuristic:
    growth ~ +u|z|^3/2 makes violations far out implausible, but only the
    sampled points are actually checked.

    Also fits the cubic growth coefficient of Re phi2 on the ray (two-radius
    difference at |z| = zmax/2 and zmax/4) and reports it against -u/2 (what
    the integrand's large-z expansion gives) and -u/3 (the rate quoted in the
    source analysis; the two disagree, so both deviations are reported).
    """
    if not (0 < eq.u):
        raise ValueError("phi_check needs u > 0")
    if eq.z0 == mp.inf:
        raise ValueError("no finite z0 at u = 0")
    dps = eq.dps
    n_nodes = 48
    with workdps(dps + 15):
        u, x, a, b, z0 = eq.u, eq.x, eq.a, eq.b, eq.z0
        c0 = 1 - 3 * u * x

        def dphi(s):
            return _sqrt_r(s, a, b) * (c0 - 3 * u * s) / 2

        def logspace(lo, hi, k):
            r = (hi / lo) ** (mp.mpf(1) / (k - 1))
            return [lo * r**i for i in range(k)]

        width = b - a
        violations = []

        # left tail: z = a - d, phi1 accumulated from a outward;
        # first panel uses s = a - d0 * tau^2 to absorb the sqrt singularity
        d_left_max = zmax + a if zmax + a > width else 2 * width
        ds = logspace(width / 100, d_left_max, samples)
        left = []
        d0 = ds[0]
        phi = integrate(lambda t: dphi(a - d0 * t * t) * (-2 * d0 * t), mp.mpf(0), mp.mpf(1), n_nodes, dps)
        left.append((a - d0, mp.re(phi)))
        for d_prev, d_next in zip(ds, ds[1:]):
            phi += integrate(dphi, a - d_prev, a - d_next, n_nodes, dps)
            left.append((a - d_next, mp.re(phi)))

        # gap (b, z0): same construction from b rightward
        gap = []
        d_gap_max = (z0 - b) * mp.mpf("0.999")
        ds = logspace(min(width / 100, d_gap_max / 10), d_gap_max, samples)
        d0 = ds[0]
        phi_b = integrate(lambda t: dphi(b + d0 * t * t) * (2 * d0 * t), mp.mpf(0), mp.mpf(1), n_nodes, dps)
        gap.append((b + d0, mp.re(phi_b)))
        for d_prev, d_next in zip(ds, ds[1:]):
            phi_b += integrate(dphi, b + d_prev, b + d_next, n_nodes, dps)
            gap.append((b + d_next, mp.re(phi_b)))

        # ray from z0 at angle pi/3 (the asymptotic direction of the outer contour)
        direction = mp.exp(mp.mpc(0, mp.pi / 3))
        if 3 * z0 * z0 / 4 >= mp.mpf(zmax) ** 2:
            raise ValueError(f"zmax={zmax} does not reach past z0={z0}; enlarge the window")
        r_edge = -z0 / 2 + mp.sqrt(mp.mpf(zmax) ** 2 - 3 * z0 * z0 / 4)
        phi_z0 = phi_b + integrate(dphi, b + d_gap_max, z0, n_nodes, dps)
        rs = logspace(width / 100, r_edge, samples)
        ray = []
        phi = phi_z0
        prev = mp.mpf(0)
        for r_next in rs:
            phi += integrate(dphi, z0 + prev * direction, z0 + r_next * direction, n_nodes, dps)
            ray.append((z0 + r_next * direction, mp.re(phi)))
            prev = r_next

        for pts, name in ((left, "left"), (gap, "gap"), (ray, "ray")):
            for z, re_phi in pts:
                if not re_phi > 0:
                    violations.append((name, z, re_phi))

        # growth fit, differencing the two ray samples nearest |z| = zmax/2, zmax/4
        def nearest(target):
            return min(ray, key=lambda zr: abs(abs(zr[0]) - target))

        (z_hi, re_hi), (z_lo, re_lo) = nearest(zmax / 2), nearest(zmax / 4)
        growth = (re_hi - re_lo) / mp.re(z_hi**3 - z_lo**3)
        vs_half = abs(growth / (-u / 2) - 1)
        vs_third = abs(growth / (-u / 3) - 1)

        def worst(pts):
            return min(pts, key=lambda zr: zr[1])

        return PhiReport(
            all_positive=not violations,
            min_left=worst(left),
            min_gap=worst(gap),
            min_ray=worst(ray),
            violations=tuple(violations),
            growth_coefficient=growth,
            vs_half_u=vs_half,
            vs_third_u=vs_third,
            samples=samples,
            zmax=zmax,
        )
