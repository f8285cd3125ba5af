"""Small helpers around mpmath so every numeric result states its precision."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, workdps


@dataclass(frozen=True)
class BigFloat:
    """A computed value together with the decimal precision it was computed at."""

    value: object  # mpf or mpc
    dps: int

    def __str__(self) -> str:
        with workdps(self.dps):
            return mp.nstr(self.value, self.dps)


def rational_to_mp(q: Fraction):
    """Exact-to-working-precision conversion (one rounding, at current dps)."""
    return mp.mpf(q.numerator) / q.denominator


def agreement_digits(a, b) -> float:
    """Common decimal digits of two scalars: -log10 of the relative difference."""
    a, b = mp.mpmathify(a), mp.mpmathify(b)
    scale = max(abs(a), abs(b))
    if scale == 0:
        return mp.inf
    diff = abs(a - b)
    if diff == 0:
        return mp.inf
    return float(-mp.log10(diff / scale))


def close_to(a, b, digits: int) -> bool:
    return agreement_digits(a, b) >= digits
