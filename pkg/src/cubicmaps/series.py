"""Truncated formal power series with explicit known-coefficient windows.

A series carries a variable tag, an integer ``offset`` (lowest tracked
exponent, may be negative), and a coefficient tuple.  Exponents below the
offset are exactly zero; exponents above ``known_max`` are unknown, not zero.
Every operation propagates the window by the min-horizon rule, so a
coefficient can be read back only if it is fully determined by the inputs.

Coefficients are exact ring elements: ``fractions.Fraction`` or any type with
compatible arithmetic (``cubicmaps.numbers.Qbeta``).  Nothing here rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

VAR_U2 = "u2"  # exponent counts powers of u^2 (even series in the coupling)
VAR_W = "w"  # w = s*u^2
VAR_DELTA = "delta"  # delta = sqrt(w_c - w), for half-integer critical exponents

_VARS = (VAR_U2, VAR_W, VAR_DELTA)


class BeyondHorizonError(IndexError):
    """Requested coefficient lies above the series' known window."""


def _normalize(c: Any) -> Any:
    return Fraction(c) if isinstance(c, int) else c


@dataclass(frozen=True)
class TruncatedSeries:
    var: str
    offset: int
    coeffs: tuple

    def __post_init__(self) -> None:
        if self.var not in _VARS:
            raise ValueError(f"unknown series variable {self.var!r}")
        if not self.coeffs:
            raise ValueError("series needs at least one tracked coefficient")
        coeffs = tuple(_normalize(c) for c in self.coeffs)
        offset = self.offset
        # canonical form: leading coefficient nonzero, or a single zero pinned
        # at known_max (the window below it is zero either way)
        lead = 0
        while lead < len(coeffs) - 1 and not coeffs[lead]:
            lead += 1
        if lead:
            offset += lead
            coeffs = coeffs[lead:]
        if len(coeffs) == 1 and not coeffs[0]:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def known_max(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int:
        """Exponent of the lowest nonzero tracked coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.offset + i
        raise ValueError("series is zero through its horizon")

    def coefficient(self, exponent: int):
        if exponent > self.known_max:
            raise BeyondHorizonError(
                f"exponent {exponent} beyond known window (max {self.known_max})"
            )
        if exponent < self.offset:
            return self.coeffs[0] * 0
        return self.coeffs[exponent - self.offset]

    def coefficients(self) -> dict[int, Any]:
        """Nonzero tracked coefficients keyed by exponent."""
        return {self.offset + i: c for i, c in enumerate(self.coeffs) if c}

    def _check_var(self, other: "TruncatedSeries") -> None:
        if self.var != other.var:
            raise ValueError(f"mixed series variables {self.var!r} and {other.var!r}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self._add_scalar(other)
        self._check_var(other)
        offset = min(self.offset, other.offset)
        known = min(self.known_max, other.known_max)
        out = []
        for e in range(offset, known + 1):
            a = self.coeffs[e - self.offset] if self.offset <= e <= self.known_max else 0
            b = other.coeffs[e - other.offset] if other.offset <= e <= other.known_max else 0
            out.append(a + b)
        return TruncatedSeries(self.var, offset, tuple(out))

    __radd__ = __add__

    def _add_scalar(self, c):
        c = _normalize(c)
        offset = min(self.offset, 0)
        out = list(self.coeffs)
        if self.offset > 0:
            out = [Fraction(0)] * self.offset + out
        elif self.offset < 0 and self.known_max < 0:
            raise BeyondHorizonError("window ends below exponent 0")
        out[-offset] = out[-offset] + c
        return TruncatedSeries(self.var, offset, tuple(out))

    def __neg__(self):
        return TruncatedSeries(self.var, self.offset, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = _normalize(other)
            return TruncatedSeries(self.var, self.offset, tuple(x * c for x in self.coeffs))
        self._check_var(other)
        la, lb = len(self.coeffs), len(other.coeffs)
        n = min(la, lb)
        out = [self.coeffs[0] * other.coeffs[0] * 0] * n
        for i in range(min(la, n)):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(min(lb, n - i)):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return TruncatedSeries(self.var, self.offset + other.offset, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = _normalize(other)
            return self * (Fraction(1) / c if isinstance(c, Fraction) else c.inverse())
        self._check_var(other)
        v = other.valuation()
        den = other.coeffs[v - other.offset :]
        n = min(len(self.coeffs), len(den))
        inv0 = Fraction(1) / den[0] if isinstance(den[0], Fraction) else den[0].inverse()
        out = []
        for i in range(n):
            acc = self.coeffs[i]
            for j in range(1, i + 1):
                acc = acc - den[j] * out[i - j]
            out.append(acc * inv0)
        return TruncatedSeries(self.var, self.offset - v, tuple(out))

    def __rtruediv__(self, other):
        c = _normalize(other)
        one = monomial(self.var, 1, 0, len(self.coeffs) - 1)
        return (one / self) * c

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError("only positive integer powers are tracked exactly")
        acc = self
        for _ in range(n - 1):
            acc = acc * self
        return acc

    # -- calculus ----------------------------------------------------------

    def differentiate(self):
        """d/dvar.  The window slides down one exponent; length is preserved."""
        out = tuple(c * (self.offset + i) for i, c in enumerate(self.coeffs))
        return TruncatedSeries(self.var, self.offset - 1, out)

    def integrate(self):
        """Antiderivative with zero constant term; pole at exponent -1 raises."""
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            if e == -1:
                if c:
                    raise ZeroDivisionError("antiderivative of a 1/var term")
                out.append(Fraction(0))
            else:
                out.append(c / Fraction(e + 1) if isinstance(c, Fraction) else c / (e + 1))
        return TruncatedSeries(self.var, self.offset + 1, tuple(out))

    # -- structure ---------------------------------------------------------

    def shift(self, k: int):
        """Multiply by var**k."""
        return TruncatedSeries(self.var, self.offset + k, self.coeffs)

    def retag(self, var: str):
        """Reinterpret exponents under a new variable tag (w = u^2 style substitutions)."""
        return TruncatedSeries(var, self.offset, self.coeffs)

    def truncate_to(self, known_max: int):
        if known_max > self.known_max:
            raise BeyondHorizonError(
                f"cannot extend window to {known_max} (known to {self.known_max})"
            )
        n = known_max - self.offset + 1
        if n < 1:
            return TruncatedSeries(self.var, known_max, (Fraction(0),))
        return TruncatedSeries(self.var, self.offset, self.coeffs[:n])

    def sqrt_unit(self):
        """Square root of a series whose lowest tracked term is a rational square at even exponent."""
        v = self.valuation()
        if v % 2:
            raise ValueError("odd valuation has no series square root")
        base = self.shift(-v) if v else self
        c0 = base.coeffs[0]
        if not isinstance(c0, Fraction):
            raise TypeError("sqrt_unit needs rational coefficients")
        from math import isqrt

        rn, rd = isqrt(c0.numerator), isqrt(c0.denominator)
        if rn * rn != c0.numerator or rd * rd != c0.denominator:
            raise ValueError(f"leading coefficient {c0} is not a rational square")
        n = len(base.coeffs)
        t = monomial(self.var, Fraction(rn, rd), 0, base.known_max)
        steps = 0
        while (1 << steps) <= n:
            steps += 1
        for _ in range(steps + 1):
            t = (t + base / t) * Fraction(1, 2)
        if (t * t).coeffs != base.coeffs[: len((t * t).coeffs)]:
            raise ArithmeticError("square-root iteration failed to verify")
        return t.shift(v // 2)

    def evaluate(self, x):
        """Numeric partial sum over the tracked window (mpmath or float scalars)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + _to_number(c, x)
        if self.offset:
            acc = acc * x**self.offset
        return acc

    def __repr__(self) -> str:
        shown = []
        for e, c in sorted(self.coefficients().items()):
            shown.append(f"{c}*{self.var}^{e}")
            if len(shown) == 4:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"<{body} + O({self.var}^{self.known_max + 1})>"


def _to_number(c, like):
    if isinstance(c, Fraction):
        return (type(like)(c.numerator) / c.denominator) if not isinstance(like, (int, float)) else c.numerator / c.denominator
    return c.evaluate(like)


def monomial(var: str, coeff, exponent: int, known_max: int) -> TruncatedSeries:
    if known_max < exponent:
        raise ValueError("known_max below the monomial exponent")
    pad = known_max - exponent
    return TruncatedSeries(var, exponent, (coeff,) + (Fraction(0),) * pad)


def zero_series(var: str, known_max: int) -> TruncatedSeries:
    return TruncatedSeries(var, known_max, (Fraction(0),))


def from_coefficients(var: str, pairs: dict[int, Any], known_max: int) -> TruncatedSeries:
    """Series from {exponent: coefficient}; untouched slots up to known_max are zero."""
    if not pairs:
        return zero_series(var, known_max)
    offset = min(pairs)
    if max(pairs) > known_max:
        raise ValueError("coefficient beyond the declared window")
    out = [Fraction(0)] * (known_max - offset + 1)
    for e, c in pairs.items():
        out[e - offset] = _normalize(c)
    return TruncatedSeries(var, offset, tuple(out))


def assert_same_series(a: TruncatedSeries, b: TruncatedSeries, through: int | None = None) -> None:
    """Raise unless a and b agree on the overlap of their windows (or through a given exponent)."""
    if a.var != b.var:
        raise AssertionError(f"variable mismatch {a.var!r} vs {b.var!r}")
    hi = min(a.known_max, b.known_max)
    if through is not None:
        if through > hi:
            raise BeyondHorizonError(f"comparison through {through} exceeds known windows")
        hi = through
    lo = min(a.offset, b.offset)
    for e in range(lo, hi + 1):
        ca, cb = a.coefficient(e), b.coefficient(e)
        if ca != cb:
            raise AssertionError(f"coefficient mismatch at exponent {e}: {ca} != {cb}")
