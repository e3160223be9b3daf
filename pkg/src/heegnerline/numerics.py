"""Arbitrary-precision arithmetic context and numerical hygiene helpers.

All heavy numerics in this package run through mpmath.  A PrecisionContext
fixes the number of decimal digits a computation is supposed to deliver;
internally everything is evaluated with a few guard digits on top.  Equality
against integers or lattice vectors is always tested at half the working
digits, which absorbs accumulated roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

# Values of type mpmath.mpc carry the working precision of the context they
# were created under; they stay immutable afterwards.
BigComplex = mpmath.mpc

DEFAULT_GUARD_DIGITS = 10
DEFAULT_TERM_CAP = 10 ** 6


class InsufficientPrecisionError(ArithmeticError):
    """A computation cannot reach the requested precision."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits, plus internal guard digits."""

    digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("need at least 15 digits of working precision")
        if self.guard_digits < 1:
            raise ValueError("guard_digits must be positive")

    @property
    def dps(self) -> int:
        """Decimal digits actually carried by mpmath."""
        return self.digits + self.guard_digits

    def workprec(self):
        """Context manager switching mpmath to this precision."""
        return mp.workdps(self.dps)

    @property
    def tol(self) -> mpf:
        """Equality tolerance: 10^(-digits/2)."""
        with mp.workdps(self.dps):
            return mpf(10) ** (-mpf(self.digits) / 2)

    @property
    def eps(self) -> mpf:
        """Target size for series tails: 10^(-(digits+guard))."""
        with mp.workdps(self.dps):
            return mpf(10) ** (-(self.digits + self.guard_digits))

    def bumped(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.digits + extra, self.guard_digits)


def _tail_bound_log10(beta: float, c: float, m: int) -> float:
    """log10 of an upper bound for sum_{n>m} n^beta * exp(-c*n).

    Valid once the summand is decreasing (n > beta/c): bound the tail by the
    first term times a geometric series with ratio exp(-c + beta/(m+1)).
    """
    n0 = m + 1
    log_term = beta * math.log(n0) - c * n0
    ratio_log = -c + beta / n0
    if ratio_log >= -1e-9:
        return math.inf
    log_geo = -math.log(-math.expm1(ratio_log))
    return (log_term + log_geo) / math.log(10)


def truncation_length(form, y_min, ctx: PrecisionContext,
                      hard_cap: int = DEFAULT_TERM_CAP) -> int:
    """Number of q-expansion terms needed at height y_min.

    Finds the least M with sum_{n>M} |a_n| e^{-2 pi n y_min} below the
    context's tail target, using the coefficient majorant
    |a_n| <= d(n) n^{(2k-1)/2} <= n^{(2k-1)/2 + 1}.
    """
    y = float(y_min)
    if y <= 0:
        raise ValueError("y_min must be positive")
    beta = (form.weight - 1) / 2.0 + 1.0
    c = 2.0 * math.pi * y
    target = -(ctx.digits + ctx.guard_digits)

    def good(m: int) -> bool:
        if c * (m + 1) <= beta:
            return False
        return _tail_bound_log10(beta, c, m) < target

    if good(1):
        return 1
    lo, hi = 1, 2
    while not good(hi):
        hi *= 2
        if hi > hard_cap:
            raise InsufficientPrecisionError(
                f"more than {hard_cap} terms required at height {y_min}"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if good(mid):
            hi = mid
        else:
            lo = mid
    return hi


def agreed_decimal_digits(a, b) -> int:
    """Number of leading decimal digits on which a and b agree.

    Agreement is measured relative to the magnitude of b (the reference,
    higher-precision value).  Returns a large number for exact agreement.
    """
    with mp.workdps(mp.dps):
        diff = abs(mpmath.mpc(a) - mpmath.mpc(b))
        scale = abs(mpmath.mpc(b))
        if diff == 0:
            return mp.dps
        if scale == 0:
            return max(0, int(-mpmath.log10(diff)))
        rel = diff / scale
        if rel >= 1:
            return 0
        return int(mpmath.floor(-mpmath.log10(rel)))


def stable_recompute(computation, ctx: PrecisionContext, bump: int = 20):
    """Run computation at two precisions and report how well they agree.

    `computation` must be a pure function of a PrecisionContext.  Returns the
    value from the higher-precision run together with the number of leading
    decimal digits shared by the two runs (0 signals instability).
    """
    lo = computation(ctx)
    hi_ctx = ctx.bumped(bump)
    hi = computation(hi_ctx)
    with hi_ctx.workprec():
        agreed = min(agreed_decimal_digits(lo, hi), ctx.digits)
    return hi, agreed


def nearest_integer(x, tol, max_abs: int = 10 ** 8):
    """Round x to an integer if it is within tol of one, else None."""
    n = int(mpmath.nint(x))
    if abs(n) > max_abs:
        return None
    if abs(x - n) < tol:
        return n
    return None


def rational_approx(x, max_den: int = 10 ** 6, tol=None):
    """Best small-denominator rational near x via continued fractions.

    Returns a (p, q) pair with q <= max_den and |x - p/q| < tol, or None if
    no convergent gets that close.  tol defaults to sqrt(eps at current dps).
    """
    if tol is None:
        tol = mpf(10) ** (-mp.dps // 2)
    p0, q0 = 1, 0
    p1, q1 = int(mpmath.floor(x)), 1
    frac = x - p1
    for _ in range(200):
        if abs(x - mpf(p1) / q1) < tol:
            return p1, q1
        if frac == 0:
            break
        inv = 1 / frac
        a = int(mpmath.floor(inv))
        frac = inv - a
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_den:
            return None
    if q1 <= max_den and abs(x - mpf(p1) / q1) < tol:
        return p1, q1
    return None
