"""Rational newforms: coefficient storage, evaluation, functional-equation sign.

A newform f in S_2k(N) is carried around as its level, weight and a list of
exact rational Fourier coefficients a_1..a_M (a_1 = 1).  Coefficients only
become floats at evaluation time.  The sign of the functional equation is
never taken on faith: it is recomputed numerically from the Fricke identity

    f(-1/(Nz)) = (-1)^k eps N^k z^{2k} f(z),

which doubles as a strong consistency check on the coefficient data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
from mpmath import mp, mpf

from . import qseries
from .numerics import PrecisionContext, truncation_length


class CoefficientDataError(ValueError):
    """Coefficient file is malformed or fails self-consistency checks."""


@dataclass(frozen=True)
class NewformData:
    level: int
    weight: int
    coeffs: tuple  # a_1, a_2, ... as Fractions
    label: str = ""

    def __post_init__(self):
        if self.weight % 2 or self.weight <= 0:
            raise ValueError("weight must be a positive even integer")
        if not self.coeffs or self.coeffs[0] != 1:
            raise CoefficientDataError("a_1 must be 1 (normalized newform)")

    @property
    def k(self) -> int:
        """Half the weight; the central point of L(f, s)."""
        return self.weight // 2

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)

    def a(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.coeffs):
            raise IndexError(f"coefficient a_{n} not available (have {len(self.coeffs)})")
        return self.coeffs[n - 1]

    def check_multiplicativity(self, bound: int = 200):
        """Spot-check a_{mn} = a_m a_n on coprime pairs with mn <= bound."""
        top = min(self.n_terms, bound)
        for m in range(2, top):
            for n in range(m + 1, top // m + 1):
                if gcd(m, n) != 1 or gcd(m * n, self.level) != 1:
                    continue
                if self.a(m * n) != self.a(m) * self.a(n):
                    raise CoefficientDataError(
                        f"multiplicativity fails: a_{m * n} != a_{m} * a_{n}"
                    )


@dataclass(frozen=True)
class SignEpsilon:
    value: int  # +1 or -1
    residual: float


def load_coefficients(path) -> NewformData:
    """Read a coefficient file.

    Format: first line `level N weight W label STR`, then one `n a_n` pair
    per line with n strictly increasing from 1; a_n is an integer or p/q.
    """
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise CoefficientDataError(f"{path}: empty coefficient file")
    head = lines[0].split()
    if len(head) < 4 or head[0] != "level" or head[2] != "weight":
        raise CoefficientDataError(f"{path}: bad header {lines[0]!r}")
    level = int(head[1])
    weight = int(head[3])
    label = head[5] if len(head) >= 6 and head[4] == "label" else ""
    coeffs = []
    expect = 1
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CoefficientDataError(f"{path}: malformed line {ln!r}")
        n = int(parts[0])
        if n != expect:
            raise CoefficientDataError(f"{path}: expected n={expect}, got {n}")
        coeffs.append(Fraction(parts[1]))
        expect += 1
    form = NewformData(level, weight, tuple(coeffs), label)
    form.check_multiplicativity()
    return form


def save_coefficients(form: NewformData, path):
    with open(path, "w") as fh:
        fh.write(f"level {form.level} weight {form.weight} label {form.label or 'f'}\n")
        for n in range(1, form.n_terms + 1):
            a = form.a(n)
            fh.write(f"{n} {a.numerator}" + (f"/{a.denominator}" if a.denominator != 1 else "") + "\n")


def build_level1_weight18(n_terms: int) -> NewformData:
    """The weight-18 level-1 eigenform (-E6^3 + E4^3 E6) / 1728, exactly.

    Exact rational power-series arithmetic; the resulting coefficients are
    integers and a_1 = 1 is forced by the 1/1728 normalization.
    """
    if n_terms < 1:
        raise ValueError("need at least one term")
    m = n_terms
    e4 = qseries.eisenstein(4, m)
    e6 = qseries.eisenstein(6, m)
    e6cubed = qseries.pow(e6, 3, m)
    e4cubed_e6 = qseries.mul(qseries.pow(e4, 3, m), e6, m)
    series = qseries.scale(qseries.add(qseries.scale(e6cubed, -1), e4cubed_e6),
                           Fraction(1, 1728))
    coeffs = tuple(series[1:m + 1])
    form = NewformData(1, 18, coeffs, label="s18n1")
    form.check_multiplicativity()
    return form


def _q_power_sum(form, terms, tau, n_terms):
    """Evaluate sum term(n) * q^n with q = exp(2 pi i tau), q-powers iterated."""
    q = mpmath.expjpi(2 * tau)  # exp(2 pi i tau)
    qn = mpmath.mpc(1)
    total = mpmath.mpc(0)
    for n in range(1, n_terms + 1):
        qn *= q
        c = terms(n)
        if c:
            total += c * qn
    return total


def eval_iterated_integral(form: NewformData, ell: int, tau, ctx: PrecisionContext,
                           n_terms: int | None = None):
    """f_ell(tau) = (2 pi i)^(-ell) sum a_n n^(-ell) q^n; ell = 0 gives f itself."""
    if not 0 <= ell <= form.weight - 1:
        raise ValueError(f"ell={ell} out of range [0, {form.weight - 1}]")
    with ctx.workprec():
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must be in the upper half-plane")
        if n_terms is None:
            n_terms = min(truncation_length(form, tau.imag, ctx), form.n_terms)
        vals = iterated_integral_vector(form, ell, tau, ctx, n_terms)
        return vals[ell]


def iterated_integral_vector(form: NewformData, ell_max: int, tau, ctx: PrecisionContext,
                             n_terms: int | None = None):
    """All f_ell(tau) for ell = 0..ell_max, sharing one pass of q-powers."""
    if not 0 <= ell_max <= form.weight - 1:
        raise ValueError(f"ell_max={ell_max} out of range [0, {form.weight - 1}]")
    with ctx.workprec():
        tau = mpmath.mpc(tau)
        if n_terms is None:
            n_terms = min(truncation_length(form, tau.imag, ctx), form.n_terms)
        n_terms = min(n_terms, form.n_terms)
        q = mpmath.expjpi(2 * tau)
        sums = [mpmath.mpc(0)] * (ell_max + 1)
        qn = mpmath.mpc(1)
        for n in range(1, n_terms + 1):
            qn *= q
            a = form.coeffs[n - 1]
            if not a:
                continue
            an = mpf(a.numerator) / a.denominator if a.denominator != 1 else mpf(a.numerator)
            term = an * qn
            npow = mpf(1)
            for ell in range(ell_max + 1):
                sums[ell] += term / npow
                npow *= n
        two_pi_i = mpmath.mpc(0, 2) * mp.pi
        out = []
        fac = mpmath.mpc(1)
        for ell in range(ell_max + 1):
            out.append(sums[ell] / fac)
            fac *= two_pi_i
        return out


def eval_form(form: NewformData, tau, ctx: PrecisionContext, n_terms=None):
    return eval_iterated_integral(form, 0, tau, ctx, n_terms=n_terms)


def _fricke_sides(form, z, ctx, n_terms=None):
    """lhs = f(-1/(Nz)) and base = (-1)^k N^k z^{2k} f(z), so rhs = eps*base."""
    N = form.level
    k = form.k
    with ctx.workprec():
        z = mpmath.mpc(z)
        w = -1 / (N * z)
        lhs = eval_form(form, w, ctx, n_terms=n_terms)
        base = ((-1) ** k) * mpf(N) ** k * z ** (2 * k) * eval_form(form, z, ctx, n_terms=n_terms)
        return lhs, base


def fricke_residual(form: NewformData, eps: int, points, ctx: PrecisionContext):
    """Max defect of the Fricke identity with sign eps over the given points.

    Defects are normalized by one common scale across the points.  (At the
    fixed point i/sqrt(N) an eps = -1 form vanishes, so a per-point relative
    defect would be 0/0 noise there.)
    """
    with ctx.workprec():
        sides = [_fricke_sides(form, z, ctx) for z in points]
        scale = max(max(abs(l), abs(b)) for l, b in sides)
        if scale == 0:
            return mpf(0)
        return max(abs(l - eps * b) for l, b in sides) / scale


def compute_sign_epsilon(form: NewformData, ctx: PrecisionContext) -> SignEpsilon:
    """Determine eps from the Fricke identity, numerically.

    Both sides are evaluated at z = i/sqrt(N) (the fixed point, where the two
    q-expansions converge equally fast) and at z = 1.1i/sqrt(N); the second
    point is what separates the signs, since the identity degenerates at the
    fixed point.
    """
    N = form.level
    with ctx.workprec():
        pts = [mpmath.mpc(0, 1) / mpmath.sqrt(N),
               mpmath.mpc(0, mpf("1.1")) / mpmath.sqrt(N)]
        best = None
        for eps in (+1, -1):
            defect = fricke_residual(form, eps, pts, ctx)
            if best is None or defect < best[1]:
                best = (eps, defect)
        eps, residual = best
        if residual > ctx.tol:
            raise CoefficientDataError(
                f"Fricke identity fails for both signs (defect {mpmath.nstr(residual, 5)}); "
                "coefficients are wrong or too few terms"
            )
        return SignEpsilon(eps, float(residual))


def atkin_lehner_sign(form: NewformData, gamma, q: int, ctx: PrecisionContext) -> int:
    """Eigenvalue of f under a determinant-q Atkin-Lehner matrix.

    gamma = [[A,B],[C,D]] with det = q, q || N, N | C.  The sign is read off
    numerically from f(gamma w) = w_q q^{-k} (Cw+D)^{2k} f(w) at a balanced
    test point with |Cw + D| = sqrt(q), then validated.
    """
    (A, B), (C, D) = gamma
    k = form.k
    with ctx.workprec():
        if C == 0:
            raise ValueError("Atkin-Lehner matrix must move the cusp at infinity")
        sides = []
        # two heights: the balanced |Cw + D| = sqrt(q) point is a fixed point
        # for the Fricke matrix and degenerates when the sign is -1
        for scl in (mpf(1), mpf("1.2")):
            w0 = mpmath.mpc(-D, scl * mpmath.sqrt(q)) / C
            gw = (A * w0 + B) / (C * w0 + D)
            lhs = eval_form(form, gw, ctx)
            base = mpf(q) ** (-k) * (C * w0 + D) ** (2 * k) * eval_form(form, w0, ctx)
            sides.append((lhs, base))
        scale = max(max(abs(l), abs(b)) for l, b in sides)
        best = None
        for s in (+1, -1):
            defect = max(abs(l - s * b) for l, b in sides) / scale
            if best is None or defect < best[1]:
                best = (s, defect)
        sign, residual = best
        if residual > ctx.tol:
            raise CoefficientDataError(
                f"Atkin-Lehner sign undecidable (defect {mpmath.nstr(residual, 5)})"
            )
        return sign
