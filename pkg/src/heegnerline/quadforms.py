"""Positive-definite binary quadratic forms and Heegner representatives.

A form [A,B,C] has discriminant D = B^2 - 4AC < 0.  Class representatives of
a fundamental discriminant are enumerated brute-force over the reduced-form
box |B| <= A <= sqrt(|D|/3).  Heegner representatives at level N are found by
walking A = N, 2N, ... and keeping one form per SL2(Z)-class, which certifies
Gamma_0(N)-inequivalence through the class-group bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import mpmath

from .numerics import PrecisionContext


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def transform(self, g) -> "QuadForm":
        """Right action Q|g (x,y) -> Q(px+qy, rx+sy) for g=[[p,q],[r,s]]."""
        (p, q), (r, s) = g
        a, b, c = self.a, self.b, self.c
        a2 = a * p * p + b * p * r + c * r * r
        b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s
        c2 = a * q * q + b * q * s + c * s * s
        return QuadForm(a2, b2, c2)

    def root(self, ctx: PrecisionContext):
        """tau = (-B + sqrt(D))/(2A) in the upper half-plane."""
        with ctx.workprec():
            sq = mpmath.sqrt(mpmath.mpf(-self.disc))
            return mpmath.mpc(-self.b, sq) / (2 * self.a)


def reduce_form(g: QuadForm) -> QuadForm:
    """The unique reduced SL2(Z)-representative of a positive-definite form."""
    if not g.is_positive_definite():
        raise ValueError(f"{g} is not positive definite")
    a, b, c = g.a, g.b, g.c
    while True:
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            # translate: B -> B - 2tA keeping B in (-A, A]
            t = (b + a) // (2 * a) if b > 0 else -((-b + a) // (2 * a))
            b2 = b - 2 * t * a
            c2 = c - t * b + t * t * a
            b, c = b2, c2
            continue
        if a == c and b < 0:
            b = -b
            continue
        break
    f = QuadForm(a, b, c)
    assert f.is_reduced() and f.disc == g.disc
    return f


def is_fundamental(d: int) -> bool:
    """Is d the discriminant of the ring of integers of Q(sqrt(d)), d < 0?"""
    if d >= 0:
        return False
    if d % 4 == 1 or d % 4 == -3:
        return _squarefree(-d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3, -2, -1) and _squarefree(-m)
    return False


def _squarefree(n: int) -> bool:
    if n <= 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 1
    return True


def class_representatives(d: int):
    """All reduced forms of fundamental discriminant d; length is h(d)."""
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a negative fundamental discriminant")
    out = []
    a_max = isqrt(-d // 3) if -d >= 3 else 1
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            out.append(QuadForm(a, b, c))
    return sorted(out)


def class_number(d: int) -> int:
    return len(class_representatives(d))


@dataclass(frozen=True)
class HeegnerPoint:
    form: QuadForm
    level: int
    disc: int
    root_class: int  # r mod 2N

    def tau(self, ctx: PrecisionContext):
        return self.form.root(ctx)

    def transform(self, g) -> "HeegnerPoint":
        """Move the point by g in SL2(Z): the root maps to g(tau).

        The quadratic form with root g(tau) is Q|g^{-1}.
        """
        (p, q), (r, s) = g
        if p * s - q * r != 1:
            raise ValueError("transform requires a determinant-1 matrix")
        ginv = ((s, -q), (-r, p))
        f2 = self.form.transform(ginv)
        return HeegnerPoint(f2, self.level, self.disc, self.root_class)


def sqrt_classes(n: int, d: int):
    """All residues r in [0, 2N) with r^2 = D (mod 4N), up to the full list."""
    return [r for r in range(2 * n) if (r * r - d) % (4 * n) == 0]


def first_positive_root(n: int, d: int) -> int:
    for r in range(1, 2 * n + 1):
        if (r * r - d) % (4 * n) == 0:
            return r
    raise ValueError(f"D={d} is not a square modulo 4N={4 * n}")


def heegner_representatives(n: int, d: int, r: int, a_cap_factor: int = 4):
    """One Heegner point per class: forms [A,B,C], N|A, B = r (mod 2N).

    Enumerates A = N, 2N, ... and keeps the first form found in each
    SL2(Z)-class until all h(D) classes are represented.  Fails loudly if the
    cap A <= 4|D|N is reached with classes missing.
    """
    if (r * r - d) % (4 * n) != 0:
        raise ValueError(f"r^2 = {r * r} is not congruent to D = {d} mod 4N = {4 * n}")
    targets = {f: None for f in class_representatives(d)}
    remaining = len(targets)
    a_cap = a_cap_factor * abs(d)
    points = []
    for mult in range(1, a_cap + 1):
        a = n * mult
        b0 = r % (2 * n)
        for b in range(b0, 2 * a, 2 * n):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            form = QuadForm(a, b, c)
            red = reduce_form(form)
            if targets.get(red) is None:
                targets[red] = form
                points.append(HeegnerPoint(form, n, d, r % (2 * n)))
                remaining -= 1
        if remaining == 0:
            break
    if remaining:
        raise RuntimeError(
            f"could not fill all {len(targets)} classes for N={n}, D={d}, r={r}"
        )
    return points
