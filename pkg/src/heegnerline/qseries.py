"""Exact one-variable q-expansion arithmetic over the rationals.

Series are plain lists c[0..M] of Fractions/ints, c[n] being the coefficient
of q^n.  Everything here is exact; floats never appear.  Used to build
Eisenstein series, eta products and the closed-form eigenforms shipped as
preset data.
"""

from __future__ import annotations

from fractions import Fraction


def mul(a, b, m):
    """Product of two series truncated at q^m (inclusive)."""
    out = [Fraction(0)] * (m + 1)
    for i, ai in enumerate(a[: m + 1]):
        if not ai:
            continue
        top = min(len(b) - 1, m - i)
        for j in range(top + 1):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def pow(a, e, m):
    out = [Fraction(1)] + [Fraction(0)] * m
    base = list(a[: m + 1])
    while e:
        if e & 1:
            out = mul(out, base, m)
        e >>= 1
        if e:
            base = mul(base, base, m)
    return out


def scale(a, c):
    return [x * c for x in a]


def add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    ]


def dilate(a, d, m):
    """a(q) -> a(q^d), truncated at q^m."""
    out = [Fraction(0)] * (m + 1)
    for n, c in enumerate(a):
        if n * d > m:
            break
        out[n * d] = c
    return out


def sigma(n, nu):
    """Divisor power sum sigma_nu(n)."""
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d ** nu
            e = n // d
            if e != d:
                s += e ** nu
        d += 1
    return s


def eisenstein(weight, m):
    """Normalized Eisenstein series E_4 or E_6 up to q^m."""
    if weight == 4:
        c = 240
        nu = 3
    elif weight == 6:
        c = -504
        nu = 5
    else:
        raise ValueError("only E4 and E6 are provided")
    out = [Fraction(1)] + [Fraction(c * sigma(n, nu)) for n in range(1, m + 1)]
    return out


def euler_product(m):
    """prod_{n>=1} (1 - q^n) up to q^m, by the pentagonal number theorem."""
    out = [Fraction(0)] * (m + 1)
    out[0] = Fraction(1)
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        e2 = j * (3 * j + 1) // 2
        if e1 > m and e2 > m:
            break
        s = Fraction(-1) if j % 2 else Fraction(1)
        if e1 <= m:
            out[e1] = s
        if e2 <= m:
            out[e2] = s
        j += 1
    return out


def eta_power(e, d, m):
    """q-expansion of eta(d*z)^e divided by the leading power q^(e*d/24).

    e*d must be divisible by 24 in the callers that need honest modular
    objects; here we simply return prod (1-q^{dn})^e and leave the q-shift
    to the caller.
    """
    base = euler_product(m // d if d else m)
    p = pow(base, e, m // d)
    return dilate(p, d, m)


def delta(m):
    """Discriminant cusp form q * prod (1-q^n)^24 up to q^m."""
    body = pow(euler_product(m), 24, m)
    return [Fraction(0)] + body[:m]
