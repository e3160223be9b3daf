"""Weight-k Manin symbols for Gamma_0(N), trivial character, over Q.

Purpose: one-time generation of Hecke eigenvalue data for the rational
newforms shipped as preset coefficient files.  Not part of the installed
package.

Generators of the symbol space are pairs (i, x) with i in 0..k-2 indexing the
monomial X^i Y^(k-2-i) and x in P^1(Z/N).  The right action of an integer
matrix g = [[a,b],[c,d]] is

    [P, (u:v)] . g = [P(aX+bY, cX+dY), (ua+vc : ub+vd)],

the quotient is by the two-term and three-term relations x + x.s = 0,
x + x.t + x.t^2 = 0 with s = [[0,-1],[1,0]], t = [[0,-1],[1,-1]], and T_n for
gcd(n, N) = 1 acts through Merel's matrices {det = n, a > b >= 0, d > c >= 0}
(terms whose bottom row dies in P^1(Z/N) are dropped).

Everything is exact rational linear algebra; the only consumer is
make_newform_data.py, which cross-validates eigenvalues against independently
constructed eigenforms before anything is written to disk.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd


def p1_list(n):
    """Canonical representatives of P^1(Z/n) and a lookup table."""
    reps = []
    index = {}

    def canon(c, d):
        c %= n
        d %= n
        best = None
        for u in range(1, n + 1):
            if gcd(u, n) != 1:
                continue
            cand = ((u * c) % n, (u * d) % n)
            if best is None or cand < best:
                best = cand
        return best

    for c in range(n):
        for d in range(n):
            if gcd(gcd(c, d), n) != 1:
                continue
            key = canon(c, d)
            if key not in index:
                index[key] = len(reps)
                reps.append(key)
    return reps, index, canon


class ManinSymbolSpace:
    def __init__(self, level: int, weight: int):
        assert weight >= 2 and weight % 2 == 0
        self.level = level
        self.weight = weight
        self.deg = weight - 2
        self.reps, self.p1_index, self._canon = p1_list(level)
        self.n_p1 = len(self.reps)
        self.n_gens = (self.deg + 1) * self.n_p1
        self._quotient = None

    def gen_index(self, i, x):
        return i * self.n_p1 + x

    def act_poly(self, i, g):
        """Coefficients of (aX+bY)^i (cX+dY)^(deg-i) on X^j Y^(deg-j)."""
        (a, b), (c, d) = g
        deg = self.deg
        out = [0] * (deg + 1)
        for s in range(i + 1):
            ca = comb(i, s) * a ** s * b ** (i - s)
            if ca == 0:
                continue
            for t in range(deg - i + 1):
                cb = comb(deg - i, t) * c ** t * d ** (deg - i - t)
                if cb:
                    out[s + t] += ca * cb
        return out

    def act_p1(self, x, g):
        (a, b), (c, d) = g
        u, v = self.reps[x]
        key = self._canon(u * a + v * c, u * b + v * d)
        uu, vv = key
        if gcd(gcd(uu, vv), self.level) != 1:
            return None
        return self.p1_index[key]

    def act_gen(self, i, x, g):
        """[X^i Y^(deg-i), x].g as a list of (gen_index, integer coeff)."""
        x2 = self.act_p1(x, g)
        if x2 is None:
            return []
        coeffs = self.act_poly(i, g)
        return [(self.gen_index(j, x2), c) for j, c in enumerate(coeffs) if c]

    # ----- quotient by the two/three-term relations -----

    def quotient(self):
        if self._quotient is not None:
            return self._quotient
        s = ((0, -1), (1, 0))
        t = ((0, -1), (1, -1))
        t2 = ((-1, 1), (-1, 0))  # t^2
        rows = []
        for i in range(self.deg + 1):
            for x in range(self.n_p1):
                base = self.gen_index(i, x)
                row = {base: Fraction(1)}
                for g2, c in self.act_gen(i, x, s):
                    row[g2] = row.get(g2, Fraction(0)) + c
                rows.append(row)
                row = {base: Fraction(1)}
                for g in (t, t2):
                    for g2, c in self.act_gen(i, x, g):
                        row[g2] = row.get(g2, Fraction(0)) + c
                rows.append(row)
        # row reduce the relation space
        pivots = {}  # column -> reduced row (dict)
        for row in rows:
            row = dict(row)
            while row:
                col = max(row)
                if col in pivots:
                    piv = pivots[col]
                    f = row[col] / piv[col]
                    for c2, v in piv.items():
                        row[c2] = row.get(c2, Fraction(0)) - f * v
                        if row[c2] == 0:
                            del row[c2]
                else:
                    pivots[col] = row
                    break
        free_cols = [j for j in range(self.n_gens) if j not in pivots]
        # projection of each generator onto the free coordinates
        proj = [None] * self.n_gens
        col_of = {c: idx for idx, c in enumerate(free_cols)}
        for j in free_cols:
            proj[j] = {col_of[j]: Fraction(1)}
        # resolve pivot columns in increasing order: a pivot sits at the max
        # column of its row, so each row only references smaller columns
        for col in sorted(pivots):
            row = pivots[col]
            expr = {}
            for c2, v in row.items():
                if c2 == col:
                    continue
                f = -v / row[col]
                sub = proj[c2]
                if sub is None:
                    raise RuntimeError("pivot resolution order broken")
                for fc, fv in sub.items():
                    expr[fc] = expr.get(fc, Fraction(0)) + f * fv
            proj[col] = {c: v for c, v in expr.items() if v}
        self._quotient = (free_cols, proj)
        return self._quotient

    @property
    def dim(self):
        free_cols, _ = self.quotient()
        return len(free_cols)

    # ----- Hecke operators -----

    def hecke_matrix(self, n):
        """Matrix of T_n (gcd(n, level) = 1) on the quotient, columns = images."""
        assert gcd(n, self.level) == 1
        free_cols, proj = self.quotient()
        mats = merel_matrices(n)
        dim = len(free_cols)
        cols = []
        for j in free_cols:
            i, x = divmod(j, self.n_p1)
            vec = [Fraction(0)] * dim
            for h in mats:
                for g2, c in self.act_gen(i, x, h):
                    for fc, fv in proj[g2].items():
                        vec[fc] += c * fv
            cols.append(vec)
        # return row-major matrix: M[r][c]
        return [[cols[c][r] for c in range(dim)] for r in range(dim)]

    def hecke_apply_dual(self, psi, n):
        """<psi, T_n e_{x0}> / <psi, e_{x0}> for a Hecke-dual functional psi.

        psi is a length-n_gens rational row vector with psi.T_n = a_n psi on
        the quotient; x0 is chosen internally as a generator with psi != 0.
        """
        x0 = next(j for j in range(self.n_gens) if psi[j])
        i, x = divmod(x0, self.n_p1)
        total = Fraction(0)
        for h in merel_matrices(n):
            x2 = self.act_p1(x, h)
            if x2 is None:
                continue
            coeffs = self.act_poly(i, h)
            base = x2
            npp = self.n_p1
            for jdeg, c in enumerate(coeffs):
                if c:
                    total += c * psi[jdeg * npp + base]
        return total / psi[x0]


def merel_matrices(n):
    """Integer matrices of determinant n with a > b >= 0, d > c >= 0."""
    out = []
    for a in range(1, n + 1):
        for b in range(a):
            if b == 0:
                if n % a:
                    continue
                d = n // a
                for c in range(d):
                    out.append(((a, 0), (c, d)))
            else:
                step = a - b
                c = 0
                while c * step < n:
                    num = n + b * c
                    if num % a == 0:
                        d = num // a
                        if d > c:
                            out.append(((a, b), (c, d)))
                    c += 1
    return out


# ----- exact rational linear algebra helpers -----

def mat_mul_vec(m, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in m]


def kernel_basis(m):
    """Basis of the right kernel of a rational matrix (list of rows)."""
    if not m:
        return []
    rows = [list(r) for r in m]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [rows[i][j] - f * rows[r][j] for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def eigen_kernel(mat, eigval):
    n = len(mat)
    shifted = [[mat[i][j] - (eigval if i == j else 0) for j in range(n)]
               for i in range(n)]
    return kernel_basis(shifted)


def transpose(m):
    return [list(col) for col in zip(*m)]
