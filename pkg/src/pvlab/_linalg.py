"""Exact linear algebra on list-of-lists matrices over int / Fraction.

Rank, kernel and determinant decisions feed classification verdicts, so
everything here is exact rational arithmetic.  A mod-p elimination is
provided as a fast certificate: the rank mod p never exceeds the true rank,
so reaching the maximal possible rank mod p proves it exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

P61 = (1 << 61) - 1  # Mersenne prime
P2 = (1 << 31) - 1   # fallback second prime

Vec = list
Mat = list  # list of row lists


def _residue(value, p: int) -> int:
    if isinstance(value, Fraction):
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by the modulus")
        return value.numerator * pow(den, -1, p) % p
    return value % p


def modp_rank(rows: Mat, p: int = P61) -> int:
    """Rank of the matrix reduced mod p (a lower bound for the exact rank)."""
    m = [[_residue(v, p) for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, p)
        prow = m[row]
        for r in range(row + 1, nrows):
            f = m[r][col]
            if f:
                f = f * inv % p
                mr = m[r]
                for c in range(col, ncols):
                    mr[c] = (mr[c] - f * prow[c]) % p
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def frac_rref(rows: Mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rref rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        prow = m[row]
        for r in range(nrows):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], prow)]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def rank(rows: Mat) -> int:
    """Exact rank over Q."""
    return len(frac_rref(rows)[1])


def clear_denominators(vec: Vec) -> list[int]:
    """Scale a rational vector to a primitive integer vector.

    The leading nonzero entry is made positive, so the output is a canonical
    representative of the line spanned by the input.
    """
    fr = [Fraction(v) for v in vec]
    mult = 1
    for v in fr:
        mult = mult * v.denominator // gcd(mult, v.denominator)
    out = [int(v * mult) for v in fr]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    lead = next((v for v in out if v), 0)
    if lead < 0:
        out = [-v for v in out]
    return out


def kernel_basis(rows: Mat) -> list[list[int]]:
    """Basis of the right kernel {x : A x = 0}, as primitive integer vectors.

    Deterministic: one basis vector per free column, ordered by free column.
    """
    ncols = len(rows[0]) if rows else 0
    rref, pivots = frac_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -rref[r][f]
        basis.append(clear_denominators(x))
    return basis


def bareiss_det(rows: Mat) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in rows]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det(rows: Mat) -> Fraction:
    """Exact determinant for rational input (rows are scaled to integers)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scaled = []
    scale = Fraction(1)
    for row in rows:
        fr = [Fraction(v) for v in row]
        mult = 1
        for v in fr:
            mult = mult * v.denominator // gcd(mult, v.denominator)
        scale *= mult
        scaled.append([int(v * mult) for v in fr])
    return Fraction(bareiss_det(scaled)) / scale


def solve(a: Mat, b: Vec) -> list[Fraction]:
    """Solve A x = b for square nonsingular A, exactly."""
    n = len(a)
    aug = [[Fraction(v) for v in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    rref, pivots = frac_rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n] for row in rref]


def matvec(m: Mat, v: Vec) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def matmul(a: Mat, b: Mat) -> Mat:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(m: Mat) -> Mat:
    return [list(row) for row in zip(*m)]


def identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(nrows: int, ncols: int) -> Mat:
    return [[0] * ncols for _ in range(nrows)]
