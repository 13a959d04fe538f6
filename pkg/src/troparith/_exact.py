"""Exact rational and integer linear algebra on small dense matrices.

Matrices are tuples of row tuples. Entries are ``Fraction`` (rational
routines) or ``int`` (lattice routines). Nothing here touches floating point.
"""
from fractions import Fraction
from math import gcd, isqrt, floor, ceil

from .errors import NotPositiveSemidefinite, NotSymmetric


def to_fraction(x):
    """Convert ints, Fractions, ``"p/q"`` and exact decimal strings.

    Floats are read through their shortest decimal representation, so
    ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def frac_matrix(rows):
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


def frac_vector(xs):
    return tuple(to_fraction(x) for x in xs)


def int_vector(xs):
    out = []
    for x in xs:
        f = to_fraction(x)
        if f.denominator != 1:
            raise ValueError(f"{x!r} is not an integer")
        out.append(int(f))
    return tuple(out)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def vec_mat(v, m):
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(m))), Fraction(0)) for j in range(n))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def quad(m, v):
    """v^T m v."""
    return dot(v, mat_vec(m, v))


def bilinear(m, u, v):
    return dot(u, mat_vec(m, v))


def is_symmetric(m):
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def rref(m):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows], pivots


def solve(m, b):
    """One rational solution of m x = b (free variables set to zero), or None."""
    n = len(m[0]) if m else len(b)
    aug = [tuple(row) + (to_fraction(bi),) for row, bi in zip(m, b)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(rows, pivots):
        x[c] = row[n]
    return tuple(x)


def rank(m):
    return len(rref(m)[1]) if m else 0


def inverse(m):
    n = len(m)
    aug = [tuple(row) + tuple(Fraction(int(i == j)) for j in range(n)) for i, row in enumerate(m)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in rows)


def det(m):
    n = len(m)
    rows = [list(r) for r in m]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def scale_to_integers(v):
    """Positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def psd_certificate(m):
    """Certify that a symmetric rational matrix is positive semidefinite.

    Symmetric elimination with diagonal pivoting, in exact arithmetic.
    Returns the rank. Raises ``NotPositiveSemidefinite`` with an integer
    witness ``w`` such that ``w^T m w < 0`` otherwise.
    """
    if not is_symmetric(m):
        raise NotSymmetric("gram matrix is not symmetric")
    n = len(m)
    schur = {(i, j): m[i][j] for i in range(n) for j in range(n)}
    remaining = list(range(n))
    eliminated = []
    while remaining:
        diag = [(schur[i, i], i) for i in remaining]
        neg = [i for d, i in diag if d < 0]
        if neg:
            i = neg[0]
            y = {k: Fraction(int(k == i)) for k in remaining}
            raise _witness_error(m, eliminated, remaining, y)
        pos = [i for d, i in diag if d > 0]
        if not pos:
            for a in remaining:
                for b in remaining:
                    if a < b and schur[a, b] != 0:
                        sign = -1 if schur[a, b] > 0 else 1
                        y = {k: Fraction(0) for k in remaining}
                        y[a], y[b] = Fraction(1), Fraction(sign)
                        raise _witness_error(m, eliminated, remaining, y)
            break
        p = pos[0]
        piv = schur[p, p]
        rest = [k for k in remaining if k != p]
        for a in rest:
            for b in rest:
                schur[a, b] -= schur[a, p] * schur[p, b] / piv
        remaining = rest
        eliminated.append(p)
    return len(eliminated)


def _witness_error(m, eliminated, remaining, y):
    # Extend y on the remaining block to the full space so that x^T m x
    # equals the Schur-complement value y^T S y.
    n = len(m)
    x = [Fraction(0)] * n
    for k in remaining:
        x[k] = y[k]
    if eliminated:
        a_pp = tuple(tuple(m[i][j] for j in eliminated) for i in eliminated)
        rhs = tuple(-sum((m[i][k] * y[k] for k in remaining), Fraction(0)) for i in eliminated)
        xp = solve(a_pp, rhs)
        for i, v in zip(eliminated, xp):
            x[i] = v
    w = scale_to_integers(tuple(x))
    value = quad(m, tuple(Fraction(t) for t in w))
    assert value < 0
    return NotPositiveSemidefinite(
        f"gram matrix is not positive semidefinite: w={list(w)} gives w^T B w = {value}",
        witness=w)


# -- integer lattices -------------------------------------------------------

def column_echelon(m):
    """Integer column echelon form.

    For an integer matrix ``m`` (r x n) returns ``(h, u)`` with ``u`` an
    n x n unimodular integer matrix and ``h = m u`` in column echelon form:
    the nonzero columns come first, each with a positive pivot strictly below
    the previous pivot row. The trailing columns of ``u`` matching zero
    columns of ``h`` form a basis of the integer kernel.
    """
    r = len(m)
    n = len(m[0]) if m else 0
    h = [list(row) for row in m]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for mat in (h, u):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    piv_col = 0
    pivots = []
    for row in range(r):
        if piv_col >= n:
            break
        for j in range(piv_col + 1, n):
            x, y = h[row][piv_col], h[row][j]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # [x y] . [[s, -y/g], [t, x/g]] = [g, 0]; determinant is 1.
            colop(piv_col, j, s, t, -y // g, x // g)
        if h[row][piv_col] == 0:
            continue
        if h[row][piv_col] < 0:
            colop(piv_col, piv_col, -1, 0, -1, 0)
        p = h[row][piv_col]
        for j in range(piv_col):
            q = h[row][j] // p
            if q:
                colop(j, piv_col, 1, -q, 0, 1)
        pivots.append((row, piv_col))
        piv_col += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u)), pivots


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def columns(m, idx):
    return [tuple(row[j] for row in m) for j in idx]


# -- exact integer ranges ----------------------------------------------------

def floor_sqrt(t):
    """floor(sqrt(t)) for a nonnegative rational t."""
    t = Fraction(t)
    return isqrt(t.numerator * t.denominator) // t.denominator


def integer_window(center, budget):
    """Integers y with (y - center)^2 <= budget, as (lo, hi); lo > hi if none."""
    center, budget = Fraction(center), Fraction(budget)
    if budget < 0:
        return 1, 0
    s = floor_sqrt(budget) + 1
    hi = floor(center) + s
    while hi >= center and (hi - center) ** 2 > budget:
        hi -= 1
    lo = ceil(center) - s
    while lo <= center and (lo - center) ** 2 > budget:
        lo += 1
    return lo, hi
