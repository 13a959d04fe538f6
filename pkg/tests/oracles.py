"""Slow, independent reference computations used by the test suite.

Nothing here calls into the enumeration code of the package: minima are found
by scanning a box of lattice points whose size is certified from an exact
lower bound on the smallest eigenvalue of the Gram matrix.
"""
import math
from fractions import Fraction
from itertools import combinations, product

import numpy as np


def frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def objective(gram, char, l, w):
    g = len(w)
    quad = sum(frac(gram[i][j]) * w[i] * w[j] for i in range(g) for j in range(g))
    cross = sum(frac(gram[i][j]) * char[i] * w[j] for i in range(g) for j in range(g))
    return (quad - cross) / 2 + sum(frac(li) * wi for li, wi in zip(l, w))


def is_psd_exact(m):
    """Sylvester-style check through exact Gaussian elimination with pivoting."""
    m = [[frac(x) for x in row] for row in m]
    n = len(m)
    idx = list(range(n))
    while idx:
        # choose the largest diagonal entry as pivot
        p = max(idx, key=lambda i: m[i][i])
        if m[p][p] < 0:
            return False
        if m[p][p] == 0:
            if any(m[p][j] != 0 for j in idx):
                return False
            idx.remove(p)
            continue
        idx.remove(p)
        for i in idx:
            f = m[i][p] / m[p][p]
            for j in idx:
                m[i][j] -= f * m[p][j]
    return True


def certified_min_eig(gram):
    """A rational lam > 0 with B - lam I positive semidefinite (exactly checked)."""
    b = np.array([[float(x) for x in row] for row in gram])
    ev = float(np.linalg.eigvalsh(b).min())
    lam = Fraction(ev * 0.999).limit_denominator(10 ** 6)
    while lam > 0:
        shifted = [[frac(gram[i][j]) - (lam if i == j else 0) for j in range(len(gram))]
                   for i in range(len(gram))]
        if is_psd_exact(shifted):
            return lam
        lam /= 2
    raise ValueError("form is not definite")


def minimizer_box(gram, char, l):
    """Radius r with every minimiser of a + l inside the box |w_i| <= r.

    a(w) + l(w) >= lam |w|^2 / 2 - |c|_1 |w| with c = l - B rho / 2, and the
    value at 0 is 0, so minimisers have |w|_2 <= 2 |c|_1 / lam.
    """
    g = len(char)
    c = [frac(l[j]) - sum(frac(gram[i][j]) * char[i] for i in range(g)) / 2 for j in range(g)]
    lam = certified_min_eig(gram)
    return math.floor(2 * sum(abs(x) for x in c) / lam) + 1


def brute_min(gram, char, l, radius=None):
    """(value, sorted minimisers) of a + l over a certified box (definite forms).

    The scan is vectorised in exact integer arithmetic: 2 D (a + l) is an
    integer for D the common denominator of the data.
    """
    g = len(char)
    r = minimizer_box(gram, char, l) if radius is None else radius
    entries = [frac(x) for row in gram for x in row] + [frac(x) for x in l]
    den = math.lcm(*(x.denominator for x in entries))
    bi = np.array([[int(frac(x) * den) for x in row] for row in gram], dtype=np.int64)
    li = np.array([int(frac(x) * den) for x in l], dtype=np.int64)
    rho = np.array(char, dtype=np.int64)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    pts = np.stack(np.meshgrid(*([axis] * g), indexing="ij"), -1).reshape(-1, g)
    vals = np.einsum("ki,ij,kj->k", pts, bi, pts) - pts @ (bi @ rho) + 2 * (pts @ li)
    best = vals.min()
    arg = tuple(sorted(tuple(int(x) for x in w) for w in pts[vals == best]))
    return Fraction(int(best), 2 * den), arg


def brute_below(gram, char, l, bound, radius):
    g = len(char)
    return tuple(sorted(w for w in product(range(-radius, radius + 1), repeat=g)
                        if objective(gram, char, l, w) <= bound))


def dual_form(gram, l):
    """Q*(l) for a definite Gram matrix via numpy-free Cramer-style solve."""
    g = len(gram)
    m = [[frac(x) for x in row] + [frac(b)] for row, b in zip(gram, l)]
    for c in range(g):
        p = next(r for r in range(c, g) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        for r in range(g):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    x = [m[i][g] / m[i][i] for i in range(g)]
    return sum(frac(li) * xi for li, xi in zip(l, x))


# -- Delaunay cells by direct enumeration ---------------------------------------

def _solve(rows, rhs):
    n = len(rows)
    m = [[frac(x) for x in row] + [frac(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def affine_rank(points):
    p0 = points[0]
    rows = [[frac(a - b) for a, b in zip(p, p0)] for p in points[1:]]
    rank = 0
    cols = len(p0)
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def maximal_cells_through_origin(gram):
    """Maximal Delaunay cells (char 0) through the origin, translated so that
    their lex-min vertex is the origin; one per translation class.

    Vertices of a cell containing 0 lie within B-distance sqrt(tr B) of 0, so
    every simplex of vertices from that ellipsoid is tried as a witness and
    the full minimiser set at the witness is found by brute force.
    """
    g = len(gram)
    char = (0,) * g
    trace = sum(frac(gram[i][i]) for i in range(g))
    lam = certified_min_eig(gram)
    r = math.isqrt(math.floor(trace / lam)) + 1
    near = [w for w in product(range(-r, r + 1), repeat=g)
            if any(w) and objective(gram, char, (0,) * g, w) * 2 <= trace]
    cells = set()
    for others in combinations(near, g):
        simplex = ((0,) * g,) + others
        if affine_rank(simplex) < g:
            continue
        # a(x) + l(x) = m at each simplex vertex, unknowns (l, m)
        rows = [list(x) + [-1] for x in simplex]
        rhs = [-objective(gram, char, (0,) * g, x) for x in simplex]
        sol = _solve(rows, rhs)
        if sol is None:
            continue
        l, level = sol[:g], sol[g]
        value, mins = brute_min(gram, char, l)
        if value != level:
            continue
        v0 = min(mins)
        cells.add(tuple(sorted(tuple(a - b for a, b in zip(w, v0)) for w in mins)))
    return cells


def convex_hull_2d(points):
    """Counter-clockwise hull of exact 2-d points (monotone chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def in_convex_polygon(hull, p):
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < 0:
            return False
    return True


def polygon_area(points):
    """Area of the convex hull of 2-d points (shoelace formula)."""
    hull = convex_hull_2d(points)
    if len(hull) < 3:
        return Fraction(0)
    n = len(hull)
    twice = sum(hull[i][0] * hull[(i + 1) % n][1] - hull[(i + 1) % n][0] * hull[i][1]
                for i in range(n))
    return Fraction(abs(twice), 2)


# -- Riemann theta by plain summation ---------------------------------------------

def theta_direct(z, tau, radius=12):
    """Sum over the box |n_i| <= radius (complex128, for modest inputs only)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    g = len(z)
    grid = np.array(list(product(range(-radius, radius + 1), repeat=g)), dtype=float)
    expo = 1j * np.pi * np.einsum("ki,ij,kj->k", grid, tau, grid) + 2j * np.pi * grid @ z
    return complex(np.sum(np.exp(expo)))
