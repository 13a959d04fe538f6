"""Exact minimisation and bounded enumeration of a(w) + l(w) over Z^g.

The form is first restricted to a complement of its radical lattice, where
it is positive definite. There we write the objective as

    f(y) = 1/2 (y - c)^T A (y - c) + f_min,

with c the real minimiser, and enumerate lattice points in the ellipsoid
(y - c)^T A (y - c) <= R by Fincke-Pohst branch and bound. Every bound is an
exact rational comparison, so the minimiser set is certified complete.
"""
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _exact as ex
from .errors import EnumerationLimit, UnboundedBelow
from .quadform import as_covector

DEFAULT_MAX_ENUM = 10**7


def max_enum_nodes():
    raw = os.environ.get("TROPARITH_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


@dataclass(frozen=True)
class MinResult:
    value: Fraction
    minimizers: tuple
    quotient_flag: bool


@dataclass(frozen=True)
class _Reduced:
    """The definite problem on the complement lattice."""

    complement: tuple   # k integer vectors in Z^g
    qdiag: tuple        # Fincke-Pohst coefficients q_ii
    qoff: tuple         # q_ij for j > i (zero elsewhere)
    gram: tuple         # A = C^T B C


@lru_cache(maxsize=4096)
def _reduce(q):
    comp = q.radical.complement
    k = len(comp)
    cf = [ex.frac_vector(c) for c in comp]
    A = tuple(tuple(ex.bilinear(q.gram, ci, cj) for cj in cf) for ci in cf)
    # A(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    m = [list(row) for row in A]
    for i in range(k):
        for j in range(i + 1, k):
            m[j][i] = m[i][j]
            m[i][j] = m[i][j] / m[i][i]
        for r in range(i + 1, k):
            for s in range(r, k):
                m[r][s] -= m[r][i] * m[i][s]
    qdiag = tuple(m[i][i] for i in range(k))
    qoff = tuple(tuple(m[i][j] if j > i else Fraction(0) for j in range(k)) for i in range(k))
    return _Reduced(comp, qdiag, qoff, A)


def _setup(q, l):
    l = as_covector(l)
    q.check_dim(l.coeffs, "covector")
    if not q.annihilates_radical(l):
        raise UnboundedBelow("covector is nonzero on the radical: a + l is unbounded below")
    red = _reduce(q)
    # linear part of a + l
    lin = tuple(a - b for a, b in zip(l.coeffs, q.half_char_covector.coeffs))
    b = tuple(ex.dot(lin, ex.frac_vector(c)) for c in red.complement)
    if not red.complement:
        return red, (), Fraction(0)
    center = tuple(-x for x in ex.solve(red.gram, b))
    fmin = ex.dot(b, center) / 2
    return red, center, fmin


def _dist(red, center, y):
    d = [Fraction(yi) - ci for yi, ci in zip(y, center)]
    return ex.quad(red.gram, d)


def _babai(red, center):
    k = len(center)
    y = [0] * k
    for i in reversed(range(k)):
        shift = sum((red.qoff[i][j] * (y[j] - center[j]) for j in range(i + 1, k)), Fraction(0))
        c = center[i] - shift
        y[i] = round(c)
    return tuple(y)


def _lift(red, ys):
    comp = red.complement
    g = len(comp[0])
    out = set()
    for y in ys:
        out.add(tuple(sum(yi * c[r] for yi, c in zip(y, comp)) for r in range(g)))
    return tuple(sorted(out))


def minimize_affine(q, l):
    """Exact minimum of a(w) + l(w) over Z^g with all minimisers.

    Minimisers are listed once per class modulo the radical lattice, lifted
    into the complement lattice, sorted lexicographically.
    """
    red, center, fmin = _setup(q, l)
    quotient = not q.is_definite
    if not red.complement:
        return MinResult(Fraction(0), ((0,) * q.rank,), quotient)
    start = _babai(red, center)
    radius = _dist(red, center, start)
    best, ys = _fincke_pohst_min(red, center, radius, max_enum_nodes())
    value = best / 2 + fmin
    return MinResult(value, _lift(red, ys), quotient)


def _fincke_pohst_min(red, center, radius, limit):
    # Shrinking-radius search: keep every point at the current best distance.
    k = len(center)
    qd, qo = red.qdiag, red.qoff
    y = [0] * k
    best = [radius]
    found = []
    nodes = [0]

    def rec(i, used_above):
        nodes[0] += 1
        if nodes[0] > limit:
            raise EnumerationLimit(f"lattice enumeration exceeded {limit} nodes")
        shift = sum((qo[i][j] * (y[j] - center[j]) for j in range(i + 1, k)), Fraction(0))
        c = center[i] - shift
        lo, hi = ex.integer_window(c, (best[0] - used_above) / qd[i])
        for t in sorted(range(lo, hi + 1), key=lambda t: (abs(t - c), t)):
            used = used_above + qd[i] * (t - c) ** 2
            if used > best[0]:
                continue
            y[i] = t
            if i == 0:
                if used < best[0]:
                    best[0] = used
                    found.clear()
                found.append(tuple(y))
            else:
                rec(i - 1, used)
        y[i] = 0

    rec(k - 1, Fraction(0))
    return best[0], found


def enumerate_below(q, l, bound):
    """All w (one per radical class) with a(w) + l(w) <= bound."""
    bound = ex.to_fraction(bound)
    red, center, fmin = _setup(q, l)
    if not red.complement:
        return (((0,) * q.rank),) if bound >= 0 else ()
    radius = 2 * (bound - fmin)
    if radius < 0:
        return ()
    ys = _enumerate_all(red, center, radius, max_enum_nodes())
    return _lift(red, ys)


def _enumerate_all(red, center, radius, limit):
    k = len(center)
    qd, qo = red.qdiag, red.qoff
    y = [0] * k
    found = []
    nodes = [0]

    def rec(i, used_above):
        nodes[0] += 1
        if nodes[0] > limit:
            raise EnumerationLimit(f"lattice enumeration exceeded {limit} nodes")
        shift = sum((qo[i][j] * (y[j] - center[j]) for j in range(i + 1, k)), Fraction(0))
        c = center[i] - shift
        lo, hi = ex.integer_window(c, (radius - used_above) / qd[i])
        for t in range(lo, hi + 1):
            used = used_above + qd[i] * (t - c) ** 2
            y[i] = t
            if i == 0:
                found.append(tuple(y))
            else:
                rec(i - 1, used)
        y[i] = 0

    rec(k - 1, Fraction(0))
    return found


def objective(q, l, w):
    """a(w) + l(w)."""
    l = as_covector(l)
    return (q.Q(w) - q.B(q.char, w)) / 2 + l(w)
