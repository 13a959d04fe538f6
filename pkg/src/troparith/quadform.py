"""Quadratic functions with characteristic on Z^g.

A :class:`QuadChar` stores a symmetric positive semidefinite rational Gram
matrix ``B`` and an integer characteristic ``rho``. It represents the
quadratic function

    a(w) = (w^T B w - rho^T B w) / 2,

normalised by a(0) = 0 and symmetric about rho/2. Everything is exact.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from . import _exact as ex
from .errors import (DimensionMismatch, NotSurjective, ParityMismatch,
                     RadicalViolation)


@dataclass(frozen=True)
class Covector:
    """A rational linear functional on Z^g, stored by its coefficients."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", ex.frac_vector(self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, w):
        return ex.dot(self.coeffs, w)

    def __add__(self, other):
        return Covector(tuple(a + b for a, b in zip(self.coeffs, _coeffs(other))))

    def __sub__(self, other):
        return Covector(tuple(a - b for a, b in zip(self.coeffs, _coeffs(other))))

    def __neg__(self):
        return Covector(tuple(-a for a in self.coeffs))

    def scale(self, c):
        c = ex.to_fraction(c)
        return Covector(tuple(c * a for a in self.coeffs))

    @classmethod
    def zero(cls, g):
        return cls((0,) * g)


def _coeffs(x):
    return x.coeffs if isinstance(x, Covector) else ex.frac_vector(x)


def as_covector(l):
    return l if isinstance(l, Covector) else Covector(tuple(l))


@dataclass(frozen=True)
class RadicalData:
    """Saturated integer basis of ker(B) and a complementary sublattice.

    ``basis + complement`` is a Z-basis of Z^g (the change of basis is
    unimodular), so the complement lattice is a set of representatives of
    Z^g modulo the radical lattice.
    """

    basis: tuple
    complement: tuple


@dataclass(frozen=True)
class QuadChar:
    """Symmetric PSD Gram matrix with an integer characteristic.

    ``rank`` is the rank g of the lattice Z^g (not the rank of the form; see
    :attr:`form_rank`).
    """

    gram: tuple
    char: tuple

    def __post_init__(self):
        gram = ex.frac_matrix(self.gram)
        char = ex.int_vector(self.char)
        g = len(char)
        if len(gram) != g or any(len(row) != g for row in gram):
            raise DimensionMismatch(
                f"gram is {len(gram)}x{len(gram[0]) if gram else 0} but char has length {g}")
        if g == 0:
            raise DimensionMismatch("lattice rank must be positive")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "char", char)
        form_rank = ex.psd_certificate(gram)
        object.__setattr__(self, "_form_rank", form_rank)

    @property
    def rank(self):
        return len(self.char)

    @property
    def form_rank(self):
        return self._form_rank

    @property
    def is_definite(self):
        return self._form_rank == self.rank

    # -- evaluation ---------------------------------------------------------

    def check_dim(self, v, what="vector"):
        if len(v) != self.rank:
            raise DimensionMismatch(f"{what} has length {len(v)}, lattice rank is {self.rank}")

    def B(self, u, v):
        """The bilinear form B_a(u, v)."""
        return ex.bilinear(self.gram, ex.frac_vector(u), ex.frac_vector(v))

    def Q(self, w):
        """Q_a(w) = B_a(w, w)."""
        return self.B(w, w)

    def __call__(self, w):
        return eval_a(self, w)

    def B_covector(self, w):
        """The covector B_a(w, -)."""
        return Covector(ex.vec_mat(ex.frac_vector(w), self.gram))

    @cached_property
    def half_char_covector(self):
        """B_a(rho/2, -), the covector singled out by the characteristic."""
        return self.B_covector(self.char).scale(Fraction(1, 2))

    @cached_property
    def radical(self):
        return radical(self)

    def annihilates_radical(self, l):
        return all(ex.dot(l.coeffs, b) == 0 for b in self.radical.basis)

    def scaled(self, lam):
        lam = ex.to_fraction(lam)
        return QuadChar(tuple(tuple(lam * x for x in row) for row in self.gram), self.char)


def new_quadchar(gram, char):
    """Validated constructor; raises NotSymmetric / NotPositiveSemidefinite."""
    return QuadChar(gram, char)


def eval_a(q, w):
    """a(w) = (w^T B w - rho^T B w) / 2."""
    q.check_dim(w)
    return (q.Q(w) - q.B(q.char, w)) / 2


def radical(q):
    if q.is_definite:
        eye = tuple(tuple(int(i == j) for j in range(q.rank)) for i in range(q.rank))
        return RadicalData(basis=(), complement=eye)
    den = 1
    for row in q.gram:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    m = tuple(tuple(int(x * den) for x in row) for row in q.gram)
    _, u, pivots = ex.column_echelon(m)
    k = len(pivots)
    kernel = ex.columns(u, range(k, q.rank))
    compl = ex.columns(u, range(k))
    kernel = _tidy_basis(kernel)
    compl = [_reduce_mod(c, kernel) for c in compl]
    return RadicalData(basis=tuple(kernel), complement=tuple(compl))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _tidy_basis(vectors):
    # Column echelon form of the basis matrix (a unimodular change inside
    # the span), then make each leading entry positive.
    if not vectors:
        return []
    g = len(vectors[0])
    mat = tuple(tuple(v[i] for v in vectors) for i in range(g))
    h, _, pivots = ex.column_echelon(mat)
    return ex.columns(h, range(len(pivots)))


def _reduce_mod(c, basis):
    # Subtract integer multiples of basis vectors to shrink c at their pivots.
    c = list(c)
    for b in basis:
        p = next(i for i, x in enumerate(b) if x)
        q = c[p] // b[p]
        if q:
            c = [ci - q * bi for ci, bi in zip(c, b)]
    return tuple(c)


def dual_eval(q, l):
    """Q_a^*(l) = l(x) for any rational solution of B x = l."""
    l = as_covector(l)
    q.check_dim(l.coeffs, "covector")
    x = ex.solve(q.gram, l.coeffs)
    if x is None:
        raise RadicalViolation("covector does not vanish on the radical of the form")
    return ex.dot(l.coeffs, x)


def translate(q, l, w):
    """(a, l) -> (a, l + B_a(w, -))."""
    l = as_covector(l)
    q.check_dim(l.coeffs, "covector")
    q.check_dim(w)
    return l + q.B_covector(w)


def shift_char(q, newchar):
    """Move to an even-congruent characteristic, keeping the Gram matrix.

    As functions modulo constants this is [a] -> [x -> a(x - (rho' - rho)/2)];
    the result is normalised to vanish at 0.
    """
    newchar = ex.int_vector(newchar)
    q.check_dim(newchar, "characteristic")
    if any((a - b) % 2 for a, b in zip(newchar, q.char)):
        raise ParityMismatch("new characteristic differs from the old one by an odd vector")
    return QuadChar(q.gram, newchar)


def is_surjective(f):
    """Whether the integer matrix f (rows = target coordinates) maps Z^n onto Z^m."""
    h, _, pivots = ex.column_echelon(f)
    m = len(f)
    return len(pivots) == m and all(h[r][c] == 1 for r, c in pivots)


def integer_preimage(f, target):
    """Deterministic integer solution of f x = target for surjective f.

    The lexicographically smallest nonnegative solution is returned when one
    exists with entries bounded by max(|target|, 1); otherwise the solution
    read off the column echelon form.
    """
    m, n = len(f), len(f[0])
    bound = max([abs(t) for t in target] + [1])
    if n <= 6 and (bound + 1) ** n <= 200_000:
        for x in product(range(bound + 1), repeat=n):
            if all(sum(fi[j] * x[j] for j in range(n)) == t for fi, t in zip(f, target)):
                return tuple(x)
    h, u, pivots = ex.column_echelon(f)
    # h has unit lower-triangular leading block; forward substitution.
    y = [0] * n
    for (r, c) in pivots:
        acc = target[r] - sum(h[r][j] * y[j] for j in range(c))
        y[c] = acc // h[r][c]
    return tuple(sum(u[i][j] * y[j] for j in range(n)) for i in range(n))


def pullback(f, qp):
    """Pull a form on Z^{g'} back along a surjection f: Z^g -> Z^{g'}.

    ``f`` is a g' x g integer matrix. The Gram matrix becomes f^T B' f and the
    characteristic is a chosen integer preimage of rho'.
    """
    f = tuple(ex.int_vector(row) for row in f)
    if len(f) != qp.rank:
        raise DimensionMismatch(f"map has {len(f)} rows but target lattice has rank {qp.rank}")
    if not is_surjective(f):
        raise NotSurjective("map is not surjective onto the target lattice")
    ff = tuple(tuple(Fraction(x) for x in row) for row in f)
    gram = ex.mat_mul(ex.mat_mul(ex.transpose(ff), qp.gram), ff)
    char = integer_preimage(f, qp.char)
    return QuadChar(gram, char)


def pullback_covector(f, l):
    """l o f for a covector l on the target lattice."""
    l = as_covector(l)
    ff = tuple(tuple(Fraction(x) for x in row) for row in f)
    return Covector(ex.vec_mat(l.coeffs, ff))


def covector_in_image(q, t):
    """The covector B t for a rational vector t (always admissible)."""
    return Covector(ex.mat_vec(q.gram, ex.frac_vector(t)))
