"""Random exact inputs for property checks and experiments.

Everything takes a ``random.Random`` so runs are reproducible from a seed.
"""
import math
from fractions import Fraction

import numpy as np

from . import _exact as ex
from .archtheta import SiegelPoint, norm_theta
from .errors import NotPositiveSemidefinite
from .heights import ArchPlace, HeightWorksheet, NonArchPlace
from .quadform import Covector, QuadChar, is_surjective


def random_rational(rng, num_bound, max_den):
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, max_den))


def random_vector(rng, g, bound):
    return tuple(rng.randint(-bound, bound) for _ in range(g))


def random_psd_gram(rng, g, bound=6, semidefinite=False, definite=False):
    """Symmetric integer matrix with entries in [-bound, bound], PSD.

    Plain rejection sampling; with ``semidefinite`` the matrix is built as
    M^T M from a short integer M (then filtered to the entry range), so its
    rank is below g.
    """
    while True:
        if semidefinite and g > 1:
            k = rng.randint(0, g - 1)
            m = [[rng.randint(-2, 2) for _ in range(g)] for _ in range(k)]
            gram = [[sum(m[r][i] * m[r][j] for r in range(k)) for j in range(g)]
                    for i in range(g)]
            if any(abs(x) > bound for row in gram for x in row):
                continue
        else:
            gram = [[0] * g for _ in range(g)]
            for i in range(g):
                gram[i][i] = rng.randint(0, bound)
                for j in range(i + 1, g):
                    gram[i][j] = gram[j][i] = rng.randint(-bound, bound)
        try:
            rank = ex.psd_certificate(ex.frac_matrix(gram))
        except NotPositiveSemidefinite:
            continue
        if definite and rank < g:
            continue
        return tuple(map(tuple, gram))


def random_admissible_covector(rng, q, max_den=12, num_bound=24):
    """A rational covector vanishing on the radical, denominators <= max_den."""
    if q.is_definite:
        return Covector(tuple(random_rational(rng, num_bound, max_den) for _ in range(q.rank)))
    # l = B s with a common denominator keeps the denominators bounded.
    d = rng.randint(1, max_den)
    s = tuple(Fraction(rng.randint(-num_bound, num_bound), d) for _ in range(q.rank))
    return Covector(ex.mat_vec(q.gram, s))


def random_quadchar(rng, g, bound=6, definite=False, semidefinite_rate=0.15):
    semi = not definite and g > 1 and rng.random() < semidefinite_rate
    gram = random_psd_gram(rng, g, bound, semidefinite=semi, definite=definite)
    char = tuple(rng.randint(0, 1) for _ in range(g))
    return QuadChar(gram, char)


def random_pair(rng, g=None, gmax=3, definite=False, max_den=12):
    """An admissible (q, l) with g in 1..gmax unless g is given."""
    g = g or rng.randint(1, gmax)
    q = random_quadchar(rng, g, definite=definite)
    return q, random_admissible_covector(rng, q, max_den)


def random_surjection(rng, gp, g, bound=2):
    """Integer gp x g matrix mapping Z^g onto Z^gp."""
    while True:
        f = tuple(tuple(rng.randint(-bound, bound) for _ in range(g)) for _ in range(gp))
        if is_surjective(f):
            return f


def random_siegel_point(rng, g, precision=1e-10):
    """tau = X + iY with |X| <= 1/2 and Y = M M^T + diag(d), d in [0.6, 1.6]."""
    x = np.array([[rng.uniform(-0.5, 0.5) for _ in range(g)] for _ in range(g)])
    m = np.array([[rng.uniform(-0.5, 0.5) for _ in range(g)] for _ in range(g)])
    y = m @ m.T + np.diag([rng.uniform(0.6, 1.6) for _ in range(g)])
    return SiegelPoint((x + x.T) / 2 + 1j * y, precision)


def random_worksheet(rng, gmax=2, max_degree=2, precision=1e-10):
    """A well-formed height worksheet with random local data.

    Archimedean points are redrawn while |theta| is too small to take a
    certified logarithm, so every sample can be assembled.
    """
    g = rng.randint(1, gmax)
    degree = rng.randint(1, max_degree)
    places = []
    for k in range(rng.randint(0, 3)):
        r = rng.randint(0, g)
        gram = random_psd_gram(rng, r, bound=4, definite=True) if r else ()
        val = tuple(random_rational(rng, 20, 7) for _ in range(r))
        if r and rng.random() < 0.3:
            val = tuple(float(x) for x in val)
        places.append(NonArchPlace(f"p{k}", math.log(rng.choice((2, 3, 5, 7, 11))), gram, val,
                                   tuple(rng.randint(0, 1) for _ in range(r)),
                                   rng.randint(0, 3)))
    embeddings = []
    for k in range(degree):
        s = random_siegel_point(rng, g, precision)
        while True:
            m = np.array([rng.randint(0, 1) for _ in range(g)])
            n = np.array([rng.randint(0, 1) for _ in range(g)])
            kappa = (m + s.tau @ n) / 2
            z = np.array([complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(g)])
            if norm_theta(z + kappa, s).value > 1e-3:
                break
        embeddings.append(ArchPlace(f"s{k}", s, z, kappa))
    faltings = rng.uniform(-2, 2)
    return HeightWorksheet(g, degree, faltings, places, embeddings)
