"""Neron-Tate heights assembled from local data.

    h(x) = -h_F/2 + (1/d) * (sum_v (i_v + theta_inv_0(val_v + kappa_v)) log Nv
                              - sum_sigma log((2 pi)^{g/2} ||theta||(z_sigma + kappa_sigma, tau_sigma)))

Non-archimedean data live in skeleton coordinates: a point of the real
torus Hom(X, R)/Y is a covector l = B t, Y acts by l -> l + B u, and the
characteristic kappa_v is the covector B rho_v / 2. The tropical term is
evaluated exactly with the invariant tropical theta function of
characteristic 0.
"""
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import _exact as ex
from .archtheta import SiegelPoint, norm_theta
from .errors import (EmptyWorksheet, InvalidWorksheet, NotPositiveDefinite,
                     NotPositiveSemidefinite, OnThetaDivisor)
from .quadform import Covector, QuadChar
from .troptheta import theta_inv

GRANULARITY = 10 ** 12
UNIT = 2.0 ** -53


def to_skeleton_rational(x):
    """Exact rationals pass through; floats are rounded to a 1e-12 grid.

    Returns the rational and the rounding error bound.
    """
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidWorksheet(f"non-finite valuation coordinate {x}")
        return Fraction(round(x * GRANULARITY), GRANULARITY), 0.5 / GRANULARITY + UNIT * abs(x)
    return ex.to_fraction(x), 0.0


@dataclass(frozen=True)
class NonArchPlace:
    label: str
    log_nv: float
    pairing: tuple = ()
    val_point: tuple = ()
    trop_char: tuple = ()
    intersection: int = 0

    def __post_init__(self):
        r = len(self.pairing)
        if len(self.val_point) != r or len(self.trop_char) != r:
            raise InvalidWorksheet(f"place {self.label}: pairing, val_point and trop_char sizes differ")
        if not self.log_nv > 0:
            raise InvalidWorksheet(f"place {self.label}: log Nv must be positive")
        if self.intersection < 0 or int(self.intersection) != self.intersection:
            raise InvalidWorksheet(f"place {self.label}: intersection must be a nonnegative integer")
        if r:
            pairing = tuple(ex.int_vector(row) for row in self.pairing)
            object.__setattr__(self, "pairing", pairing)
            try:
                q = QuadChar(pairing, (0,) * r)
            except NotPositiveSemidefinite as err:
                raise NotPositiveDefinite(f"place {self.label}: pairing is not positive definite") from err
            if not q.is_definite:
                raise NotPositiveDefinite(f"place {self.label}: pairing is degenerate")
        object.__setattr__(self, "trop_char", ex.int_vector(self.trop_char))

    @property
    def rank(self):
        return len(self.pairing)


@dataclass(frozen=True, eq=False)
class ArchPlace:
    label: str
    tau: SiegelPoint
    z: tuple
    kappa: tuple

    def __post_init__(self):
        g = self.tau.genus
        z = np.atleast_1d(np.asarray(self.z, dtype=complex))
        kappa = np.atleast_1d(np.asarray(self.kappa, dtype=complex))
        if z.shape != (g,) or kappa.shape != (g,):
            raise InvalidWorksheet(f"embedding {self.label}: z and kappa must have length {g}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "kappa", kappa)
        if not is_two_torsion(kappa, self.tau.tau):
            raise InvalidWorksheet(f"embedding {self.label}: 2 kappa is not in Z^g + tau Z^g")


def is_two_torsion(kappa, tau, tol=1e-8):
    two = 2 * np.asarray(kappa, dtype=complex)
    n = np.linalg.solve(tau.imag, two.imag)
    m = two.real - tau.real @ n
    return bool(np.all(np.abs(n - np.round(n)) <= tol) and np.all(np.abs(m - np.round(m)) <= tol))


@dataclass(frozen=True, eq=False)
class HeightWorksheet:
    genus: int
    degree: int
    faltings: float = None
    places: tuple = ()
    embeddings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "embeddings", tuple(self.embeddings))
        if not self.places and not self.embeddings and self.faltings is None:
            raise EmptyWorksheet("worksheet has no places, no embeddings and no Faltings height")
        if self.degree < 1:
            raise InvalidWorksheet("degree must be positive")
        if self.embeddings and len(self.embeddings) != self.degree:
            raise InvalidWorksheet(
                f"{len(self.embeddings)} embeddings listed for a degree {self.degree} field")
        labels = [p.label for p in self.places] + [e.label for e in self.embeddings]
        if len(set(labels)) != len(labels):
            raise InvalidWorksheet("labels must be unique")
        for p in self.places:
            if p.rank > self.genus:
                raise InvalidWorksheet(f"place {p.label} has toric rank {p.rank} > genus {self.genus}")
        for e in self.embeddings:
            if e.tau.genus != self.genus:
                raise InvalidWorksheet(f"embedding {e.label} has genus {e.tau.genus}")


@dataclass(frozen=True)
class LocalTerm:
    value: float
    error_bound: float
    exact_theta: Fraction = None


@dataclass(frozen=True)
class HeightResult:
    height: float
    error_bound: float
    terms: dict
    metadata: dict = field(default_factory=dict)


def nonarch_term(p):
    if p.rank == 0:
        value = p.intersection * p.log_nv
        return LocalTerm(value, UNIT * abs(value), Fraction(0))
    coords, errs = zip(*(to_skeleton_rational(x) for x in p.val_point))
    q = QuadChar(p.pairing, (0,) * p.rank)
    kappa = ex.mat_vec(q.gram, tuple(Fraction(r, 2) for r in p.trop_char))
    l = Covector(tuple(c + k for c, k in zip(coords, kappa)))
    th = theta_inv(q, l)
    err = 0.0
    if any(errs):
        # theta_inv is piecewise quadratic with gradient B^{-1} l' at the
        # active piece, so a perturbation of size e moves it by at most
        # |grad|_1 * e + (e^2 / 2) * |B^{-1}|.
        w = th.witnesses[0]
        arg = l + q.B_covector(w)
        grad = ex.solve(q.gram, arg.coeffs)
        e = max(errs)
        inv_norm = float(max(abs(x) for row in ex.inverse(q.gram) for x in row)) * p.rank
        err = (float(sum(abs(x) for x in grad)) + 1) * e + e * e * inv_norm
    value = (p.intersection + float(th.value)) * p.log_nv
    return LocalTerm(value, err * p.log_nv + 4 * UNIT * abs(value), th.value)


def arch_term(e):
    nt = norm_theta(e.z + e.kappa, e.tau)
    if nt.value <= nt.error_bound:
        raise OnThetaDivisor(
            f"embedding {e.label}: |theta| = {nt.value:.3g} is within its error bound {nt.error_bound:.3g}")
    g = e.tau.genus
    value = -(g / 2) * math.log(2 * math.pi) - math.log(nt.value)
    err = -math.log1p(-nt.error_bound / nt.value) + 4 * UNIT * (abs(value) + 1)
    return LocalTerm(value, err)


def local_nonarch_term(p):
    return nonarch_term(p).value


def local_arch_term(e):
    return arch_term(e).value


def assemble_height(ws):
    terms = {}
    for p in ws.places:
        terms[p.label] = nonarch_term(p)
    for e in ws.embeddings:
        terms[e.label] = arch_term(e)
    faltings = 0.0 if ws.faltings is None else float(ws.faltings)
    local = math.fsum(terms[k].value for k in sorted(terms))
    local_err = sum(terms[k].error_bound for k in sorted(terms))
    height = -faltings / 2 + local / ws.degree
    err = local_err / ws.degree + 4 * UNIT * (abs(faltings) + abs(local) + abs(height))
    meta = {"val_point_granularity": f"1e-{len(str(GRANULARITY)) - 1}",
            "faltings_supplied": ws.faltings is not None}
    return HeightResult(height, err, {k: terms[k] for k in sorted(terms)}, meta)


def negate_worksheet(ws):
    places = tuple(replace(p, val_point=tuple(-ex.to_fraction(x) if not isinstance(x, float) else -x
                                              for x in p.val_point))
                   for p in ws.places)
    embeddings = tuple(ArchPlace(e.label, e.tau, -e.z, e.kappa) for e in ws.embeddings)
    return HeightWorksheet(ws.genus, ws.degree, ws.faltings, places, embeddings)
