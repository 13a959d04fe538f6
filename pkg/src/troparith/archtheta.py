"""Certified evaluation of the Riemann theta function.

With tau = X + iY and z = x + iy, write c = -Y^{-1} y. Then

    theta(z, tau) = exp(pi y^T Y^{-1} y) * S,
    S = sum_n exp(-pi (n - c)^T Y (n - c)) * exp(i (pi n^T X n + 2 pi n^T x)).

The scaled sum S has terms of size at most 1 and |S| is periodic, so all
numerical work happens on S. The sum is truncated to the ellipsoid
(n - c)^T Y (n - c) <= R^2, and for any 0 < d < 1 the omitted terms add up
to at most

    exp(-pi (1 - d) R^2) * (1 + 1/sqrt(d * lam))^g,

where lam is a certified lower bound for the smallest eigenvalue of Y
(compare the sum of exp(-pi d lam |n - c|^2) with a Gaussian integral in
each coordinate). Rounding errors of every term are bounded and added.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (DimensionMismatch, NotPositiveDefinite, NotSymmetric,
                     PrecisionUnreachable)

DEFAULT_EPSILON = 1e-10
MAX_TERMS = 4_000_000
TAIL_FLOOR = 1e-18
UNIT = 2.0 ** -53
# pi - float(pi)
PI_LO = 1.2246467991473532e-16
_DELTAS = np.linspace(0.02, 0.98, 49)


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A point tau of the Siegel upper half space with a target precision."""

    tau: np.ndarray
    precision: float = DEFAULT_EPSILON

    def __post_init__(self):
        tau = np.atleast_2d(np.asarray(self.tau, dtype=complex))
        g = tau.shape[0]
        if tau.shape != (g, g):
            raise DimensionMismatch(f"tau must be square, got shape {tau.shape}")
        scale = max(1.0, float(np.abs(tau).max()))
        if np.abs(tau - tau.T).max() > 1e-12 * scale:
            raise NotSymmetric("tau is not symmetric")
        if not self.precision > 0:
            raise ValueError("precision must be positive")
        y = tau.imag
        lam = _certified_min_eig(y)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "lam", lam)

    @property
    def genus(self):
        return self.tau.shape[0]


def _certified_min_eig(y):
    if not np.all(np.isfinite(y)):
        raise NotPositiveDefinite("Im tau has non-finite entries")
    ev = float(np.linalg.eigvalsh(y).min())
    lam = ev * (1 - 1e-8) - 1e-14 * float(np.abs(y).max())
    if lam <= 0:
        raise NotPositiveDefinite(f"Im tau is not positive definite (smallest eigenvalue {ev:.3g})")
    try:
        np.linalg.cholesky(y - lam * np.eye(len(y)))
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("Im tau failed the Cholesky check") from None
    return lam


@dataclass(frozen=True)
class ThetaEval:
    value: complex
    error_bound: float
    terms_used: int


@dataclass(frozen=True)
class ScaledTheta:
    """theta = exp(L) * scaled with L = pi y^T Y^{-1} y.

    ``error_bound`` bounds |scaled - exact|; ``log_scale + log_scale_low``
    approximates L to within ``log_scale_error``.
    """

    scaled: complex
    log_scale: float
    log_scale_error: float
    error_bound: float
    terms_used: int
    log_scale_low: float = 0.0


def tail_bound(radius_sq, lam, g):
    """Smallest certified bound on the omitted terms over the d grid."""
    vals = np.exp(-math.pi * (1 - _DELTAS) * radius_sq) * (1 + 1 / np.sqrt(_DELTAS * lam)) ** g
    return float(vals.min())


def radius_for(target, lam, g):
    """R^2 making the tail bound at most target."""
    r2 = (g * np.log1p(1 / np.sqrt(_DELTAS * lam)) - math.log(target)) / (math.pi * (1 - _DELTAS))
    return max(float(r2.min()), 0.0)


def _ellipsoid_points(y, c, radius_sq):
    """All n in Z^g with (n - c)^T Y (n - c) <= radius_sq (with a safety margin)."""
    g = len(c)
    r2 = radius_sq * (1 + 1e-9) + 1e-9
    # Y = U^T U with U upper triangular; peel coordinates from the last one.
    u = np.linalg.cholesky(y).T
    est = (math.pi * r2) ** (g / 2) / math.gamma(g / 2 + 1) / math.sqrt(np.linalg.det(y))
    box = float(np.prod([2 * math.sqrt(r2 * inv) + 1 for inv in np.diag(np.linalg.inv(y))]))
    if min(est * 2 + 10, box) > MAX_TERMS:
        raise PrecisionUnreachable(f"about {est:.3g} terms needed, cap is {MAX_TERMS}")
    out = []
    n = np.zeros(g)

    def rec(i, used):
        # Coordinate i contributes (u_ii (n_i - c_i) + sum_{j>i} u_ij (n_j - c_j))^2.
        shift = sum(u[i, j] * (n[j] - c[j]) for j in range(i + 1, g))
        centre = c[i] - shift / u[i, i]
        half = math.sqrt(max(r2 - used, 0.0)) / u[i, i]
        lo, hi = math.ceil(centre - half), math.floor(centre + half)
        if i == 0:
            if lo <= hi:
                block = np.zeros((hi - lo + 1, g))
                block[:, 1:] = n[1:]
                block[:, 0] = np.arange(lo, hi + 1)
                out.append(block)
            return
        for t in range(lo, hi + 1):
            n[i] = t
            rec(i - 1, used + (u[i, i] * (t - centre)) ** 2)
        n[i] = 0

    rec(g - 1, 0.0)
    pts = np.concatenate(out) if out else np.zeros((0, g))
    if len(pts) > MAX_TERMS:
        raise PrecisionUnreachable(f"{len(pts)} terms needed, cap is {MAX_TERMS}")
    return pts


def _as_vector(z, g):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape != (g,):
        raise DimensionMismatch(f"z has shape {z.shape}, genus is {g}")
    return z


def theta_scaled(z, s, target=None):
    """The scaled sum S with its certified absolute error.

    ``target`` is the absolute error allowed on S itself; it defaults to
    the SiegelPoint precision.
    """
    g = s.genus
    z = _as_vector(z, g)
    tau = s.tau
    x, y = z.real, z.imag
    X, Y = tau.real, tau.imag
    target = s.precision if target is None else target
    c = -np.linalg.solve(Y, y)
    # c is only approximately -Y^{-1} y; the residual r = y + Y c carries the
    # difference. With d = n - c the exponent of term n relative to L is
    #   -pi d^T Y d - 2 pi d^T r - pi r^T Y^{-1} r,
    # and the last part is below pi |r|^2 / lam (negligible, but bounded).
    # r and q = c^T Y c - 2 c.r are formed exactly from the float data, so
    # L = pi q up to that last part.
    cf = [Fraction(v) for v in c]
    Yf = [[Fraction(v) for v in row] for row in Y]
    Ycf = [sum(a * b for a, b in zip(row, cf)) for row in Yf]
    rf = [Fraction(v) + w for v, w in zip(y, Ycf)]
    q = sum(a * b for a, b in zip(cf, Ycf)) - 2 * sum(a * b for a, b in zip(cf, rf))
    resid = np.array([float(v) for v in rf])
    absY = np.abs(Y)
    resid_err = UNIT * np.abs(resid)
    second = math.pi * float(np.sum((np.abs(resid) + resid_err) ** 2)) / s.lam
    # pi = PI_HI + PI_LO; L = hi + lo with hi a double and lo its correction
    prod = Fraction(math.pi) * q
    log_scale = float(prod)
    log_scale_low = float(prod - Fraction(log_scale)) + PI_LO * float(q)
    log_scale_err = UNIT * (abs(log_scale_low) + UNIT * abs(log_scale)) + second
    # Terms of S are at most 1 in size, so pushing the tail below 1e-18 costs
    # only a few extra terms and leaves rounding as the only error.
    radius_sq = radius_for(min(target / 2, TAIL_FLOOR), s.lam, g)
    pts = _ellipsoid_points(Y, c, radius_sq)
    tail = tail_bound(radius_sq, s.lam, g)

    d = pts - c
    quad = np.einsum("ki,ij,kj->k", d, Y, d)
    expo = -math.pi * quad - 2 * math.pi * (d @ resid)
    phase = math.pi * np.einsum("ki,ij,kj->k", pts, X, pts) + 2 * math.pi * (pts @ x)
    mag = np.exp(expo)
    order = np.argsort(mag, kind="stable")
    mag, phase = mag[order], phase[order]
    re = math.fsum(mag * np.cos(phase))
    im = math.fsum(mag * np.sin(phase))
    # Absolute error of each computed exponent: the quadratic form, the
    # rounding of d = n - c, the residual term, and the neglected part.
    absd = np.abs(d)
    abs_quad = np.einsum("ki,ij,kj->k", absd, absY, absd)
    # (fl(n - c) is off by at most u |d|, which costs 2 pi u |d|^T |Y| |d|.)
    expo_err = (UNIT * ((g + 5) * math.pi * abs_quad
                        + 2 * math.pi * (absd @ (np.abs(resid) * (g + 2) + resid_err / UNIT)) + 2)
                + second)[order]
    phase_err = 8 * UNIT * (np.abs(phase) + 1)
    rounding = float(np.sum(mag * (2 * expo_err + phase_err + 8 * UNIT)))
    rounding += 2 * UNIT * math.hypot(re, im)
    return ScaledTheta(complex(re, im), log_scale, log_scale_err, tail + rounding, len(pts),
                       log_scale_low)


def theta(z, s):
    """theta(z, tau) with absolute error at most s.precision."""
    g = s.genus
    z = _as_vector(z, g)
    c = -np.linalg.solve(s.tau.imag, z.imag)
    approx = float(-math.pi * (c @ z.imag))
    if approx > 700:
        raise PrecisionUnreachable("theta value overflows double precision")
    res = theta_scaled(z, s, target=s.precision / math.exp(approx) / 2)
    factor = math.exp(res.log_scale) * (1 + math.expm1(res.log_scale_low))
    value = factor * res.scaled
    # exp of a value off by e is off by a relative expm1(e); exp itself, the
    # correction and the final product each add a few rounding units
    rel = math.expm1(res.log_scale_error) + 8 * UNIT
    err = factor * res.error_bound * (1 + rel) + abs(value) * rel
    if not err <= s.precision:
        raise PrecisionUnreachable(f"error bound {err:.3g} exceeds requested {s.precision:.3g}")
    return ThetaEval(value, err, res.terms_used)


def norm_theta(z, s):
    """(det Im tau)^{1/4} exp(-pi y^T (Im tau)^{-1} y) |theta(z, tau)|.

    Equal to (det Im tau)^{1/4} |S|; the error bound is on this value.
    """
    root = float(np.linalg.det(s.tau.imag)) ** 0.25
    res = theta_scaled(z, s, target=s.precision / root)
    value = root * abs(res.scaled)
    err = root * res.error_bound + 4 * UNIT * value
    if not err <= s.precision:
        raise PrecisionUnreachable(f"error bound {err:.3g} exceeds requested {s.precision:.3g}")
    return ThetaEval(value, err, res.terms_used)
