"""Tropical theta functions with characteristic.

For a quadratic function ``a`` with characteristic ``rho`` and a covector
``l`` vanishing on the radical of ``B``:

    theta_pl(a, l)  = min_w (a(w) + l(w)) + Q(rho)/8
    theta_eq(a, l)  = -Q*(l)/2 + l(rho)/2
    theta_inv(a, l) = theta_pl - theta_eq

All values are exact rationals.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import _exact as ex
from .latmin import minimize_affine
from .quadform import (QuadChar, as_covector, dual_eval, eval_a, pullback,
                       pullback_covector, shift_char, translate)

KINDS = ("pl", "eq", "inv", "c")


@dataclass(frozen=True)
class ThetaValue:
    value: Fraction
    witnesses: tuple
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown theta kind {self.kind!r}")


def theta_pl(q, l):
    res = minimize_affine(q, l)
    return ThetaValue(res.value + q.Q(q.char) / 8, res.minimizers, "pl")


def theta_eq(q, l):
    l = as_covector(l)
    q.check_dim(l.coeffs, "covector")
    value = -dual_eval(q, l) / 2 + l(q.char) / 2
    return ThetaValue(value, (), "eq")


def theta_inv(q, l):
    pl = theta_pl(q, l)
    eq = theta_eq(q, l)
    return ThetaValue(pl.value - eq.value, pl.witnesses, "inv")


def theta_inv_direct(q, l):
    """min_w Q*(l + B(w - rho/2, -)) / 2, evaluated at its minimisers.

    Expanding the dual form gives Q*(l)/2 - l(rho)/2 plus
    l(w) + Q(w - rho/2)/2. The w-dependent part is minimised as an affine
    quadratic with characteristic 0, and the displayed expression is then
    evaluated directly at each minimiser.
    """
    l = as_covector(l)
    zero = QuadChar(q.gram, (0,) * q.rank)
    shifted = l - q.half_char_covector
    res = minimize_affine(zero, shifted)
    half_rho = tuple(Fraction(r, 2) for r in q.char)
    values = set()
    for w in res.minimizers:
        arg = l + ex.vec_mat(tuple(wi - hi for wi, hi in zip(w, half_rho)), q.gram)
        values.add(dual_eval(q, arg) / 2)
    assert len(values) == 1, "minimisers disagree on the direct formula"
    return ThetaValue(values.pop(), res.minimizers, "inv")


def conical_c(q, l, phi=theta_pl):
    """c(a, l) = phi(a, l) + Q*(l)/2 - l(rho)/2 for a polarisation evaluator phi."""
    l = as_covector(l)
    p = phi(q, l)
    value = p.value + dual_eval(q, l) / 2 - l(q.char) / 2
    return ThetaValue(value, p.witnesses, "c")


def cocycle_check_pl(q, l, v):
    """(theta_pl(l) - theta_pl(l + B v), a(v) + l(v)); the two should agree."""
    l = as_covector(l)
    lhs = theta_pl(q, l).value - theta_pl(q, translate(q, l, v)).value
    rhs = eval_a(q, v) + l(v)
    return lhs, rhs


def cocycle_check_c(q, l, w, phi=theta_pl):
    """(c(l + B w), c(l)); c is invariant under lattice translation."""
    return conical_c(q, translate(q, l, w), phi).value, conical_c(q, l, phi).value


# -- admissibility report ---------------------------------------------------

CHECKS = ("homogeneity", "concavity", "cocycle", "pullback", "shift")


@dataclass
class AdmissibilityReport:
    trials: int
    checked: dict = field(default_factory=lambda: {k: 0 for k in CHECKS})
    counterexamples: dict = field(default_factory=lambda: {k: [] for k in CHECKS})

    @property
    def ok(self):
        return not any(self.counterexamples.values())

    def record(self, check, passed, detail):
        self.checked[check] += 1
        if not passed:
            self.counterexamples[check].append(detail)


def verify_admissibility(sampler, trials, seed=0, phi=theta_pl):
    """Sampled checks that phi behaves as a principal polarisation function.

    ``sampler(rng, g=None)`` returns an admissible pair (q, l), of lattice
    rank g when one is requested. For each trial the report checks conical
    homogeneity, midpoint concavity, the cocycle condition, compatibility
    with pullback along a random surjection onto a rank 1 or 2 lattice, and
    compatibility with an even change of characteristic. Every comparison is
    an exact equality or inequality.
    """
    from .sampling import random_rational, random_surjection, random_vector

    rng = random.Random(seed)
    report = AdmissibilityReport(trials)
    for _ in range(trials):
        q, l = sampler(rng)
        l = as_covector(l)
        g = q.rank
        base = phi(q, l).value

        lam = abs(random_rational(rng, 6, 8))
        scaled = phi(q.scaled(lam), l.scale(lam)).value
        report.record("homogeneity", scaled == lam * base,
                      {"gram": q.gram, "char": q.char, "l": l.coeffs, "lambda": lam})

        q2, l2 = _sample_same_char(sampler, rng, q)
        mid_gram = tuple(tuple((x + y) / 2 for x, y in zip(r1, r2))
                         for r1, r2 in zip(q.gram, q2.gram))
        mid = phi(QuadChar(mid_gram, q.char), (l + l2).scale(Fraction(1, 2))).value
        report.record("concavity", 2 * mid >= base + phi(q2, l2).value,
                      {"p": (q.gram, l.coeffs), "q": (q2.gram, l2.coeffs), "char": q.char})

        v = random_vector(rng, g, 3)
        lhs = base - phi(q, translate(q, l, v)).value
        rhs = eval_a(q, v) + l(v)
        report.record("cocycle", lhs == rhs,
                      {"gram": q.gram, "char": q.char, "l": l.coeffs, "v": v})

        gp = rng.choice((1, 2))
        qp, lp = _sample_rank(sampler, rng, gp)
        f = random_surjection(rng, gp, gp + rng.randint(0, 2))
        pulled = phi(pullback(f, qp), pullback_covector(f, lp)).value
        report.record("pullback", pulled == phi(qp, lp).value,
                      {"f": f, "gram": qp.gram, "char": qp.char, "l": lp.coeffs})

        u = random_vector(rng, g, 2)
        moved = shift_char(q, tuple(r + 2 * ui for r, ui in zip(q.char, u)))
        # With rho' = rho + 2u the minimum moves by exactly l(u).
        ok = phi(moved, l).value == base + l(u)
        if phi is theta_pl:
            ok = ok and theta_inv(moved, l).value == theta_inv(q, l).value
        report.record("shift", ok, {"gram": q.gram, "char": q.char, "l": l.coeffs, "u": u})
    return report


def _sample_same_char(sampler, rng, q):
    q2, l2 = sampler(rng, q.rank)
    return QuadChar(q2.gram, q.char), as_covector(l2)


def _sample_rank(sampler, rng, g):
    q, l = sampler(rng, g)
    return q, as_covector(l)
