"""Independent Neron-Tate oracle and height worksheets for elliptic curves over Q.

The oracle knows nothing about tropical or theta-function heights: it
doubles a point with exact integer x-only arithmetic and reads off

    h_hat(P) = lim_n h_x(2^n P) / (2 * 4^n),

the canonical height of the divisor (O) (half the usual x-height limit).

The worksheet side computes the local data the height formula consumes:
intersection numbers with (O) on the minimal Weierstrass model, the
component of the Neron special fibre at the split multiplicative prime, the
period ratio tau and the normalised elliptic logarithm. Periods use Carlson
integrals and are checked against the Eisenstein series of the lattice; each
elliptic logarithm is checked by evaluating the Weierstrass p-function
through its q-expansion.

Run as a script to print the comparison for the built-in curves.
"""
import argparse
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath as mp

mp.mp.dps = 40
LOG2 = math.log(2)


@dataclass(frozen=True)
class Curve:
    label: str
    ainvs: tuple
    bad_prime: int
    points: tuple

    @property
    def b(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4c6(self):
        b2, b4, b6, _ = self.b
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def on_curve(self, p):
        a1, a2, a3, a4, a6 = self.ainvs
        x, y = p
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6


# Split multiplicative reduction at exactly one prime in both cases:
# 11a1 has type I5 at 11 and torsion Z/5; 389a1 has type I1 at 389 and rank 2.
CURVES = {
    "11a1": Curve("11a1", (0, -1, 1, -10, -20), 11,
                  ((5, 5), (5, -6), (16, 60), (16, -61))),
    "389a1": Curve("389a1", (0, 1, 1, -2, 0), 389,
                   ((0, 0), (-1, 1), (1, 0), (-2, 0), (3, 5), (4, -9),
                    # 3P, 2Q and P + 2Q for P = (0, 0), Q = (-1, 1): good primes 2 and 3 enter.
                    (Fraction(-11, 9), Fraction(28, 27)), (Fraction(10, 9), Fraction(-35, 27)),
                    (Fraction(-3, 4), Fraction(-15, 8)))),
}


def add_points(curve, p, q):
    """Chord-and-tangent addition on a general Weierstrass model (None is O)."""
    a1, a2, a3, a4, a6 = curve.ainvs
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = (Fraction(c) for c in p)
    x2, y2 = (Fraction(c) for c in q)
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    return x3, -(lam + a1) * x3 - nu - a3


def vp(n, p):
    n = Fraction(n)
    if n == 0:
        return math.inf
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def prime_factors(n):
    n, out, d = abs(n), [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return sorted(set(out))


# -- oracle -------------------------------------------------------------------

def _log_abs(m):
    m = abs(m)
    shift = max(int(m.bit_length()) - 64, 0)
    return math.log(int(m >> shift)) + shift * LOG2


def naive_height_sequence(curve, x, steps):
    """h_x(2^k P) for k = 0..steps, by exact x-only doubling."""
    b2, b4, b6, b8 = (gmpy2.mpz(v) for v in curve.b)
    x = Fraction(x)
    X, Z = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
    out = [_log_abs(max(abs(X), abs(Z)))]
    for _ in range(steps):
        X2, Z2 = X * X, Z * Z
        num = X2 * X2 - b4 * X2 * Z2 - 2 * b6 * X * Z2 * Z - b8 * Z2 * Z2
        den = Z * (4 * X2 * X + b2 * X2 * Z + 2 * b4 * X * Z2 + b6 * Z2 * Z)
        if den == 0:
            return out + [0.0] * (steps + 1 - len(out))   # reached the origin: torsion
        g = gmpy2.gcd(num, den)
        X, Z = num // g, den // g
        if Z < 0:
            X, Z = -X, -Z
        out.append(_log_abs(max(abs(X), abs(Z))))
    return out


def oracle_height(curve, point, steps=10):
    """h_hat for the divisor (O) and a crude error estimate."""
    seq = naive_height_sequence(curve, point[0], steps)
    est = [h / (2 * 4 ** k) for k, h in enumerate(seq)]
    return est[-1], abs(est[-1] - est[-2])


# -- periods and elliptic logarithms -------------------------------------------

def _cubic(curve):
    b2, b4, b6, _ = curve.b
    return [mp.mpf(1), mp.mpf(b2) / 4, mp.mpf(b4) / 2, mp.mpf(b6) / 4]


def period_data(curve):
    """(omega1, tau, roots) for the differential dx / (2y + a1 x + a3).

    Roots of (2y + a1 x + a3)^2 / 4 = x^3 + ... are e1 > e2 > e3 when real;
    otherwise e1 is the real root. tau has positive imaginary part.
    """
    roots = mp.polyroots(_cubic(curve), maxsteps=200, extraprec=200)
    real = sorted((r.real for r in roots if abs(mp.im(r)) < mp.mpf(10) ** -30), reverse=True)
    if len(real) == 3:
        e1, e2, e3 = real
        w1 = 2 * mp.elliprf(0, e1 - e2, e1 - e3)
        w2 = 2j * mp.elliprf(0, e1 - e3, e2 - e3)
    else:
        e1 = real[0]
        e2 = next(r for r in roots if mp.im(r) > 0)
        e3 = mp.conj(e2)
        w1 = 2 * mp.elliprf(0, e1 - e2, e1 - e3)
        w2 = w1 / 2 + 1j * mp.re(mp.elliprf(0, e2 - e1, e3 - e1))
    return w1, w2 / w1, (e1, e2, e3)


def lattice_invariants(w1, tau):
    q = mp.exp(2j * mp.pi * tau)
    e4 = 1 + 240 * mp.nsum(lambda n: n ** 3 * q ** n / (1 - q ** n), [1, mp.inf])
    e6 = 1 - 504 * mp.nsum(lambda n: n ** 5 * q ** n / (1 - q ** n), [1, mp.inf])
    return 4 * mp.pi ** 4 / 3 * e4 / w1 ** 4, 8 * mp.pi ** 6 / 27 * e6 / w1 ** 6


def weierstrass_p(u, tau):
    """p(u) for the lattice Z + tau Z, from the q-expansion."""
    q = mp.exp(2j * mp.pi * tau)
    w = mp.exp(2j * mp.pi * u)
    s = mp.mpf(1) / 12 + w / (1 - w) ** 2
    s += mp.nsum(lambda n: q ** n * w / (1 - q ** n * w) ** 2 + q ** n / w / (1 - q ** n / w) ** 2
                 - 2 * q ** n / (1 - q ** n) ** 2, [1, mp.inf])
    return (2j * mp.pi) ** 2 * s


def elliptic_log(curve, point, periods=None):
    """Normalised elliptic logarithm u with P = image of u in C / (Z + tau Z)."""
    w1, tau, (e1, e2, e3) = periods or period_data(curve)
    x = mp.mpf(Fraction(point[0]).numerator) / Fraction(point[0]).denominator
    if x >= mp.re(e1):
        t = mp.re(mp.elliprf(x - e1, x - e2, x - e3))
        u = t / w1
    else:
        # Bounded real component between e3 and e2 (rectangular lattice).
        s = mp.quad(lambda v: 1 / mp.sqrt((e1 - e3 - v * v) * (e2 - e3 - v * v)), [0, mp.sqrt(x - e3)])
        u = tau / 2 + s / w1
    b2 = curve.b[0]
    got = weierstrass_p(u, tau) / w1 ** 2 - mp.mpf(b2) / 12
    if abs(got - x) > mp.mpf(10) ** -25 * (1 + abs(x)):
        raise ArithmeticError(f"elliptic logarithm check failed for {point}: p(u) = {got}")
    return u


def check_periods(curve):
    w1, tau, _ = period_data(curve)
    g2, g3 = lattice_invariants(w1, tau)
    c4, c6 = curve.c4c6
    return abs(g2 - mp.mpf(c4) / 12), abs(g3 - mp.mpf(c6) / 216)


# -- local data and worksheets -------------------------------------------------

def component_index(curve, point):
    """Silverman's index alpha of the component of the special fibre (0 = identity)."""
    a1, a2, a3, a4, _ = curve.ainvs
    p, n = curve.bad_prime, vp(curve.discriminant, curve.bad_prime)
    x, y = (Fraction(c) for c in point)
    if vp(x, p) < 0:
        return 0
    if vp(3 * x * x + 2 * a2 * x + a4 - a1 * y, p) > 0 and vp(2 * y + a1 * x + a3, p) > 0:
        return min(vp(2 * y + a1 * x + a3, p), Fraction(n, 2))
    return 0


def intersection_with_origin(point, p):
    v = vp(point[0], p)
    return -v // 2 if v < 0 else 0


def worksheet(curve, point, epsilon=1e-12):
    """Height worksheet (JSON-ready dict) for L = O((O)) with faltings = 0."""
    p = curve.bad_prime
    n = vp(curve.discriminant, p)
    w1, tau, roots = periods = period_data(curve)
    u = elliptic_log(curve, point, periods)
    alpha = component_index(curve, point)
    places = [{"label": f"p{p}", "log_nv": math.log(p), "pairing": [[n]],
               "val_point": [str(Fraction(alpha))], "trop_char": [1],
               "intersection": int(intersection_with_origin(point, p)) if alpha == 0 else 0}]
    for ell in prime_factors(Fraction(point[0]).denominator):
        if ell != p:
            places.append({"label": f"p{ell}", "log_nv": math.log(ell), "pairing": [],
                           "val_point": [], "trop_char": [],
                           "intersection": int(intersection_with_origin(point, ell))})
    tau_c = complex(tau)
    kappa = (1 + tau_c) / 2
    return {"genus": 1, "degree": 1, "faltings": 0.0, "places": places,
            "embeddings": [{"label": "sigma", "tau": [[{"re": tau_c.real, "im": tau_c.imag}]],
                            "z": [{"re": float(mp.re(u)), "im": float(mp.im(u))}],
                            "kappa": [{"re": kappa.real, "im": kappa.imag}], "epsilon": epsilon}]}


def main():
    from troparith.codec import parse_worksheet
    from troparith.heights import assemble_height

    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=10)
    args = ap.parse_args()
    for curve in CURVES.values():
        d2, d3 = check_periods(curve)
        print(f"{curve.label}: discriminant {curve.discriminant}, period check {mp.nstr(d2, 3)} {mp.nstr(d3, 3)}")
        for pt in curve.points:
            assert curve.on_curve(tuple(Fraction(c) for c in pt))
            h, err = oracle_height(curve, pt, args.steps)
            res = assemble_height(parse_worksheet(worksheet(curve, pt)))
            print(f"  P=({pt[0]}, {pt[1]}): oracle {h:.10f} (+-{err:.1e})  formula {res.height:.10f}  "
                  f"formula-oracle {res.height - h:+.10f}")


if __name__ == "__main__":
    main()
