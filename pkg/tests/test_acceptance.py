"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``; the lines are also
repeated in the terminal summary of any run that includes this file.
"""
import cmath
import math
import random
import time
from contextlib import contextmanager
from itertools import combinations

import numpy as np

from troparith.archtheta import SiegelPoint, norm_theta, theta
from troparith.delvor import delaunay_classes, delaunay_complex, mdv_by_inequalities, mdv_by_minimizers
from troparith.heights import assemble_height, negate_worksheet
from troparith.latmin import minimize_affine
from troparith.quadform import QuadChar, shift_char, translate
from troparith.sampling import (random_pair, random_psd_gram, random_siegel_point, random_vector,
                                random_worksheet)
from troparith.troptheta import (cocycle_check_c, cocycle_check_pl, theta_inv, theta_inv_direct,
                                 verify_admissibility)

import conftest
import elliptic_oracle
import oracles
from troparith.codec import parse_worksheet


@contextmanager
def criterion(number, title, budget=None):
    """Time the body and record one PASS/FAIL line for it."""
    info = {}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if ok and budget is not None and elapsed > budget:
            ok = False
            info["over budget"] = f"{budget} s"
        details = ", ".join(f"{k} {v}" for k, v in info.items())
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({details}; {elapsed:.1f} s)"
        print(line)
        conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


def instances(count, seed):
    """(q, l, v) with g in 1..3, Gram entries in [-6, 6], denominators <= 12, |v| <= 3."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        q, l = random_pair(rng, g=k % 3 + 1, max_den=12)
        out.append((q, l, random_vector(rng, q.rank, 3)))
    return out


INSTANCES = instances(240, 1)


def test_criterion_1_cocycle_identity():
    with criterion(1, "cocycle identity, exact", budget=30) as info:
        failures = []
        for q, l, v in INSTANCES:
            for check in (cocycle_check_pl, cocycle_check_c):
                lhs, rhs = check(q, l, v)
                if lhs != rhs:
                    failures.append((check.__name__, q.gram, q.char, l.coeffs, v))
        info["instances"] = len(INSTANCES)
        info["genera"] = sorted({q.rank for q, _, _ in INSTANCES})
        info["failures"] = len(failures)
        assert len(INSTANCES) >= 200 and not failures, failures[:3]


def test_criterion_2_direct_formula():
    with criterion(2, "theta_inv equals the direct formula, is >= 0, vanishes at B(rho/2)") as info:
        bad = []
        for q, l, _ in INSTANCES:
            inv = theta_inv(q, l).value
            if inv != theta_inv_direct(q, l).value or inv < 0:
                bad.append((q.gram, q.char, l.coeffs))
            if theta_inv(q, q.half_char_covector).value != 0:
                bad.append(("half", q.gram, q.char))
        info["instances"] = len(INSTANCES)
        info["failures"] = len(bad)
        assert not bad, bad[:3]


def test_criterion_3_translation_and_parity():
    rng = random.Random(3)
    with criterion(3, "translation invariance and dependence on rho mod 2") as info:
        bad = []
        checks = 0
        for q, l, v in INSTANCES:
            base = theta_inv(q, l).value
            for w in (v, random_vector(rng, q.rank, 3)):
                checks += 1
                if theta_inv(q, translate(q, l, w)).value != base:
                    bad.append(("translate", q.gram, l.coeffs, w))
            u = random_vector(rng, q.rank, 2)
            moved = shift_char(q, tuple(r + 2 * x for r, x in zip(q.char, u)))
            checks += 1
            if theta_inv(moved, l).value != base:
                bad.append(("parity", q.gram, q.char, u))
        info["checks"] = checks
        info["failures"] = len(bad)
        assert not bad, bad[:3]


def test_criterion_4_delaunay_oracle():
    rng = random.Random(4)
    with criterion(4, "lifted lower hull matches minimiser enumeration", budget=60) as info:
        bad = []
        forms = [random_psd_gram(rng, g, bound=6, definite=True) for g in [1] * 10 + [2] * 40]
        for gram in forms:
            q = QuadChar(gram, (0,) * len(gram))
            ours = {c.vertices for c in delaunay_classes(q)}
            if ours != oracles.maximal_cells_through_origin(gram):
                bad.append(gram)
            for c in delaunay_classes(q):
                if minimize_affine(q, c.witness).minimizers != c.vertices:
                    bad.append(("witness", gram, c.vertices))
        a2 = {c.vertices for c in delaunay_classes(QuadChar([[4, 2], [2, 4]], [0, 0]))}
        square = {c.vertices for c in delaunay_classes(QuadChar([[2, 0], [0, 2]], [0, 0]))}
        two_triangles = {((0, 0), (0, 1), (1, 0)), ((0, 0), (1, -1), (1, 0))}
        if a2 != two_triangles:
            bad.append(("A2", a2))
        if square != {((0, 0), (0, 1), (1, 0), (1, 1))}:
            bad.append(("square", square))
        # the A2 tiling of the unit square: the two triangles of the diagonal (0,1)-(1,0)
        tiles = set(delaunay_complex(QuadChar([[4, 2], [2, 4]], [0, 0]), 2).vertex_sets())
        if not {((0, 0), (0, 1), (1, 0)), ((0, 1), (1, 0), (1, 1))} <= tiles:
            bad.append(("A2 tiles", tiles))
        info["forms"] = len(forms) + 2
        info["failures"] = len(bad)
        assert not bad, bad[:3]


def test_criterion_5_mixed_delaunay_voronoi():
    rng = random.Random(5)
    with criterion(5, "mixed Delaunay-Voronoi characterisations agree") as info:
        triples = 0
        members = 0
        bad = []
        while triples < 600:
            q, l = random_pair(rng, gmax=3)
            mins = minimize_affine(q, l).minimizers
            g = q.rank
            candidates = [list(mins[:rng.randint(1, len(mins))])]
            candidates.append(list(mins[:1]) + [random_vector(rng, g, 2)])
            candidates.append([random_vector(rng, g, 2) for _ in range(rng.randint(1, g + 1))])
            for cell in candidates:
                a, b = mdv_by_minimizers(q, l, cell), mdv_by_inequalities(q, l, cell)
                triples += 1
                members += a
                if a != b:
                    bad.append((q.gram, q.char, l.coeffs, cell))
        info["triples"] = triples
        info["members"] = members
        info["failures"] = len(bad)
        assert members > 100 and not bad, bad[:3]


def test_criterion_6_admissibility():
    with criterion(6, "admissibility report has no counterexamples") as info:
        report = verify_admissibility(lambda rng, g=None: random_pair(rng, g, gmax=3), 60, seed=6)
        info["checked"] = dict(report.checked)
        info["counterexamples"] = sum(len(v) for v in report.counterexamples.values())
        assert report.ok and report.checked["pullback"] >= 50, report.counterexamples


def test_criterion_7_riemann_theta():
    rng = random.Random(7)
    with criterion(7, "Riemann theta: direct sum, lattice invariance, quasi-periodicity", budget=30) as info:
        value = theta(0, SiegelPoint([[1j]], 1e-12)).value
        n = np.arange(-500_000, 500_000, dtype=float)
        direct = math.fsum(np.exp(-math.pi * n * n))
        info["|theta(0,i) - direct|"] = f"{abs(value - direct):.1e}"
        assert abs(value - direct) <= 1e-12

        worst = 0.0
        for _ in range(120):
            g = rng.randint(1, 2)
            s = random_siegel_point(rng, g)
            z = np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(g)])
            m = np.array(random_vector(rng, g, 3))
            k = np.array(random_vector(rng, g, 3))
            a, b = norm_theta(z, s), norm_theta(z + m + s.tau @ k, s)
            ratio = abs(a.value - b.value) / (2 * max(a.error_bound, b.error_bound))
            worst = max(worst, ratio)
            assert ratio <= 1, (s.tau, z, m, k)
        info["invariance checks"] = 120
        info["worst residual/bound"] = f"{worst:.2f}"

        worst = 0.0
        for _ in range(60):
            g = rng.randint(1, 2)
            s = random_siegel_point(rng, g)
            z = np.array([complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(g)])
            k = np.array(random_vector(rng, g, 1))
            moved = z + s.tau @ k
            y = moved.imag
            size = math.exp(math.pi * y @ np.linalg.solve(s.tau.imag, y))
            s = SiegelPoint(s.tau, 1e-10 * max(1.0, size))
            lhs, base = theta(moved, s), theta(z, s)
            factor = cmath.exp(-1j * math.pi * (k @ s.tau @ k) - 2j * math.pi * (k @ z))
            bound = lhs.error_bound + abs(factor) * base.error_bound
            ratio = abs(lhs.value - factor * base.value) / bound
            worst = max(worst, ratio)
            assert ratio <= 1, (s.tau, z, k)
        info["quasi-periodicity checks"] = 60
        info["worst quasi residual/bound"] = f"{worst:.2f}"


def test_criterion_8_height_symmetry():
    rng = random.Random(8)
    with criterion(8, "heights of x and -x agree within 4x the error bound") as info:
        worst = 0.0
        for _ in range(60):
            ws = random_worksheet(rng, gmax=2, max_degree=2)
            assert len(ws.places) <= 3
            a, b = assemble_height(ws), assemble_height(negate_worksheet(ws))
            ratio = abs(a.height - b.height) / (4 * (a.error_bound + b.error_bound))
            worst = max(worst, ratio)
            assert ratio <= 1, (a.height, b.height, a.error_bound, b.error_bound)
        info["worksheets"] = 60
        info["worst difference/(4 bound)"] = f"{worst:.2e}"


def test_criterion_9_elliptic_height_differences():
    curve = elliptic_oracle.CURVES["389a1"]
    with criterion(9, "height differences on 389a1 match the doubling oracle") as info:
        formula, oracle, errors = [], [], []
        for pt in curve.points:
            ws = parse_worksheet(elliptic_oracle.worksheet(curve, pt))
            formula.append(assemble_height(ws).height)
            h, err = elliptic_oracle.oracle_height(curve, pt)
            oracle.append(h)
            errors.append(err)
        worst = 0.0
        for i, j in combinations(range(len(curve.points)), 2):
            worst = max(worst, abs((formula[i] - formula[j]) - (oracle[i] - oracle[j])))
        info["points"] = len(curve.points)
        info["pairs"] = len(curve.points) * (len(curve.points) - 1) // 2
        info["worst |difference|"] = f"{worst:.1e}"
        info["oracle error"] = f"{max(errors):.1e}"
        assert worst <= 1e-4
