"""Delaunay cells, Delaunay complexes, Voronoi cells and mixed DV membership.

A Delaunay cell is the set of lattice minimisers of a(w) + l(w) for one
covector l (its witness). The maximal cells tile R^g periodically. We find
them from the lower convex hull of the lifted points (w, a(w)) near the
origin, then certify every cell exactly: its vertex set is recomputed by
exact minimisation at the witness, and the volumes of one representative per
translation class must add up to 1, the covolume of Z^g. Floating point
(through scipy's Qhull) only proposes candidate facets.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np
from scipy.spatial import ConvexHull

from . import _exact as ex
from .errors import NotDefinite, RankMismatch
from .latmin import enumerate_below, minimize_affine, objective
from .quadform import QuadChar, as_covector, translate


@dataclass(frozen=True)
class DelaunayCell:
    vertices: tuple
    witness: object
    dim: int

    def translated(self, q, w):
        verts = tuple(sorted(tuple(x + s for x, s in zip(v, w)) for v in self.vertices))
        return DelaunayCell(verts, translate(q, self.witness, tuple(-s for s in w)), self.dim)


@dataclass(frozen=True)
class DelaunayComplex:
    """Maximal cells with a vertex in the box [0, N)^g.

    ``classes`` holds one representative per translation class, translated
    so that its lexicographically smallest vertex is the origin.
    """

    cells: tuple
    classes: tuple
    box: int

    def vertex_sets(self):
        return tuple(c.vertices for c in self.cells)


def affine_dim(points):
    if len(points) <= 1:
        return 0
    p0 = points[0]
    diffs = tuple(tuple(Fraction(a - b) for a, b in zip(p, p0)) for p in points[1:])
    return ex.rank(diffs)


def delaunay_cell(q, l):
    l = as_covector(l)
    res = minimize_affine(q, l)
    return DelaunayCell(res.minimizers, l, affine_dim(res.minimizers))


def _require_definite(q):
    if not q.is_definite:
        raise NotDefinite("form is only semidefinite; reduce modulo its radical first")


def _canonical(q, cell):
    v0 = cell.vertices[0]
    return cell.translated(q, tuple(-x for x in v0))


def _near_origin(q, extra=Fraction(0)):
    # Vertices of a cell through 0 satisfy Q(x) <= tr B: the circumscribed
    # B-ball of a cell has radius at most the covering radius mu, and
    # mu^2 <= tr(B)/4 (round the centre coordinate-wise).
    zero = QuadChar(q.gram, (0,) * q.rank)
    trace = sum(q.gram[i][i] for i in range(q.rank))
    return enumerate_below(zero, (0,) * q.rank, (trace + extra) / 2)


def _witness_for(q, simplex):
    # Solve a(x_j) + l(x_j) = m over the simplex vertices for (l, m).
    g = q.rank
    rows = tuple(tuple(Fraction(c) for c in x) + (Fraction(-1),) for x in simplex)
    rhs = tuple(-q(x) for x in simplex)
    sol = ex.solve(rows, rhs)
    if sol is None or ex.rank(rows) < g + 1:
        return None
    return sol[:g]


def cell_volume(vertices):
    """Exact volume of the convex hull of full-dimensional lattice points."""
    g = len(vertices[0])
    if g == 1:
        xs = [v[0] for v in vertices]
        return Fraction(max(xs) - min(xs))
    pts = np.array(vertices, dtype=float)
    hull = ConvexHull(pts)
    base = tuple(Fraction(c) for c in vertices[0])
    total = Fraction(0)
    for simplex in hull.simplices:
        facet = [vertices[i] for i in simplex]
        _check_supporting(vertices, facet)
        m = tuple(tuple(Fraction(c) - b for c, b in zip(p, base)) for p in facet)
        total += abs(ex.det(m))
    return total / factorial(g)


def _check_supporting(vertices, facet):
    # Exact orientation test: every vertex on one side of the facet plane.
    p0 = facet[0]
    edges = tuple(tuple(Fraction(a - b) for a, b in zip(p, p0)) for p in facet[1:])
    signs = set()
    for v in vertices:
        d = ex.det(edges + (tuple(Fraction(a - b) for a, b in zip(v, p0)),))
        if d:
            signs.add(d > 0)
    if len(signs) > 1:
        raise ArithmeticError("hull facet is not supporting; floating hull is unreliable here")


def delaunay_classes(q, max_rounds=4):
    """One canonical representative per translation class of maximal cells."""
    _require_definite(q)
    g = q.rank
    extra = Fraction(0)
    trace = sum(q.gram[i][i] for i in range(g))
    for _ in range(max_rounds):
        pts = _near_origin(q, extra)
        classes = {}
        if g == 1:
            for x in pts:
                cell = delaunay_cell(q, _witness_for(q, (x, (x[0] + 1,))))
                if cell.dim == 1:
                    c = _canonical(q, cell)
                    classes[c.vertices] = c
        else:
            lifted = np.array([list(x) + [float(q(x))] for x in pts])
            hull = ConvexHull(lifted)
            for simplex, eq in zip(hull.simplices, hull.equations):
                if eq[-1] >= -1e-12:
                    continue
                l = _witness_for(q, [pts[i] for i in simplex])
                if l is None:
                    continue
                cell = delaunay_cell(q, l)
                if cell.dim == g:
                    c = _canonical(q, cell)
                    classes.setdefault(c.vertices, c)
        total = sum(cell_volume(v) for v in classes)
        if total == 1:
            return tuple(classes[k] for k in sorted(classes))
        if total > 1:
            raise ArithmeticError(f"cell classes overlap: total volume {total}")
        extra += trace
    raise ArithmeticError("could not certify the Delaunay decomposition")


def delaunay_complex(q, box=1):
    """All maximal cells having a vertex in [0, box)^g."""
    classes = delaunay_classes(q)
    g = q.rank
    seen = {}
    for cls in classes:
        for corner in product(range(box), repeat=g):
            for v in cls.vertices:
                w = tuple(c - x for c, x in zip(corner, v))
                cell = cls.translated(q, w)
                seen.setdefault(cell.vertices, cell)
    cells = tuple(seen[k] for k in sorted(seen))
    return DelaunayComplex(cells, classes, box)


def same_delaunay(q, q2, box=1):
    if q.rank != q2.rank:
        raise RankMismatch(f"lattice ranks differ: {q.rank} vs {q2.rank}")
    return delaunay_complex(q, box).vertex_sets() == delaunay_complex(q2, box).vertex_sets()


# -- Voronoi cells and mixed Delaunay-Voronoi membership ----------------------

@dataclass(frozen=True)
class VoronoiInequality:
    """normal . l + offset >= 0, from vertex x_i against lattice point x."""

    vertex: tuple
    point: tuple
    normal: tuple
    offset: Fraction

    def holds(self, l):
        return ex.dot(self.normal, as_covector(l).coeffs) + self.offset >= 0


def _inequality(q, xi, x):
    d = tuple(a - b for a, b in zip(x, xi))
    s = tuple(a + b - r for a, b, r in zip(x, xi, q.char))
    return VoronoiInequality(tuple(xi), tuple(x), tuple(Fraction(c) for c in d), q.B(d, s) / 2)


def voronoi_cell(q, cell, slack=0):
    """H-representation of the covectors l whose minimiser set contains the cell.

    For each vertex x_i the candidates are x = x_i + y with
    0 < Q(y) <= tr B + slack. Every Voronoi-relevant difference is a
    Delaunay edge, hence has Q <= tr B, so no omitted lattice point can cut
    the cell.
    """
    _require_definite(q)
    verts = _vertices(cell)
    diffs = [y for y in _near_origin(q, ex.to_fraction(slack)) if any(y)]
    out = []
    for xi in verts:
        for y in diffs:
            out.append(_inequality(q, xi, tuple(a + b for a, b in zip(xi, y))))
    return tuple(out)


def in_voronoi(inequalities, l):
    return all(h.holds(l) for h in inequalities)


def _vertices(cell):
    return cell.vertices if isinstance(cell, DelaunayCell) else tuple(map(tuple, cell))


def mdv_by_minimizers(q, l, cell):
    """Every vertex of the cell attains min a + l."""
    res = minimize_affine(q, l)
    return all(objective(q, l, x) == res.value for x in _vertices(cell))


def mdv_by_inequalities(q, l, cell):
    """B(x - x_i, x + x_i - rho)/2 + l(x - x_i) >= 0 for every lattice x.

    A violating x has a(x) + l(x) < a(x_i) + l(x_i), so it is among the
    points below the largest vertex value; that finite set is enumerated
    exactly.
    """
    l = as_covector(l)
    verts = _vertices(cell)
    top = max(objective(q, l, x) for x in verts)
    for x in enumerate_below(q, l, top):
        for xi in verts:
            if not _inequality(q, xi, x).holds(l):
                return False
    return True


def mdv_membership(q, l, cell):
    """Whether (q, l) lies in the mixed Delaunay-Voronoi cone of the cell."""
    by_min = mdv_by_minimizers(q, l, cell)
    by_ineq = mdv_by_inequalities(q, l, cell)
    if by_min != by_ineq:
        raise ArithmeticError("minimiser and inequality characterisations disagree")
    return by_min


@dataclass(frozen=True)
class MixedDVCone:
    """Cone of covectors over a base form whose minimisers contain a cell."""

    base_form: QuadChar
    cell: DelaunayCell

    def contains(self, l):
        return mdv_membership(self.base_form, l, self.cell)

    def inequalities(self, slack=0):
        return voronoi_cell(self.base_form, self.cell, slack)
