"""Extensional second-subdivision machinery: cells, vertices, exact distances.

The closed star of a barycenter is, by definition, a union of closed cells
of the second barycentric subdivision.  This module materializes those cells
so that star membership, star intersection, and star-to-star l1 distances
can be decided brute-force and exactly, independently of the coordinate
characterizations in :mod:`knets.stars`.

A cell of the second subdivision of a simplex W is indexed by an ordering
(v1..vn) of W (a saturated chain of faces) together with an ordering of the
chain's barycenters; its geometric vertices are the running averages of the
reordered barycenters.  Vertices of the subdivision complex correspond to
chains of simplexes, which gives a purely combinatorial incidence index used
by the exhaustive tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .complexes import Point, Simplex, SimplicialComplex, barycenter, l1_distance
from .lp import solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# cell enumeration


def _prefix_barycenters(perm: Sequence[str]) -> list:
    out = []
    for i in range(len(perm)):
        out.append(barycenter(frozenset(perm[: i + 1])))
    return out


def _running_average_cell(bars: Sequence[Point], order: Sequence[int]) -> tuple:
    """Vertices m_k = average of the first k reordered barycenters."""
    acc: dict = {}
    verts = []
    for k, idx in enumerate(order, start=1):
        for v, c in bars[idx].coords:
            acc[v] = acc.get(v, ZERO) + c
        verts.append(Point.of({v: c / k for v, c in acc.items()}))
    return tuple(verts)


def sd2_cells_of_simplex(simplex: Simplex) -> list:
    """All top-dimensional cells of the second subdivision of one closed simplex."""
    verts = sorted(simplex)
    n = len(verts)
    cells = []
    for perm in permutations(verts):
        bars = _prefix_barycenters(perm)
        for order in permutations(range(n)):
            cells.append(_running_average_cell(bars, order))
    return cells


def star_cells(base: Simplex, k: SimplicialComplex) -> list:
    """Maximal cells of the closed star of b_base in the second subdivision.

    A cell contains the barycenter of ``base`` exactly when the underlying
    saturated chain passes through ``base`` and the barycenter reordering
    starts at it.
    """
    nb = len(base)
    cells = []
    for w in k.maximal_simplexes:
        if not base <= w:
            continue
        n = len(w)
        rest = sorted(w - base)
        for head in permutations(sorted(base)):
            for tail in permutations(rest):
                perm = head + tail
                bars = _prefix_barycenters(perm)
                for order_rest in permutations([i for i in range(n) if i != nb - 1]):
                    cells.append(_running_average_cell(bars, (nb - 1,) + order_rest))
    return cells


def star_vertex_chains_from_cells(base: Simplex, k: SimplicialComplex) -> set:
    """Subdivision vertices incident to the closed star, as chains of simplexes.

    Enumerated literally from the cells of :func:`star_cells`; used to
    cross-check the combinatorial incidence index below.
    """
    nb = len(base)
    out = set()
    for w in k.maximal_simplexes:
        if not base <= w:
            continue
        n = len(w)
        rest = sorted(w - base)
        for head in permutations(sorted(base)):
            for tail in permutations(rest):
                perm = head + tail
                prefixes = [frozenset(perm[: i + 1]) for i in range(n)]
                for order_rest in permutations([i for i in range(n) if i != nb - 1]):
                    order = (nb - 1,) + order_rest
                    for cut in range(1, n + 1):
                        out.add(frozenset(prefixes[i] for i in order[:cut]))
    return out


# ---------------------------------------------------------------------------
# combinatorial incidence index (subdivision vertices = chains of simplexes)


class ChainIndex:
    """Per-complex index of all inclusion chains of simplexes.

    ``through[s]`` is a bitmask over chain ids marking chains containing s;
    ``within[s]`` marks chains all of whose members are faces of s.  Two
    closed subdivision-cell unions intersect iff they share a subdivision
    vertex, so these masks decide star/star and closure/star intersection
    questions extensionally.
    """

    def __init__(self, k: SimplicialComplex):
        self.complex = k
        simplexes = sorted(k.simplexes, key=lambda s: (len(s), tuple(sorted(s))))
        supersets = {s: [t for t in simplexes if s < t] for s in simplexes}
        chains: list = []

        def grow(chain):
            chains.append(tuple(chain))
            for t in supersets[chain[-1]]:
                chain.append(t)
                grow(chain)
                chain.pop()

        for s in simplexes:
            grow([s])
        self.chains = chains
        through = {s: 0 for s in simplexes}
        within = {s: 0 for s in simplexes}
        for cid, chain in enumerate(chains):
            bit = 1 << cid
            for s in chain:
                through[s] |= bit
            top = chain[-1]
            within[top] |= bit
            for t in supersets[top]:
                within[t] |= bit
        self.through = through
        self.within = within

    def stars_intersect(self, a: Simplex, b: Simplex) -> bool:
        return bool(self.through[a] & self.through[b])

    def closure_meets_star(self, simplex: Simplex, base: Simplex) -> bool:
        return bool(self.within[simplex] & self.through[base])


def chains_through(base: Simplex, k: SimplicialComplex) -> set:
    """All inclusion chains of simplexes of ``k`` containing ``base``."""
    return {frozenset(c) for c in ChainIndex(k).chains if base in c}


# ---------------------------------------------------------------------------
# exact point-in-cell test


def _affine_solve(columns: Sequence[Point], target: Point):
    """Solve target = Sum x_i columns_i with Sum x_i = 1, exactly.

    Returns the coefficient vector or None if inconsistent.  Columns are
    affinely independent for subdivision cells, so the solution is unique.
    """
    verts = sorted({v for p in columns for v in p.support} | set(target.support))
    rows = [[p[v] for p in columns] + [target[v]] for v in verts]
    rows.append([ONE] * len(columns) + [ONE])
    ncols = len(columns)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def point_in_cell(p: Point, cell: Sequence[Point]) -> bool:
    """Exact membership of a point in the convex hull of a cell's vertices."""
    x = _affine_solve(cell, p)
    return x is not None and all(c >= 0 for c in x)


def cell_of_point(p: Point, simplex: Simplex):
    """Some second-subdivision cell of the closed simplex containing p, or None."""
    for cell in sd2_cells_of_simplex(simplex):
        if point_in_cell(p, cell):
            return cell
    return None


# ---------------------------------------------------------------------------
# exact l1 distances between cells and between stars


def min_l1_between_hulls(cell_a: Sequence[Point], cell_b: Sequence[Point]) -> Fraction:
    """Exact minimum l1 distance between two convex hulls of rational points.

    LP over convex weights for each hull plus split variables for the
    coordinate differences; the optimum value is the exact distance.
    """
    verts = sorted({v for p in cell_a for v in p.support}
                   | {v for p in cell_b for v in p.support})
    na, nb, nv = len(cell_a), len(cell_b), len(verts)
    nvar = na + nb + 2 * nv
    rows = []
    rhs = []
    row = [ONE] * na + [ZERO] * (nvar - na)
    rows.append(row)
    rhs.append(ONE)
    row = [ZERO] * na + [ONE] * nb + [ZERO] * (2 * nv)
    rows.append(row)
    rhs.append(ONE)
    for i, v in enumerate(verts):
        row = [p[v] for p in cell_a] + [-q[v] for q in cell_b] + [ZERO] * (2 * nv)
        row[na + nb + 2 * i] = -ONE      # s_plus
        row[na + nb + 2 * i + 1] = ONE   # s_minus
        rows.append(row)
        rhs.append(ZERO)
    costs = [ZERO] * (na + nb) + [ONE] * (2 * nv)
    value, _ = solve_lp(costs, rows, rhs)
    return value


def _cell_bounds(cell: Sequence[Point], verts: Sequence[str]) -> dict:
    out = {}
    for v in verts:
        vals = [p[v] for p in cell]
        out[v] = (min(vals), max(vals))
    return out


def _bounds_gap(ba: dict, bb: dict) -> Fraction:
    total = ZERO
    for v, (lo_a, hi_a) in ba.items():
        lo_b, hi_b = bb[v]
        if lo_b > hi_a:
            total += lo_b - hi_a
        elif lo_a > hi_b:
            total += lo_a - hi_b
    return total


def min_l1_between_cell_unions(cells_a: Sequence, cells_b: Sequence) -> Fraction:
    """Exact min distance between two unions of cells, with box pruning.

    Per-coordinate interval gaps lower-bound each pair's distance; pairs are
    visited in ascending bound order and evaluation stops once the bound
    meets the best exact distance found, so the result stays exact.
    """
    verts = sorted({v for c in cells_a for p in c for v in p.support}
                   | {v for c in cells_b for p in c for v in p.support})
    bounds_a = [_cell_bounds(c, verts) for c in cells_a]
    bounds_b = [_cell_bounds(c, verts) for c in cells_b]
    points_a = {p for c in cells_a for p in c}
    points_b = {p for c in cells_b for p in c}
    best = None
    for pa in points_a:
        for pb in points_b:
            d = l1_distance(pa, pb)
            if best is None or d < best:
                best = d
    pairs = []
    for i, ca in enumerate(cells_a):
        for j, cb in enumerate(cells_b):
            pairs.append((_bounds_gap(bounds_a[i], bounds_b[j]), i, j))
    pairs.sort(key=lambda t: t[0])
    for gap, i, j in pairs:
        if gap >= best:
            break
        d = min_l1_between_hulls(cells_a[i], cells_b[j])
        if d < best:
            best = d
    return best


def star_l1_distance(base_a: Simplex, base_b: Simplex, k: SimplicialComplex) -> Fraction:
    """Exact l1 distance between two closed stars of the second subdivision."""
    return min_l1_between_cell_unions(star_cells(base_a, k), star_cells(base_b, k))


def stars_intersect_geometric(base_a: Simplex, base_b: Simplex,
                              k: SimplicialComplex) -> bool:
    return star_l1_distance(base_a, base_b, k) == 0


def closure_star_l1_distance(simplex: Simplex, base: Simplex,
                             k: SimplicialComplex) -> Fraction:
    """Exact l1 distance between a closed simplex and a closed star."""
    closure_cell = [Point.delta(v) for v in sorted(simplex)]
    return min_l1_between_cell_unions([tuple(closure_cell)], star_cells(base, k))
