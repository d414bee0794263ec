"""Closed stars in barycentric subdivisions, decided in closed form.

The closed star of the barycenter b_t of a simplex t, taken in the second
barycentric subdivision, admits an exact coordinate characterization: a
point with weakly decreasing coordinates s_1 >= ... >= s_n (ordered so that
t occupies the first |t| positions and the ordered vertex set spans a
simplex) belongs to the star iff the gap functional k*(s_k - s_{k+1})
attains its maximum at position |t|.  This module implements that test, an
independent oracle that searches chain decompositions instead, and the
constructions built on top of stars: witness points for linked star
families, star covers of a subcomplex, and certified separation bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Union

from . import cells
from .complexes import (Point, Simplex, SimplicialComplex, barycenter,
                        make_simplex, simplex_sort_key)
from .errors import ContractViolation

ZERO = Fraction(0)


@dataclass(frozen=True)
class Chain:
    """A strictly increasing sequence of simplexes."""

    simplexes: tuple

    def __post_init__(self):
        if not self.simplexes:
            raise ContractViolation("a chain must be nonempty")
        for a, b in zip(self.simplexes, self.simplexes[1:]):
            if not a < b:
                raise ContractViolation(
                    "chain entries must strictly increase",
                    detail={"entries": [sorted(s) for s in self.simplexes]})

    @property
    def saturated(self) -> bool:
        """True iff the i-th entry has exactly i+1 vertices."""
        return all(len(s) == i + 1 for i, s in enumerate(self.simplexes))

    @property
    def top(self) -> Simplex:
        return self.simplexes[-1]

    def __iter__(self):
        return iter(self.simplexes)

    def __len__(self):
        return len(self.simplexes)


@dataclass(frozen=True)
class Star:
    """A closed star of the second subdivision, named by its base simplex."""

    base: Simplex


@dataclass(frozen=True)
class StarFamily:
    """Stars of a subcomplex, grouped by base cardinality."""

    ambient: SimplicialComplex
    bases: tuple

    def __post_init__(self):
        for b in self.bases:
            if b not in self.ambient.simplexes:
                raise ContractViolation("star base outside the ambient complex",
                                        detail={"base": sorted(b)})

    @cached_property
    def groups(self) -> dict:
        out: dict = {}
        for b in self.bases:
            out.setdefault(len(b), []).append(b)
        return {k: tuple(v) for k, v in sorted(out.items())}

    @property
    def members(self) -> tuple:
        return tuple(Star(b) for b in self.bases)

    @property
    def discreteness_index(self) -> int:
        return 1 + self.ambient.dimension


@dataclass(frozen=True)
class DisjointStars:
    """Failure evidence: two bases whose stars cannot intersect."""

    first: Simplex
    second: Simplex


@dataclass(frozen=True)
class GroupSeparation:
    cardinality: int
    bases: tuple
    min_distance: Union[Fraction, None]
    closest_pair: Union[tuple, None]


@dataclass(frozen=True)
class DiscretenessResult:
    """Exact within-group separation of a star family.

    ``bound`` is 1/n^2 for n = 1 + dim of the covered subcomplex; the family
    is certified discrete groupwise when every computed minimum meets it.
    """

    family: StarFamily
    n: int
    bound: Fraction
    groups: tuple

    @property
    def certified(self) -> bool:
        return all(g.min_distance is None or g.min_distance >= self.bound
                   for g in self.groups)


@dataclass(frozen=True)
class IntersectionWitness:
    point: Point
    star_chain: Chain
    subcomplexes: tuple


# ---------------------------------------------------------------------------
# subdivision cells of the first subdivision


def sd_cells(simplex: Simplex, k: SimplicialComplex) -> list:
    """The |s|! saturated chains indexing first-subdivision cells of a simplex."""
    s = make_simplex(simplex)
    if s not in k.simplexes:
        raise ContractViolation("not a simplex of the complex",
                                detail={"simplex": sorted(s)})
    out = []
    for perm in permutations(sorted(s)):
        out.append(Chain(tuple(frozenset(perm[: i + 1]) for i in range(len(perm)))))
    return out


def in_sd_cell(p: Point, chain: Chain) -> bool:
    """Whether p is a convex combination of the chain's barycenters.

    Only saturated chains index subdivision cells.  The combination is
    solved exactly: with v_i the vertex added at step i, the weight on the
    i-th barycenter is i*(p(v_i) - p(v_{i+1})), so membership is descent of
    the coordinates along the chain order.
    """
    if not chain.saturated:
        raise ContractViolation("subdivision cells are indexed by saturated chains")
    order = _added_vertices(chain)
    if not p.support <= chain.top:
        return False
    coords = [p[v] for v in order] + [ZERO]
    return all(coords[i] >= coords[i + 1] for i in range(len(order)))


def _added_vertices(chain: Chain) -> list:
    out = list(sorted(chain.simplexes[0]))
    for prev, cur in zip(chain.simplexes, chain.simplexes[1:]):
        out.extend(sorted(cur - prev))
    return out


def sd_cell_weights(p: Point, chain: Chain) -> list:
    """Barycentric weights of p with respect to a saturated chain's cell."""
    order = _added_vertices(chain)
    coords = [p[v] for v in order] + [ZERO]
    return [(i + 1) * (coords[i] - coords[i + 1]) for i in range(len(order))]


# ---------------------------------------------------------------------------
# star membership


def st1_membership(p: Point, vertex: str, k: SimplicialComplex) -> bool:
    """Membership in the closed star of a vertex in the first subdivision.

    Convenience predicate: p lies in the star of delta_v iff its support
    together with v spans a simplex and the v-coordinate is maximal.
    """
    if frozenset({vertex}) not in k.simplexes:
        raise ContractViolation("vertex not in the complex", detail={"vertex": vertex})
    if (p.support | {vertex}) not in k.simplexes:
        return False
    return p[vertex] == max(c for _, c in p.coords)


def _gap_test(p: Point, base: Simplex, w: Simplex) -> bool:
    # Orderings of w listing base first exist iff every base coordinate
    # weakly dominates every other coordinate of w; the sorted gap sequence
    # is ordering-independent, so one check decides all of them.
    min_base = min(p[v] for v in base)
    rest = [p[v] for v in w - base]
    if rest and min_base < max(rest):
        return False
    s = sorted((p[v] for v in w), reverse=True)
    s.append(ZERO)
    gaps = [(i + 1) * (s[i] - s[i + 1]) for i in range(len(w))]
    return gaps[len(base) - 1] == max(gaps)


def st2_membership(p: Point, base: Simplex, k: SimplicialComplex) -> bool:
    """Closed-form membership of p in the closed star of b_base (second subdivision).

    Quantifies over simplexes w containing both the support of p and the
    base, ordered with the base first and coordinates weakly decreasing; the
    point belongs iff for some such w the gap functional i*(s_i - s_{i+1})
    attains its maximum at position |base|.
    """
    base = make_simplex(base)
    if base not in k.simplexes:
        raise ContractViolation("star base is not a simplex of the complex",
                                detail={"base": sorted(base)})
    if p.support not in k.simplexes:
        return False
    core = p.support | base
    if core not in k.simplexes:
        return False
    for w in k.by_size:
        if len(w) >= len(core) and core <= w and _gap_test(p, base, w):
            return True
    return False


def st2_membership_oracle(p: Point, base: Simplex, k: SimplicialComplex) -> bool:
    """Independent star membership test by chain decomposition.

    Enumerates saturated chains through the base (orderings of an ambient
    simplex with the base as prefix) and solves exactly for the barycentric
    weights of p along each chain; membership holds iff some chain yields
    nonnegative weights whose maximum sits at the base position.
    """
    base = make_simplex(base)
    if base not in k.simplexes:
        raise ContractViolation("star base is not a simplex of the complex",
                                detail={"base": sorted(base)})
    if p.support not in k.simplexes:
        return False
    core = p.support | base
    nb = len(base)
    for w in k.simplexes:
        if not core <= w:
            continue
        for perm in permutations(sorted(w)):
            if frozenset(perm[:nb]) != base:
                continue
            coords = [p[v] for v in perm] + [ZERO]
            weights = [(i + 1) * (coords[i] - coords[i + 1])
                       for i in range(len(perm))]
            if all(t >= 0 for t in weights) and weights[nb - 1] == max(weights):
                return True
    return False


# ---------------------------------------------------------------------------
# linked stars, witnesses, covers


def linked_stars_chain(bases: Iterable[Simplex], k: SimplicialComplex):
    """Sort bases of pairwise-intersecting stars into an inclusion chain.

    Stars with incomparable bases are disjoint, so the first incomparable
    pair (in canonical order) is returned as failure evidence.
    """
    unique = sorted({make_simplex(b) for b in bases}, key=simplex_sort_key)
    if not unique:
        raise ContractViolation("no bases given")
    for b in unique:
        if b not in k.simplexes:
            raise ContractViolation("star base is not a simplex of the complex",
                                    detail={"base": sorted(b)})
    for i, a in enumerate(unique):
        for b in unique[i + 1:]:
            if not (a <= b or b <= a):
                return DisjointStars(a, b)
    return Chain(tuple(sorted(unique, key=len)))


def chain_witness(chain) -> Point:
    """The equal-weight average of the chain's barycenters.

    Lies in the closed star of every chain member; for saturated chains it
    is an interior point of the corresponding first-subdivision cell.
    """
    if not isinstance(chain, Chain):
        chain = Chain(tuple(chain))
    n = len(chain)
    acc: dict = {}
    for s in chain:
        w = Fraction(1, n * len(s))
        for v in s:
            acc[v] = acc.get(v, ZERO) + w
    return Point.of(acc)


def star_meets_subcomplex(simplex: Simplex, base: Simplex,
                          k: SimplicialComplex) -> bool:
    """Whether the closed simplex meets the closed star of b_base.

    The closure of a simplex meets the star iff the base is one of its
    faces: the barycenter b_base itself witnesses the forward direction,
    and any shared point forces the base inside the simplex.
    """
    s = make_simplex(simplex)
    b = make_simplex(base)
    for x, name in ((s, "simplex"), (b, "base")):
        if x not in k.simplexes:
            raise ContractViolation("not a simplex of the complex",
                                    detail={name: sorted(x)})
    return b <= s


def star_cover(c: SimplicialComplex, k: SimplicialComplex) -> StarFamily:
    """One star per simplex of a subcomplex, grouped by base cardinality.

    The stars are taken inside the covered subcomplex; their union is its
    entire realization, and within each cardinality group the stars are
    pairwise separated (see :func:`discreteness_certificate`).
    """
    if not k.has_subcomplex(c):
        raise ContractViolation("cover target is not a subcomplex",
                                detail={"extra": [sorted(s) for s in
                                                  sorted(c.simplexes - k.simplexes,
                                                         key=simplex_sort_key)]})
    return StarFamily(ambient=c, bases=tuple(c.sorted_simplexes()))


def discreteness_certificate(family: StarFamily) -> DiscretenessResult:
    """Exact within-group minimum star distances, certified against 1/n^2.

    Distances are computed by exact linear programming over pairs of
    second-subdivision cells, never by sampling.
    """
    n = family.discreteness_index
    bound = Fraction(1, n * n)
    ambient = family.ambient
    cell_cache: dict = {}

    def cells_of(b):
        if b not in cell_cache:
            cell_cache[b] = cells.star_cells(b, ambient)
        return cell_cache[b]

    groups = []
    for card, bases in family.groups.items():
        best = None
        pair = None
        for i, a in enumerate(bases):
            for b in bases[i + 1:]:
                d = cells.min_l1_between_cell_unions(cells_of(a), cells_of(b))
                if best is None or d < best:
                    best, pair = d, (a, b)
        groups.append(GroupSeparation(cardinality=card, bases=bases,
                                      min_distance=best, closest_pair=pair))
    result = DiscretenessResult(family=family, n=n, bound=bound,
                                groups=tuple(groups))
    if not result.certified:
        raise ContractViolation(
            "separation bound violated",
            detail={"bound": str(bound),
                    "groups": [(g.cardinality, str(g.min_distance))
                               for g in result.groups]})
    return result


def linked_intersection_witness(members: Iterable, ambient: SimplicialComplex) -> IntersectionWitness:
    """A common point of pairwise-intersecting stars and subcomplexes.

    Members are :class:`Star` values and subcomplexes of the ambient
    complex; at least one star is required.  The witness is the equal-weight
    barycenter average along the chain of star bases; membership in every
    star and every subcomplex is re-verified before returning.
    """
    star_bases = []
    subs = []
    for m in members:
        if isinstance(m, Star):
            star_bases.append(m.base)
        elif isinstance(m, SimplicialComplex):
            if not ambient.has_subcomplex(m):
                raise ContractViolation("member is not a subcomplex of the ambient")
            subs.append(m)
        else:
            raise ContractViolation("members must be stars or subcomplexes",
                                    detail={"got": type(m).__name__})
    if not star_bases:
        raise ContractViolation("at least one member must be a star")
    chain = linked_stars_chain(star_bases, ambient)
    if isinstance(chain, DisjointStars):
        raise ContractViolation(
            "stars are not pairwise intersecting",
            detail={"pair": [sorted(chain.first), sorted(chain.second)]})
    top = chain.top
    for i, f in enumerate(subs):
        # A subcomplex meets the star of the top base iff it contains it.
        if top not in f.simplexes:
            raise ContractViolation(
                "subcomplex does not meet the largest star",
                detail={"subcomplex_index": i, "base": sorted(top)})
    point = chain_witness(chain)
    for b in chain:
        if not st2_membership(point, b, ambient):
            raise ContractViolation("witness fails star membership",
                                    detail={"base": sorted(b)})
    for f in subs:
        if point.support not in f.simplexes:
            raise ContractViolation("witness escapes a subcomplex")
    return IntersectionWitness(point=point, star_chain=chain, subcomplexes=tuple(subs))
