"""Exact abstract simplicial complexes and points of their realizations.

Vertices are opaque string tokens.  A simplex is a nonempty ``frozenset`` of
vertices; a complex is a downward-closed family of simplexes.  Points of the
geometric realization are sparse vertex->rational maps with all stored
coordinates strictly positive and summing to exactly 1, i.e. elements of the
l1 space spanned by the vertex set.  Everything is immutable and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import ContractViolation

Vertex = str
Simplex = frozenset  # frozenset[str]

#: Prefix reserved for vertex names minted by constructions (e.g. the order
#: complex of a set system).  Input vertex tokens should not start with it.
MINTED_PREFIX = "^"


def make_simplex(vertices: Iterable[Vertex]) -> Simplex:
    """Build a simplex from vertex tokens, rejecting the empty set."""
    s = frozenset(vertices)
    if not s:
        raise ContractViolation("a simplex must have at least one vertex")
    for v in s:
        if not isinstance(v, str) or not v:
            raise ContractViolation("vertex tokens must be nonempty strings",
                                    detail={"vertex": repr(v)})
    return s


def simplex_sort_key(s: Simplex):
    """Canonical ordering: by cardinality, then lexicographic."""
    return (len(s), tuple(sorted(s)))


@dataclass(frozen=True)
class Point:
    """A point of a geometric realization, in sparse l1 coordinates.

    ``coords`` is a tuple of (vertex, coordinate) pairs sorted by vertex,
    every coordinate strictly positive, and the coordinates sum to 1.
    """

    coords: tuple

    def __post_init__(self):
        total = Fraction(0)
        prev = None
        for v, c in self.coords:
            if prev is not None and v <= prev:
                raise ContractViolation("point coordinates must be sorted by vertex")
            prev = v
            if not isinstance(c, Fraction) or c <= 0:
                raise ContractViolation("point coordinates must be positive rationals",
                                        detail={"vertex": v, "value": str(c)})
            total += c
        if total != 1:
            raise ContractViolation("point coordinates must sum to 1",
                                    detail={"sum": str(total)})

    @staticmethod
    def of(mapping: Mapping[Vertex, Fraction]) -> "Point":
        """Build a point from a vertex->rational mapping, dropping zeros."""
        items = []
        for v, c in mapping.items():
            c = Fraction(c)
            if c == 0:
                continue
            if c < 0:
                raise ContractViolation("negative coordinate",
                                        detail={"vertex": v, "value": str(c)})
            items.append((v, c))
        return Point(tuple(sorted(items)))

    @staticmethod
    def delta(v: Vertex) -> "Point":
        """The unit mass at a single vertex."""
        return Point(((v, Fraction(1)),))

    @staticmethod
    def combine(weighted: Iterable[tuple]) -> "Point":
        """Convex combination Sum w_i * p_i of points (weights sum to 1)."""
        acc: dict = {}
        for w, p in weighted:
            w = Fraction(w)
            for v, c in p.coords:
                acc[v] = acc.get(v, Fraction(0)) + w * c
        return Point.of(acc)

    @cached_property
    def support(self) -> Simplex:
        return frozenset(v for v, _ in self.coords)

    def __getitem__(self, v: Vertex) -> Fraction:
        for u, c in self.coords:
            if u == v:
                return c
        return Fraction(0)

    def mapping(self) -> dict:
        return dict(self.coords)


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite downward-closed family of simplexes."""

    simplexes: frozenset

    def __post_init__(self):
        if not self.simplexes:
            raise ContractViolation("a complex must contain at least one simplex")
        for s in self.simplexes:
            if not s:
                raise ContractViolation("empty simplex in complex")
            # Downward closure follows by induction from codimension-1 faces.
            if len(s) > 1:
                for v in s:
                    if s - {v} not in self.simplexes:
                        raise ContractViolation(
                            "complex is not downward closed",
                            detail={"simplex": sorted(s), "missing_face": sorted(s - {v})})

    @cached_property
    def vertices(self) -> frozenset:
        out = set()
        for s in self.simplexes:
            out |= s
        return frozenset(out)

    @cached_property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplexes) - 1

    @cached_property
    def maximal_simplexes(self) -> tuple:
        """Inclusion-maximal simplexes, canonically ordered."""
        out = []
        for s in self.simplexes:
            if not any(s < t for t in self.simplexes):
                out.append(s)
        return tuple(sorted(out, key=simplex_sort_key))

    @cached_property
    def by_size(self) -> tuple:
        """All simplexes ordered by cardinality (ties lexicographic)."""
        return tuple(sorted(self.simplexes, key=simplex_sort_key))

    def __contains__(self, simplex) -> bool:
        return frozenset(simplex) in self.simplexes

    def __len__(self) -> int:
        return len(self.simplexes)

    def sorted_simplexes(self) -> list:
        return sorted(self.simplexes, key=simplex_sort_key)

    def has_subcomplex(self, other: "SimplicialComplex") -> bool:
        return other.simplexes <= self.simplexes

    def subcomplex(self, simplexes: Iterable[Simplex]) -> "SimplicialComplex":
        """The subcomplex spanned by the given member simplexes."""
        wanted = set()
        for s in simplexes:
            s = frozenset(s)
            if s not in self.simplexes:
                raise ContractViolation("not a simplex of the complex",
                                        detail={"simplex": sorted(s)})
            wanted.add(s)
        return make_complex(wanted)

    def full_subcomplex(self, vertices: Iterable[Vertex]) -> "SimplicialComplex":
        """All simplexes whose vertices lie in the given set."""
        vs = frozenset(vertices)
        kept = frozenset(s for s in self.simplexes if s <= vs)
        if not kept:
            raise ContractViolation("full subcomplex is empty",
                                    detail={"vertices": sorted(vs)})
        return SimplicialComplex(kept)


def make_complex(maximal_simplexes: Iterable[Iterable[Vertex]]) -> SimplicialComplex:
    """Downward closure of the given simplexes.

    Idempotent: feeding back all simplexes of a complex reproduces it.
    """
    closure = set()
    for raw in maximal_simplexes:
        s = make_simplex(raw)
        verts = sorted(s)
        for k in range(1, len(verts) + 1):
            for sub in combinations(verts, k):
                closure.add(frozenset(sub))
    if not closure:
        raise ContractViolation("cannot build a complex from no simplexes")
    return SimplicialComplex(frozenset(closure))


def dimension(k: SimplicialComplex) -> int:
    return k.dimension


def barycenter(simplex: Simplex) -> Point:
    """The point with coordinate 1/|s| at each vertex of the simplex."""
    s = make_simplex(simplex)
    w = Fraction(1, len(s))
    return Point(tuple((v, w) for v in sorted(s)))


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes on disjoint vertex sets.

    Simplexes are the nonempty subsets of s1 | s2 with each part a simplex
    of its factor (or empty); equivalently the closure of pairwise unions
    of maximal simplexes.
    """
    overlap = k1.vertices & k2.vertices
    if overlap:
        raise ContractViolation("join requires disjoint vertex sets",
                                detail={"shared": sorted(overlap)})
    tops = [a | b for a in k1.maximal_simplexes for b in k2.maximal_simplexes]
    return make_complex(tops)


def cone(k: SimplicialComplex, apex: Vertex) -> SimplicialComplex:
    """Join with a single fresh vertex."""
    return join(k, make_complex([[apex]]))


def l1_distance(p: Point, q: Point) -> Fraction:
    """Exact l1 distance Sum_v |p(v) - q(v)|."""
    total = Fraction(0)
    pm = p.mapping()
    qm = q.mapping()
    for v in pm.keys() | qm.keys():
        total += abs(pm.get(v, Fraction(0)) - qm.get(v, Fraction(0)))
    return total


def carrier(p: Point, k: SimplicialComplex) -> Simplex:
    """The unique minimal simplex whose closed realization contains p.

    For a point with positive coordinates exactly on its support, that is
    the support itself; it must be a simplex of the ambient complex.
    """
    s = p.support
    if s not in k.simplexes:
        raise ContractViolation("point support is not a simplex of the complex",
                                detail={"support": sorted(s)})
    return s


def in_realization(p: Point, k: SimplicialComplex) -> bool:
    """Whether the point lies in the geometric realization of the complex."""
    return p.support in k.simplexes
