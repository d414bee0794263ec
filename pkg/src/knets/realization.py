"""Order-complex realization of layered set systems.

A set system is a finite ground set with an ordered list of groups of named
subsets, pairwise disjoint inside each group.  Closing the listed sets
under nonempty intersection (plus the ground set as top) gives a meet
semilattice; stripping minimal elements repeatedly stratifies it into at
most one layer more than the number of groups.  The order complex of the
semilattice realizes the system: each semilattice element is assigned the
full subcomplex on its down-set, which makes the assignment commute with
intersections, and each ground element maps to the vertex of the least
semilattice member containing it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .complexes import (MINTED_PREFIX, Point, SimplicialComplex, make_complex)
from .errors import ContractViolation


def element_sort_key(e: frozenset):
    return (len(e), tuple(sorted(e)))


def element_vertex_name(e: frozenset) -> str:
    """Deterministic vertex token minted for a semilattice element."""
    return MINTED_PREFIX + json.dumps(sorted(e), separators=(",", ":"))


@dataclass(frozen=True)
class SetSystem:
    """Ground set plus ordered groups of named, within-group-disjoint subsets."""

    ground: frozenset
    groups: tuple   # tuple of tuples of (name, frozenset) pairs

    def __post_init__(self):
        if not self.ground:
            raise ContractViolation("ground set must be nonempty")
        seen = set()
        for group in self.groups:
            for i, (name, members) in enumerate(group):
                if name in seen:
                    raise ContractViolation("duplicate set name", detail={"name": name})
                seen.add(name)
                if not members <= self.ground:
                    raise ContractViolation("set escapes the ground",
                                            detail={"name": name,
                                                    "extra": sorted(members - self.ground)})
                for other_name, other in group[i + 1:]:
                    if members & other:
                        raise ContractViolation(
                            "sets in one group must be pairwise disjoint",
                            detail={"names": [name, other_name],
                                    "overlap": sorted(members & other)})

    @property
    def n(self) -> int:
        """Discreteness index: the number of groups."""
        return len(self.groups)

    def flat(self) -> tuple:
        return tuple((name, members) for group in self.groups
                     for name, members in group)

    def named(self, name: str) -> frozenset:
        for n_, members in self.flat():
            if n_ == name:
                return members
        raise ContractViolation("unknown set name", detail={"name": name})


def set_system(ground: Iterable, groups: Iterable) -> SetSystem:
    """Convenience constructor from plain iterables."""
    return SetSystem(
        ground=frozenset(ground),
        groups=tuple(tuple((name, frozenset(members)) for name, members in group)
                     for group in groups))


@dataclass(frozen=True)
class MeetSemilattice:
    """All nonempty intersections of listed sets, with the ground set as top."""

    ground: frozenset
    elements: frozenset  # frozenset of frozensets, always containing ground

    def sorted_elements(self) -> list:
        return sorted(self.elements, key=element_sort_key)


def meet_semilattice(system: SetSystem) -> MeetSemilattice:
    """Close the listed sets under nonempty pairwise intersection.

    Iterated pairwise meets reach every subfamily intersection, so the
    closure equals the family of all nonempty subfamily intersections; the
    ground set joins as the intersection of the empty subfamily.
    """
    elements = {members for _, members in system.flat() if members}
    frontier = set(elements)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in elements:
                c = a & b
                if c and c not in elements and c not in fresh:
                    fresh.add(c)
        elements |= fresh
        frontier = fresh
    elements.add(system.ground)
    return MeetSemilattice(ground=system.ground, elements=frozenset(elements))


@dataclass(frozen=True)
class RankStratification:
    """Layers obtained by repeatedly stripping minimal elements."""

    layers: tuple  # tuple of tuples of elements, canonically sorted

    def rank_of(self, element: frozenset) -> int:
        for i, layer in enumerate(self.layers):
            if element in layer:
                return i
        raise ContractViolation("element not in the stratification")


def rank_strata(lattice: MeetSemilattice, n: int) -> RankStratification:
    """Stratify the semilattice; at most n+1 layers for an n-group system.

    Also re-checks the layer property that distinct same-layer elements can
    only intersect inside strictly earlier layers; more than n+1 layers
    signals that a group of the source system was not disjoint.
    """
    remaining = set(lattice.elements)
    layers = []
    while remaining:
        minimal = [e for e in remaining
                   if not any(o < e for o in remaining)]
        layer = tuple(sorted(minimal, key=element_sort_key))
        stripped = set()
        for prev in layers:
            stripped |= set(prev)
        for i, m in enumerate(layer):
            for other in layer[i + 1:]:
                meet = m & other
                if meet and meet not in stripped:
                    raise ContractViolation(
                        "same-layer elements meeting outside earlier layers",
                        detail={"pair": [sorted(m), sorted(other)]})
        layers.append(layer)
        remaining -= set(minimal)
    if len(layers) > n + 1:
        raise ContractViolation(
            "stratification exceeds the discreteness bound",
            detail={"layers": len(layers), "allowed": n + 1})
    return RankStratification(layers=tuple(layers))


def minimal_member(x, lattice: MeetSemilattice) -> frozenset:
    """The least semilattice element containing a ground element."""
    if x not in lattice.ground:
        raise ContractViolation("element outside the ground set", detail={"element": x})
    out = lattice.ground
    for e in lattice.elements:
        if x in e:
            out = out & e
    if out not in lattice.elements:  # pragma: no cover - closure guarantees this
        raise ContractViolation("least member escaped the semilattice")
    return out


@dataclass(frozen=True, eq=False)
class Realization:
    """Order complex of the semilattice plus the intersection-preserving data."""

    system: SetSystem
    lattice: MeetSemilattice
    strata: RankStratification
    complex: SimplicialComplex
    vertex_elements: tuple          # elements serving as vertices, sorted
    point_map: Mapping              # ground element -> Point (a vertex delta)
    include_top: bool

    @cached_property
    def _names(self) -> dict:
        return {e: element_vertex_name(e) for e in self.vertex_elements}

    @cached_property
    def _assign_cache(self) -> dict:
        return {}

    def vertex_name(self, element: frozenset) -> str:
        return self._names[element]

    def assign(self, element: frozenset) -> SimplicialComplex:
        """Full subcomplex on the down-set of a semilattice element."""
        cached = self._assign_cache.get(element)
        if cached is not None:
            return cached
        if element not in self.lattice.elements:
            raise ContractViolation("not a semilattice element",
                                    detail={"element": sorted(element)})
        verts = [self._names[e] for e in self.vertex_elements if e <= element]
        out = self.complex.full_subcomplex(verts)
        self._assign_cache[element] = out
        return out


def _chains_of_elements(elements: list) -> list:
    """All inclusion chains, as lists, among the given sets."""
    supersets = {e: [f for f in elements if e < f] for e in elements}
    chains = []

    def grow(chain):
        chains.append(list(chain))
        for f in supersets[chain[-1]]:
            chain.append(f)
            grow(chain)
            chain.pop()

    for e in elements:
        grow([e])
    return chains


def realize(system: SetSystem, include_top: bool = False) -> Realization:
    """Build the order-complex realization of a set system.

    The ground set is kept as a vertex only when forced: when it is itself
    an intersection of listed sets, when some ground element lies in no
    listed set (the point map must stay total), or on request.
    """
    lattice = meet_semilattice(system)
    strata = rank_strata(lattice, system.n)
    listed = {members for _, members in system.flat()}
    top = system.ground
    top_forced = (top in listed
                  or any(not any(x in e for e in lattice.elements - {top})
                         for x in sorted(top)))
    use_top = include_top or top_forced
    vertex_elements = [e for e in lattice.sorted_elements()
                       if use_top or e != top]
    names = {e: element_vertex_name(e) for e in vertex_elements}
    chains = _chains_of_elements(vertex_elements)
    complex_ = make_complex([[names[e] for e in chain] for chain in chains])
    point_map = {}
    for x in sorted(top):
        m = minimal_member(x, lattice)
        point_map[x] = Point.delta(names[m])
    realization = Realization(system=system, lattice=lattice, strata=strata,
                              complex=complex_,
                              vertex_elements=tuple(vertex_elements),
                              point_map=point_map, include_top=use_top)
    _check_realization(realization)
    return realization


def _check_realization(r: Realization) -> None:
    if r.complex.dimension > r.system.n:
        raise ContractViolation("order complex exceeds the dimension bound",
                                detail={"dimension": r.complex.dimension,
                                        "allowed": r.system.n})
    elements = r.lattice.sorted_elements()
    for i, g in enumerate(elements):
        for h in elements[i + 1:]:
            meet = g & h
            if not meet:
                continue
            left = r.assign(meet).simplexes
            right = r.assign(g).simplexes & r.assign(h).simplexes
            if left != right:
                raise ContractViolation(
                    "assignment does not preserve intersections",
                    detail={"pair": [sorted(g), sorted(h)]})
    for x, p in r.point_map.items():
        for g in elements:
            in_complex = p.support in r.assign(g).simplexes
            if in_complex != (x in g):
                raise ContractViolation(
                    "point map misplaces a ground element",
                    detail={"element": x, "set": sorted(g)})
