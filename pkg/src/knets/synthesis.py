"""Binary-family synthesis and verification for layered set systems.

A family of sets is binary when every linked (pairwise-intersecting)
subfamily has a common element; for finite families this reduces to every
maximal clique of the intersection graph having nonempty total
intersection.  Synthesis refines each later-level set of a layered system
against the blocks built so far, by realizing the accumulated system as an
order complex, covering the set's assigned subcomplex with second
subdivision stars, and pulling the stars back through the point map.  On a
finite discrete ground the pullbacks are exactly the fibers of the least
semilattice member, which makes every refined level a partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import networkx as nx

from .complexes import Simplex
from .errors import ContractViolation
from .realization import SetSystem, element_vertex_name, realize, set_system
from .stars import st2_membership, star_cover


@dataclass(frozen=True)
class NamedSet:
    name: str
    members: frozenset


@dataclass(frozen=True, eq=False)
class BinaryFamilyReport:
    """Verdict of a binarity check, with optional synthesis bookkeeping."""

    family: tuple                    # NamedSet, canonical order
    levels: tuple                    # tuple of tuples of names, or ()
    checked_subfamilies: int
    violations: tuple                # tuples of names, sorted; empty iff binary
    refinement_table: tuple          # (input name, tuple of block names), or ()
    level_accounting: tuple          # per level: dict with declared/achieved bounds

    @property
    def binary(self) -> bool:
        return not self.violations

    def table_of(self, name: str) -> tuple:
        for key, blocks in self.refinement_table:
            if key == name:
                return blocks
        raise ContractViolation("input set missing from the refinement table",
                                detail={"name": name})


def _as_named(family: Iterable) -> list:
    out = []
    for item in family:
        if isinstance(item, NamedSet):
            out.append(item)
        else:
            name, members = item
            out.append(NamedSet(name=name, members=frozenset(members)))
    names = [s.name for s in out]
    if len(set(names)) != len(names):
        raise ContractViolation("duplicate names in family")
    return sorted(out, key=lambda s: s.name)


def maximal_linked_subfamilies(family: Sequence[NamedSet]) -> list:
    """Maximal cliques of the intersection graph, canonically ordered.

    Every linked subfamily extends to a maximal clique whose intersection
    it contains, so checking maximal cliques decides binarity.  Empty sets
    never belong to a linked subfamily and are left out.
    """
    graph = nx.Graph()
    by_name = {s.name: s for s in family}
    nonempty = [s for s in family if s.members]
    graph.add_nodes_from(s.name for s in nonempty)
    for i, a in enumerate(nonempty):
        for b in nonempty[i + 1:]:
            if a.members & b.members:
                graph.add_edge(a.name, b.name)
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(graph)]
    cliques.sort()
    return [(c, frozenset.intersection(*(by_name[n].members for n in c)))
            for c in cliques]


def verify_binary(family: Iterable, levels: tuple = ()) -> BinaryFamilyReport:
    """Check that every linked subfamily is centered."""
    named = _as_named(family)
    cliques = maximal_linked_subfamilies(named)
    violations = tuple(c for c, meet in cliques if not meet)
    return BinaryFamilyReport(family=tuple(named), levels=levels,
                              checked_subfamilies=len(cliques),
                              violations=violations,
                              refinement_table=(), level_accounting=())


def _block_name(parent: str, element: frozenset) -> str:
    return "%s@{%s}" % (parent, ",".join(sorted(element)))


def key_refinement(prior: SetSystem, target: frozenset, name: str = "C") -> tuple:
    """Refine one set against a system into star-pullback blocks.

    The target joins the system as one extra group; the realization's point
    map pulls the star cover of its assigned subcomplex back into the
    ground set.  Every block is a fiber of the least-member map inside the
    target, the blocks cover the target, and any linked family mixing prior
    sets with blocks meets inside the target.
    """
    if not target <= prior.ground:
        raise ContractViolation("refinement target escapes the ground",
                                detail={"extra": sorted(target - prior.ground)})
    if not target:
        return ()
    flat_names = {n for n, _ in prior.flat()}
    tag = name
    while tag in flat_names:
        tag = "^" + tag
    extended = SetSystem(ground=prior.ground,
                         groups=prior.groups + (((tag, target),),))
    realization = realize(extended)
    assigned = realization.assign(target)
    cover = star_cover(assigned, realization.complex)
    vertex_of = {element_vertex_name(e): e for e in realization.vertex_elements}
    blocks = []
    for base in cover.bases:
        members = frozenset(x for x in sorted(target)
                            if st2_membership(realization.point_map[x], base, assigned))
        if not members:
            continue
        # Nonempty pullbacks come from single-vertex bases: the fiber of the
        # least-member map at that vertex's semilattice element.
        element = vertex_of[next(iter(base))] if len(base) == 1 else frozenset()
        blocks.append(NamedSet(name=_block_name(name, element), members=members))
    blocks.sort(key=lambda b: b.name)
    _check_key_property(prior, target, blocks)
    return tuple(blocks)


def _check_key_property(prior: SetSystem, target: frozenset,
                        blocks: Sequence[NamedSet]) -> None:
    union = frozenset().union(*(b.members for b in blocks)) if blocks else frozenset()
    if union != target:
        raise ContractViolation("blocks do not cover the refined set",
                                detail={"missing": sorted(target - union)})
    block_names = {b.name for b in blocks}
    family = [NamedSet(n, m) for n, m in prior.flat()] + list(blocks)
    for clique, meet in maximal_linked_subfamilies(family):
        if set(clique) & block_names and not meet:
            raise ContractViolation(
                "linked family through a block has empty intersection",
                detail={"clique": list(clique)})


def synthesize(system: SetSystem) -> BinaryFamilyReport:
    """Turn a layered system into a binary family refining every input set.

    The first level is taken verbatim; each later input set is refined
    against everything built before it.  The report records the refinement
    table and, per level, the declared discreteness bound of the
    construction next to the single disjoint group actually produced.
    """
    if not system.groups:
        return BinaryFamilyReport(family=(), levels=(), checked_subfamilies=0,
                                  violations=(), refinement_table=(),
                                  level_accounting=())
    built_groups = []
    levels = []
    table = []
    accounting = []
    for level, group in enumerate(system.groups):
        if level == 0:
            blocks = [NamedSet(name, members) for name, members in group]
            for b in blocks:
                table.append((b.name, (b.name,)))
        else:
            prior = SetSystem(ground=system.ground, groups=tuple(built_groups))
            blocks = []
            for name, members in group:
                refined = key_refinement(prior, members, name=name)
                table.append((name, tuple(b.name for b in refined)))
                blocks.extend(refined)
        built_groups.append(tuple((b.name, b.members) for b in blocks))
        levels.append(tuple(b.name for b in blocks))
        accounting.append({"level": level,
                           "declared_discreteness": 2 ** (level + 1),
                           "achieved_groups": 1})
    family = [NamedSet(n, m) for g in built_groups for n, m in g]
    report = verify_binary(family, levels=tuple(levels))
    return BinaryFamilyReport(family=report.family, levels=tuple(levels),
                              checked_subfamilies=report.checked_subfamilies,
                              violations=report.violations,
                              refinement_table=tuple(table),
                              level_accounting=tuple(accounting))


def verify_refinement(report: BinaryFamilyReport, system: SetSystem) -> bool:
    """Every input set must be exactly the union of its assigned blocks."""
    by_name = {s.name: s.members for s in report.family}
    table = dict(report.refinement_table)
    for name, members in system.flat():
        if name not in table:
            return False
        blocks = table[name]
        if any(b not in by_name for b in blocks):
            return False
        union = frozenset().union(*(by_name[b] for b in blocks)) if blocks else frozenset()
        if union != members:
            return False
    return True
