"""Ready-made binary families: order-convex sets and product cylinders.

Over a finite linear order, the closed order-convex sets form a binary
family with a constructive common point for every linked subfamily: pick
the least element of each pairwise intersection, take per-member envelopes,
and cross them.  Over a finite product of grounds carrying binary families,
the cylinders over boxes of bounded coordinate depth, restricted to a
discretely dense set of rows, again form a binary family; witnesses come
from per-coordinate intersections matched against the dense rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product as iter_product
from typing import Iterable, Sequence, Union

from .errors import ContractViolation
from .synthesis import NamedSet, maximal_linked_subfamilies, verify_binary

FULL_FACTOR_NAME = "^full"


@dataclass(frozen=True)
class OrderedGround:
    """A finite strict linear order, listed ascending."""

    elements: tuple

    def __post_init__(self):
        if not self.elements:
            raise ContractViolation("ordered ground must be nonempty")
        if len(set(self.elements)) != len(self.elements):
            raise ContractViolation("ordered ground has duplicates")

    @cached_property
    def position(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def interval(self, low, high) -> frozenset:
        i, j = self.position[low], self.position[high]
        if i > j:
            raise ContractViolation("empty order interval",
                                    detail={"low": low, "high": high})
        return frozenset(self.elements[i:j + 1])

    def le(self, a, b) -> bool:
        return self.position[a] <= self.position[b]


@dataclass(frozen=True)
class ConvexSet:
    """A nonempty order-convex subset: a run of consecutive positions."""

    ground: OrderedGround
    members: frozenset

    def __post_init__(self):
        if not self.members:
            raise ContractViolation("convex sets here are nonempty")
        pos = sorted(self.ground.position[x] for x in self.members)
        if pos[-1] - pos[0] + 1 != len(pos):
            raise ContractViolation("set is not order-convex",
                                    detail={"members": sorted(self.members)})

    @property
    def low(self):
        return min(self.members, key=self.ground.position.get)

    @property
    def high(self):
        return max(self.members, key=self.ground.position.get)


def go_witness(sets: Sequence[ConvexSet]) -> tuple:
    """An order interval inside every member of a linked convex family.

    For each pair choose the least point of the intersection; per member
    take the span of its chosen points; the maximum of the left endpoints
    and the minimum of the right endpoints bound a common interval.
    """
    if not sets:
        raise ContractViolation("empty family")
    ground = sets[0].ground
    for s in sets:
        if s.ground is not ground and s.ground != ground:
            raise ContractViolation("convex sets over different grounds")
    pos = ground.position
    n = len(sets)
    chosen = {}
    for i in range(n):
        for j in range(i, n):
            meet = sets[i].members & sets[j].members
            if not meet:
                raise ContractViolation("family is not linked",
                                        detail={"pair": [sorted(sets[i].members),
                                                         sorted(sets[j].members)]})
            chosen[(i, j)] = min(meet, key=pos.get)
    low = None
    high = None
    for i in range(n):
        partners = [chosen[(min(i, j), max(i, j))] for j in range(n)]
        a_i = min(partners, key=pos.get)
        b_i = max(partners, key=pos.get)
        low = a_i if low is None or pos[a_i] > pos[low] else low
        high = b_i if high is None or pos[b_i] < pos[high] else high
    if pos[low] > pos[high]:  # pragma: no cover - convexity forbids this
        raise ContractViolation("witness interval collapsed")
    interval = ground.interval(low, high)
    for s in sets:
        if not interval <= s.members:
            raise ContractViolation("witness interval escapes a member",
                                    detail={"members": sorted(s.members)})
    return (low, high)


def all_convex_sets(ground: OrderedGround) -> list:
    """Every nonempty order-convex subset, as named sets."""
    out = []
    n = len(ground.elements)
    for i in range(n):
        for j in range(i, n):
            members = frozenset(ground.elements[i:j + 1])
            out.append(NamedSet(name="[%s,%s]" % (ground.elements[i], ground.elements[j]),
                                members=members))
    return out


def go_binary_family(ground: OrderedGround, max_size: int = 64):
    """All order-convex sets plus a binarity report with per-clique witnesses.

    The family is quadratic in the ground size, hence the bound.  Returns
    (family, report, witnesses) where witnesses maps each maximal linked
    subfamily to its constructed interval.
    """
    if len(ground.elements) > max_size:
        raise ContractViolation("ground exceeds the configured bound",
                                detail={"size": len(ground.elements),
                                        "bound": max_size})
    family = all_convex_sets(ground)
    report = verify_binary(family)
    by_name = {s.name: s for s in family}
    witnesses = []
    for clique, meet in maximal_linked_subfamilies(family):
        convex = [ConvexSet(ground, by_name[n].members) for n in clique]
        low, high = go_witness(convex)
        if not ground.interval(low, high) <= meet:  # pragma: no cover
            raise ContractViolation("witness escapes the clique intersection")
        witnesses.append((clique, (low, high)))
    return family, report, tuple(witnesses)


# ---------------------------------------------------------------------------
# products


@dataclass(frozen=True)
class Factor:
    """One coordinate: its ground and a named family over it."""

    ground: tuple
    family: tuple  # NamedSet

    def __post_init__(self):
        if not self.ground:
            raise ContractViolation("factor ground must be nonempty")
        if len(set(self.ground)) != len(self.ground):
            raise ContractViolation("factor ground has duplicates")
        names = [s.name for s in self.family]
        if len(set(names)) != len(names):
            raise ContractViolation("duplicate names in a factor family")
        g = frozenset(self.ground)
        for s in self.family:
            if not s.members <= g:
                raise ContractViolation("factor set escapes its ground",
                                        detail={"name": s.name})


def _augment_full(factor: Factor) -> Factor:
    g = frozenset(factor.ground)
    if any(s.members == g for s in factor.family):
        return factor
    return Factor(ground=factor.ground,
                  family=factor.family + (NamedSet(FULL_FACTOR_NAME, g),))


@dataclass(frozen=True)
class CylinderFamily:
    """Factors, explicit dense rows, and the cylinder coordinate depth."""

    factors: tuple           # Factor, full ground always a member family set
    dense: tuple             # rows: tuples aligned with the factor order
    depth: int

    def __post_init__(self):
        if not self.factors:
            raise ContractViolation("a product needs at least one factor")
        if not 1 <= self.depth <= len(self.factors):
            raise ContractViolation("depth must be between 1 and the factor count",
                                    detail={"depth": self.depth})
        if len(set(self.dense)) != len(self.dense):
            raise ContractViolation("duplicate dense rows")
        for row in self.dense:
            if len(row) != len(self.factors):
                raise ContractViolation("dense row has wrong arity",
                                        detail={"row": list(row)})
            for x, f in zip(row, self.factors):
                if x not in f.ground:
                    raise ContractViolation("dense row escapes a factor ground",
                                            detail={"row": list(row), "value": x})


def cylinder_family(factors: Iterable, dense: Iterable, depth: Union[int, None] = None) -> CylinderFamily:
    """Normalize factors (adding full-ground members) into a CylinderFamily."""
    fs = tuple(_augment_full(f if isinstance(f, Factor) else Factor(*f))
               for f in factors)
    dense_rows = tuple(tuple(row) for row in dense)
    return CylinderFamily(factors=fs, dense=dense_rows,
                          depth=len(fs) if depth is None else depth)


def full_product_rows(factors: Sequence[Factor]) -> tuple:
    return tuple(iter_product(*(f.ground for f in factors)))


@dataclass(frozen=True, eq=False)
class ProductResult:
    cylinders: tuple         # NamedSet over dense rows
    patterns: tuple          # (name, ((index, set name), ...)) per cylinder
    report: object
    witnesses: tuple         # (clique names, witness row or None)
    empty_patterns: int


def _check_density(cyl: CylinderFamily) -> None:
    indices = range(len(cyl.factors))
    for size in range(1, cyl.depth + 1):
        for coords in combinations(indices, size):
            for values in iter_product(*(cyl.factors[i].ground for i in coords)):
                if not any(all(row[i] == v for i, v in zip(coords, values))
                           for row in cyl.dense):
                    raise ContractViolation(
                        "dense set misses a coordinate pattern",
                        detail={"coordinates": list(coords),
                                "values": list(values)})


def product_knetwork(cyl: CylinderFamily) -> ProductResult:
    """Cylinders over bounded-depth boxes, restricted to the dense rows.

    Factor families must be binary and the dense rows must realize every
    value pattern up to the declared depth; both are rechecked here with
    diagnostics.  Binarity of the resulting family is decided extensionally
    on the rows, and each maximal linked subfamily additionally gets a
    constructive witness: per-coordinate intersections of the factor sets,
    matched against a dense row, whenever such a row exists.
    """
    for i, f in enumerate(cyl.factors):
        rep = verify_binary(f.family)
        if not rep.binary:
            raise ContractViolation("factor family is not binary",
                                    detail={"factor": i,
                                            "violations": [list(v) for v in rep.violations]})
    _check_density(cyl)

    indices = range(len(cyl.factors))
    by_factor = [{s.name: s.members for s in f.family} for f in cyl.factors]
    seen = {}
    order = []
    for size in range(0, cyl.depth + 1):
        for coords in combinations(indices, size):
            for choice in iter_product(*(sorted(by_factor[i]) for i in coords)):
                pattern = tuple(zip(coords, choice))
                extent = frozenset(
                    row for row in cyl.dense
                    if all(row[i] in by_factor[i][n] for i, n in pattern))
                if not extent:
                    seen.setdefault(extent, None)
                    continue
                if extent not in seen:
                    name = "all" if not pattern else \
                        ";".join("%d=%s" % (i, n) for i, n in pattern)
                    seen[extent] = (name, pattern)
                    order.append(extent)
    empty_patterns = 1 if None in seen.values() else 0
    cylinders = tuple(NamedSet(name=seen[e][0], members=e) for e in order)
    patterns = tuple((seen[e][0], seen[e][1]) for e in order)
    report = verify_binary(cylinders)

    pattern_of = dict(patterns)
    witnesses = []
    for clique, meet in maximal_linked_subfamilies(cylinders):
        domain = sorted({i for n in clique for i, _ in pattern_of[n]})
        row = _constructive_row(cyl, by_factor, pattern_of, clique, domain)
        if row is not None and row not in meet:  # pragma: no cover
            raise ContractViolation("constructive witness escapes the intersection",
                                    detail={"clique": list(clique)})
        witnesses.append((clique, row))
    return ProductResult(cylinders=cylinders, patterns=patterns, report=report,
                         witnesses=tuple(witnesses), empty_patterns=empty_patterns)


def _constructive_row(cyl, by_factor, pattern_of, clique, domain):
    # Per-coordinate clique intersections give one factor value each; the
    # dense rows supply an element matching all of them when the pattern
    # depth allows it.
    targets = {}
    for i in domain:
        sets = [by_factor[i][dict(pattern_of[n]).get(i, FULL_FACTOR_NAME)]
                if dict(pattern_of[n]).get(i) is not None
                else frozenset(cyl.factors[i].ground)
                for n in clique]
        common = frozenset(cyl.factors[i].ground)
        for s in sets:
            common &= s
        if not common:
            return None
        targets[i] = next(x for x in cyl.factors[i].ground if x in common)
    for row in cyl.dense:
        if all(row[i] == v for i, v in targets.items()):
            return row
    return None
