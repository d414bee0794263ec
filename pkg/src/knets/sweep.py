"""Piecewise-linear sweeping-out of a complex onto an enlarged subcomplex.

Round by round, every maximal simplex whose closure is not already covered
by the kept subcomplex together with the tracked points is punctured at an
interior point and radially collapsed onto its boundary.  The tracked
points ride along; the process stabilizes in at most 1 + dim rounds.  The
resulting retraction is kept as a replayable trace, so it can be evaluated
exactly at any point of the original realization whose trajectory avoids
the punctures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import (Point, Simplex, SimplicialComplex, barycenter,
                        simplex_sort_key)
from .errors import ContractViolation


def radial_retraction(simplex: Simplex, center: Point, x: Point) -> Point:
    """Push x away from an interior center onto the boundary of the simplex.

    The ray from the center through x exits the closed simplex where the
    first barycentric coordinate reaches zero; boundary points are fixed.
    """
    s = frozenset(simplex)
    if center.support != s:
        raise ContractViolation("puncture must be interior to the simplex",
                                detail={"support": sorted(center.support),
                                        "simplex": sorted(s)})
    if not x.support <= s:
        raise ContractViolation("point outside the closed simplex",
                                detail={"support": sorted(x.support)})
    if x == center:
        raise ContractViolation("cannot retract the puncture itself")
    t = None
    for v in sorted(s):
        cv = center[v]
        xv = x[v]
        if xv < cv:
            tv = cv / (cv - xv)
            if t is None or tv < t:
                t = tv
    # x != center and both sum to 1, so some coordinate strictly drops.
    out = {v: center[v] + t * (x[v] - center[v]) for v in s}
    return Point.of(out)


def _interior_lattice_points(simplex: Simplex, denominator: int) -> Iterable[Point]:
    """Interior points with the given common denominator, in canonical order."""
    verts = sorted(simplex)
    n = len(verts)
    # Compositions of `denominator` into n positive parts, lexicographic.
    for cuts in combinations(range(1, denominator), n - 1):
        parts = []
        prev = 0
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(denominator - prev)
        yield Point.of({v: Fraction(p, denominator) for v, p in zip(verts, parts)})


def choose_puncture(simplex: Simplex, blocked: Sequence[Point]) -> Point:
    """Deterministic interior point avoiding the blocked set.

    The barycenter when admissible; otherwise midpoints between the
    barycenter and interior lattice points at a denominator large enough
    that the finite search must succeed.
    """
    b = barycenter(simplex)
    blocked_set = set(blocked)
    if b not in blocked_set:
        return b
    denom = 1 + len(simplex) * (1 + len(blocked))
    for lattice in _interior_lattice_points(simplex, denom):
        cand = Point.combine([(Fraction(1, 2), b), (Fraction(1, 2), lattice)])
        if cand not in blocked_set:
            return cand
    raise ContractViolation("no admissible puncture found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Outcome of sweeping a complex onto a subcomplex enlarged by points."""

    source: SimplicialComplex
    kept: SimplicialComplex
    reduced: SimplicialComplex
    rounds: tuple          # per round: tuple of (simplex, puncture Point)
    images: tuple          # final positions of the input points, input order

    def evaluate(self, p: Point) -> Point:
        """Replay the retraction trace at a point of the source realization."""
        if p.support not in self.source.simplexes:
            raise ContractViolation("point outside the swept complex",
                                    detail={"support": sorted(p.support)})
        cur = p
        for entries in self.rounds:
            table = dict(entries)
            c = cur.support
            if c in table:
                d = table[c]
                if cur == d:
                    raise ContractViolation("query ray starts at a puncture",
                                            detail={"point": str(cur.coords)})
                cur = radial_retraction(c, d, cur)
        return cur


def _covered(simplex: Simplex, kept: SimplicialComplex, images: Sequence[Point]) -> bool:
    # The closure of a positive-dimensional simplex is infinite, so outside
    # the kept subcomplex only a vertex can be covered by finitely many
    # tracked points.
    if simplex in kept.simplexes:
        return True
    if len(simplex) == 1:
        v = next(iter(simplex))
        return any(img.coords == ((v, Fraction(1)),) for img in images)
    return False


def sweep_out(source: SimplicialComplex, kept: SimplicialComplex,
              points: Sequence[Point]) -> SweepResult:
    """Collapse ``source`` onto ``kept`` enlarged by the tracked points."""
    if not source.has_subcomplex(kept):
        raise ContractViolation("kept complex is not a subcomplex of the source")
    for p in points:
        if p.support not in source.simplexes:
            raise ContractViolation("tracked point outside the source realization",
                                    detail={"support": sorted(p.support)})
    current = source
    images = list(points)
    rounds = []
    max_rounds = 1 + source.dimension
    while True:
        removable = [s for s in current.maximal_simplexes
                     if not _covered(s, kept, images)]
        if not removable:
            break
        if len(rounds) >= max_rounds:
            raise ContractViolation("sweep failed to stabilize")  # pragma: no cover
        entries = []
        for s in sorted(removable, key=simplex_sort_key):
            entries.append((s, choose_puncture(s, images)))
        table = dict(entries)
        images = [radial_retraction(p.support, table[p.support], p)
                  if p.support in table else p for p in images]
        remaining = current.simplexes - set(table)
        current = SimplicialComplex(frozenset(remaining))
        rounds.append(tuple(entries))
    return SweepResult(source=source, kept=kept, reduced=current,
                       rounds=tuple(rounds), images=tuple(images))
