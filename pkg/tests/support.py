"""Shared enumeration and generation helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from knets.complexes import Point, SimplicialComplex, make_complex
from knets.realization import SetSystem, set_system

VERTS = "abcde"


def _antichains(universe):
    """All antichains (as lists) over the given pairwise-distinct sets."""
    out = [[]]

    def rec(start, chosen):
        for i in range(start, len(universe)):
            s = universe[i]
            if all(not (s <= t or t <= s) for t in chosen):
                chosen.append(s)
                out.append(list(chosen))
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def all_complexes(max_vertices):
    """Every simplicial complex using exactly the first k labels, k <= max.

    Complexes are antichains of maximal simplexes covering the vertex set;
    every property under test is invariant under vertex relabeling, so
    enumerating one labeling per structure is exhaustive.
    """
    out = []
    for k in range(1, max_vertices + 1):
        labels = VERTS[:k]
        universe = [frozenset(c) for size in range(k, 0, -1)
                    for c in combinations(labels, size)]
        for antichain in _antichains(universe):
            if antichain and frozenset().union(*antichain) == frozenset(labels):
                out.append(make_complex(antichain))
    return out


def rational_points(k: SimplicialComplex, max_denominator: int):
    """All realization points with coordinates over denominators <= bound."""
    pts = set()
    for s in k.simplexes:
        verts = sorted(s)
        n = len(verts)
        for den in range(n, max_denominator + 1):
            for cuts in combinations(range(1, den), n - 1):
                bounds = (0,) + cuts + (den,)
                parts = [b - a for a, b in zip(bounds, bounds[1:])]
                pts.add(Point.of({v: Fraction(p, den)
                                  for v, p in zip(verts, parts)}))
    return sorted(pts, key=lambda p: p.coords)


def random_complex(rng: random.Random, max_vertices=5) -> SimplicialComplex:
    k = rng.randint(1, max_vertices)
    labels = list(VERTS[:k])
    tops = []
    for _ in range(rng.randint(1, 4)):
        size = rng.randint(1, k)
        tops.append(rng.sample(labels, size))
    return make_complex(tops)


def random_subcomplex(rng: random.Random, k: SimplicialComplex) -> SimplicialComplex:
    simplexes = sorted(k.simplexes, key=lambda s: tuple(sorted(s)))
    picks = [s for s in simplexes if rng.random() < 0.4]
    if not picks:
        picks = [rng.choice(simplexes)]
    return make_complex(picks)


def random_point(rng: random.Random, k: SimplicialComplex) -> Point:
    simplexes = sorted(k.simplexes, key=lambda s: tuple(sorted(s)))
    s = rng.choice(simplexes)
    weights = {v: Fraction(rng.randint(1, 6)) for v in s}
    total = sum(weights.values())
    return Point.of({v: w / total for v, w in weights.items()})


def random_set_system(rng: random.Random, ground_size=8, max_sets=5,
                      max_groups=3) -> SetSystem:
    ground = [str(i) for i in range(1, ground_size + 1)]
    n_groups = rng.randint(1, max_groups)
    budget = rng.randint(1, max_sets)
    groups = []
    counter = 0
    for g in range(n_groups):
        group = []
        used = set()
        for _ in range(rng.randint(0, budget)):
            size = rng.randint(1, max(1, ground_size // 2))
            members = frozenset(rng.sample(ground, size)) - used
            if not members:
                continue
            counter += 1
            group.append(("S%d" % counter, members))
            used |= members
            if counter >= budget:
                break
        groups.append(group)
        if counter >= budget:
            break
    if counter == 0:
        groups = [[("S1", frozenset(rng.sample(ground, 1)))]]
    return set_system(ground, groups)


def all_tiny_systems(ground=("1", "2", "3"), max_sets=3):
    """Every system of distinct nonempty subsets split into valid groups."""
    universe = []
    for size in range(1, len(ground) + 1):
        universe.extend(frozenset(c) for c in combinations(ground, size))
    systems = []
    for count in range(1, max_sets + 1):
        for sets in combinations(universe, count):
            for splits in _ordered_partitions(list(sets)):
                ok = all(not (a & b) for group in splits
                         for i, a in enumerate(group) for b in group[i + 1:])
                if not ok:
                    continue
                groups = []
                idx = 0
                for group in splits:
                    named = []
                    for members in group:
                        idx += 1
                        named.append(("S%d" % idx, members))
                    groups.append(named)
                systems.append(set_system(ground, groups))
    return systems


def _ordered_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _ordered_partitions(rest):
        for i, group in enumerate(sub):
            yield sub[:i] + [[first] + group] + sub[i + 1:]
        yield [[first]] + sub
