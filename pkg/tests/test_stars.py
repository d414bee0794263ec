"""Star calculus: membership tests, witnesses, covers, separation."""

from fractions import Fraction

import pytest

from knets import cells
from knets.complexes import Point, barycenter, l1_distance, make_complex
from knets.errors import ContractViolation
from knets.stars import (Chain, DisjointStars, Star, chain_witness,
                         discreteness_certificate, in_sd_cell,
                         linked_intersection_witness, linked_stars_chain,
                         sd_cells, st1_membership, st2_membership,
                         st2_membership_oracle, star_cover,
                         star_meets_subcomplex)

F = Fraction
EDGE = make_complex([["a", "b"]])
TRIANGLE = make_complex([["a", "b", "c"]])
PATH = make_complex([["a", "b"], ["b", "c"]])


def pt(**kw):
    return Point.of({v: F(num, den) for v, (num, den) in kw.items()})


# --- chains and first-subdivision cells --------------------------------------


def test_chain_validation():
    Chain((frozenset("a"), frozenset("ab")))
    with pytest.raises(ContractViolation):
        Chain((frozenset("ab"), frozenset("a")))
    with pytest.raises(ContractViolation):
        Chain(())


def test_chain_saturated_flag():
    assert Chain((frozenset("a"), frozenset("ab"))).saturated
    assert not Chain((frozenset("a"), frozenset("abc"))).saturated


def test_sd_cells_counts():
    assert len(sd_cells(frozenset("a"), TRIANGLE)) == 1
    two = sd_cells(frozenset("ab"), TRIANGLE)
    assert [c.simplexes for c in two] == [
        (frozenset("a"), frozenset("ab")), (frozenset("b"), frozenset("ab"))]
    assert len(sd_cells(frozenset("abc"), TRIANGLE)) == 6


def test_sd_cells_requires_membership():
    with pytest.raises(ContractViolation):
        sd_cells(frozenset("ac"), PATH)


def test_in_sd_cell_examples():
    cell = Chain((frozenset("a"), frozenset("ab")))
    assert in_sd_cell(barycenter(frozenset("ab")), cell)
    assert not in_sd_cell(Point.delta("b"), cell)
    # exact solve: (2/3, 1/3) = 1/3 * delta_a + 2/3 * midpoint
    assert in_sd_cell(pt(a=(2, 3), b=(1, 3)), cell)
    assert not in_sd_cell(pt(a=(1, 3), b=(2, 3)), cell)


def test_in_sd_cell_rejects_unsaturated():
    with pytest.raises(ContractViolation):
        in_sd_cell(Point.delta("a"), Chain((frozenset("a"), frozenset("abc"))))


def test_st1_membership():
    assert st1_membership(Point.delta("a"), "a", TRIANGLE)
    assert st1_membership(barycenter(frozenset("ab")), "a", TRIANGLE)
    assert not st1_membership(pt(a=(1, 3), b=(2, 3)), "a", TRIANGLE)
    assert not st1_membership(Point.delta("a"), "c", PATH)  # {a,c} not a simplex


# --- second-subdivision star membership --------------------------------------


def test_st2_membership_examples():
    assert st2_membership(Point.delta("a"), frozenset("a"), TRIANGLE)
    p = pt(a=(2, 3), b=(1, 3))
    assert not st2_membership(p, frozenset("a"), EDGE)
    assert st2_membership(p, frozenset("ab"), EDGE)
    for tau in TRIANGLE.sorted_simplexes():
        assert st2_membership(barycenter(tau), tau, TRIANGLE)


def test_st2_membership_rejects_unknown_base():
    with pytest.raises(ContractViolation):
        st2_membership(Point.delta("a"), frozenset("ac"), PATH)


def test_st2_oracle_examples():
    assert not st2_membership_oracle(Point.delta("b"), frozenset("a"), EDGE)
    # 1/2 * b_{a} + 1/2 * b_{ab}: chain weights (1/2, 1/2), max at position 1
    w = Point.combine([(F(1, 2), Point.delta("a")),
                      (F(1, 2), barycenter(frozenset("ab")))])
    assert st2_membership_oracle(w, frozenset("a"), EDGE)


def test_st2_oracle_agreement_on_grid():
    # denominator <= 4 points of the path complex, every base
    pts = []
    for s in PATH.simplexes:
        verts = sorted(s)
        for den in range(len(verts), 5):
            from itertools import combinations
            for cuts in combinations(range(1, den), len(verts) - 1):
                bounds = (0,) + cuts + (den,)
                pts.append(Point.of({v: F(b - a, den) for v, a, b
                                     in zip(verts, bounds, bounds[1:])}))
    for p in pts:
        for tau in PATH.sorted_simplexes():
            assert st2_membership(p, tau, PATH) == st2_membership_oracle(p, tau, PATH)


def test_stars_span_adjacent_maximal_simplexes():
    # the star of the shared vertex reaches into both edges of the path
    p = pt(b=(7, 8), c=(1, 8))
    q = pt(b=(7, 8), a=(1, 8))
    for x in (p, q):
        assert st2_membership(x, frozenset("b"), PATH)


# --- linked stars and witnesses ----------------------------------------------


def test_linked_stars_chain_examples():
    res = linked_stars_chain([frozenset("a"), frozenset("ab")], EDGE)
    assert isinstance(res, Chain)
    assert res.simplexes == (frozenset("a"), frozenset("ab"))

    res = linked_stars_chain([frozenset("a"), frozenset("b")], EDGE)
    assert res == DisjointStars(frozenset("a"), frozenset("b"))


def test_disjoint_stars_are_geometrically_disjoint():
    # the failure verdict is backed by a positive exact distance
    assert cells.star_l1_distance(frozenset("a"), frozenset("b"), EDGE) > 0
    assert cells.star_l1_distance(frozenset("ab"), frozenset("bc"), PATH) > 0
    assert cells.star_l1_distance(frozenset("ab"), frozenset("c"), TRIANGLE) > 0


def test_comparable_stars_do_intersect_geometrically():
    assert cells.star_l1_distance(frozenset("a"), frozenset("ab"), TRIANGLE) == 0
    assert cells.star_l1_distance(frozenset("b"), frozenset("abc"), TRIANGLE) == 0


def test_chain_witness_frozen_values():
    assert chain_witness([frozenset("a")]) == Point.delta("a")
    assert chain_witness([frozenset("a"), frozenset("ab")]) == pt(a=(3, 4), b=(1, 4))
    w = chain_witness([frozenset("a"), frozenset("ab"), frozenset("abc")])
    assert w == pt(a=(11, 18), b=(5, 18), c=(1, 9))


def test_chain_witness_membership():
    chain = Chain((frozenset("a"), frozenset("ab"), frozenset("abc")))
    w = chain_witness(chain)
    for s in chain:
        assert st2_membership(w, s, TRIANGLE)
        assert st2_membership_oracle(w, s, TRIANGLE)


def test_saturated_chain_witness_lies_in_a_cell_of_the_top():
    chain = Chain((frozenset("b"), frozenset("ab"), frozenset("abc")))
    w = chain_witness(chain)
    assert cells.cell_of_point(w, frozenset("abc")) is not None


def test_star_meets_subcomplex_examples():
    assert star_meets_subcomplex(frozenset("abc"), frozenset("ab"), TRIANGLE)
    assert not star_meets_subcomplex(frozenset("a"), frozenset("ab"), TRIANGLE)
    # geometric cross-check at cell level
    assert cells.closure_star_l1_distance(frozenset("abc"), frozenset("ab"),
                                          TRIANGLE) == 0
    assert cells.closure_star_l1_distance(frozenset("a"), frozenset("ab"),
                                          TRIANGLE) > 0


def test_star_meets_subcomplex_exhaustive_small():
    for k in (EDGE, TRIANGLE, PATH):
        for s in k.sorted_simplexes():
            for t in k.sorted_simplexes():
                expected = cells.closure_star_l1_distance(s, t, k) == 0
                assert star_meets_subcomplex(s, t, k) == expected == (t <= s)


# --- covers and separation ----------------------------------------------------


def test_star_cover_examples():
    fam = star_cover(TRIANGLE, TRIANGLE)
    assert len(fam.bases) == 7
    assert {card: len(bases) for card, bases in fam.groups.items()} == {1: 3, 2: 3, 3: 1}
    single = make_complex([["a"]])
    assert star_cover(single, single).bases == (frozenset("a"),)


def test_star_cover_requires_subcomplex():
    with pytest.raises(ContractViolation):
        star_cover(TRIANGLE, PATH)


def test_cover_property_cells_lie_in_first_reordered_star():
    # dimension <= 2: every maximal second-subdivision cell sits inside the
    # star of the chain element its barycenter reordering starts at
    for k in (EDGE, PATH, TRIANGLE):
        from itertools import permutations
        for w in k.maximal_simplexes:
            n = len(w)
            for perm in permutations(sorted(w)):
                prefixes = [frozenset(perm[:i + 1]) for i in range(n)]
                bars = [barycenter(p) for p in prefixes]
                for order in permutations(range(n)):
                    base = prefixes[order[0]]
                    acc = {}
                    for count, idx in enumerate(order, start=1):
                        for v, c in bars[idx].coords:
                            acc[v] = acc.get(v, F(0)) + c
                        vertex = Point.of({v: c / count for v, c in acc.items()})
                        assert st2_membership(vertex, base, k)


def test_union_of_stars_covers_all_grid_points():
    for p in [pt(a=(1, 2), b=(1, 2)), pt(a=(5, 6), b=(1, 6)), Point.delta("a"),
              pt(a=(1, 3), b=(1, 3), c=(1, 3)), pt(a=(1, 6), b=(2, 6), c=(3, 6))]:
        assert any(st2_membership(p, tau, TRIANGLE)
                   for tau in TRIANGLE.sorted_simplexes())


def test_discreteness_certificate_frozen_minima():
    edge_cert = discreteness_certificate(star_cover(EDGE, EDGE))
    assert edge_cert.n == 2 and edge_cert.bound == F(1, 4)
    by_card = {g.cardinality: g.min_distance for g in edge_cert.groups}
    assert by_card == {1: F(1), 2: None}

    tri_cert = discreteness_certificate(star_cover(TRIANGLE, TRIANGLE))
    assert tri_cert.n == 3 and tri_cert.bound == F(1, 9)
    by_card = {g.cardinality: g.min_distance for g in tri_cert.groups}
    assert by_card == {1: F(2, 3), 2: F(1, 3), 3: None}
    assert tri_cert.certified


def test_triangle_vertex_group_minimum_attained_by_witness_points():
    # the closest vertex-star points are the chain witnesses through the
    # shared maximal simplex; their distance matches the exact LP minimum
    wa = chain_witness([frozenset("a"), frozenset("ab"), frozenset("abc")])
    wb = chain_witness([frozenset("b"), frozenset("ab"), frozenset("abc")])
    assert l1_distance(wa, wb) == F(2, 3)


def test_linked_intersection_witness_examples():
    w = linked_intersection_witness(
        [Star(frozenset("a")), Star(frozenset("ab"))], EDGE)
    assert w.point == pt(a=(3, 4), b=(1, 4))

    sub = make_complex([["a", "b"]])
    w = linked_intersection_witness([sub, Star(frozenset("a"))], TRIANGLE)
    assert w.point.support <= frozenset("ab")
    assert frozenset("a") <= w.point.support

    with pytest.raises(ContractViolation):
        linked_intersection_witness(
            [Star(frozenset("a")), Star(frozenset("b"))], EDGE)
    with pytest.raises(ContractViolation):
        linked_intersection_witness([sub], TRIANGLE)  # no star member


def test_subdivision_vertex_chains_match_cell_enumeration():
    # combinatorial identification of subdivision vertices with chains
    for k in (EDGE, PATH, TRIANGLE):
        for tau in k.sorted_simplexes():
            from_cells = cells.star_vertex_chains_from_cells(tau, k)
            direct = cells.chains_through(tau, k)
            assert from_cells == direct


def test_chain_index_matches_geometric_star_intersections():
    for k in (EDGE, PATH, TRIANGLE):
        idx = cells.ChainIndex(k)
        for a in k.sorted_simplexes():
            for b in k.sorted_simplexes():
                geo = cells.star_l1_distance(a, b, k) == 0
                assert idx.stars_intersect(a, b) == geo
