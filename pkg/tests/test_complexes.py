"""Core complex and point operations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knets.complexes import (Point, barycenter, carrier, cone, join,
                             l1_distance, make_complex, make_simplex)
from knets.errors import ContractViolation


def test_make_complex_triangle_closure():
    k = make_complex([["a", "b", "c"]])
    assert len(k) == 7
    assert k.dimension == 2
    assert frozenset("ab") in k and frozenset("c") in k


def test_make_complex_single_vertex():
    k = make_complex([["a"]])
    assert len(k) == 1
    assert k.dimension == 0


def test_make_complex_two_edges():
    k = make_complex([["a", "b"], ["b", "c"]])
    assert len(k) == 5
    assert k.dimension == 1
    assert k.maximal_simplexes == (frozenset("ab"), frozenset("bc"))


def test_make_complex_idempotent():
    k = make_complex([["a", "b"], ["b", "c", "d"]])
    again = make_complex(k.simplexes)
    assert again.simplexes == k.simplexes


def test_empty_simplex_rejected():
    with pytest.raises(ContractViolation):
        make_simplex([])
    with pytest.raises(ContractViolation):
        make_complex([[]])


def test_dimension_examples():
    assert make_complex([["a", "b", "c"]]).dimension == 2
    assert make_complex([["a"]]).dimension == 0
    assert make_complex([["a", "b"], ["c", "d"]]).dimension == 1


def test_barycenter_examples():
    assert barycenter(frozenset("a")) == Point.delta("a")
    assert barycenter(frozenset("ab")).mapping() == {
        "a": Fraction(1, 2), "b": Fraction(1, 2)}
    third = Fraction(1, 3)
    assert barycenter(frozenset("abc")).mapping() == {
        "a": third, "b": third, "c": third}


def test_join_examples():
    e = join(make_complex([["a"]]), make_complex([["b"]]))
    assert e.simplexes == make_complex([["a", "b"]]).simplexes
    t = join(make_complex([["a", "b"]]), make_complex([["c"]]))
    assert t.simplexes == make_complex([["a", "b", "c"]]).simplexes
    assert cone(make_complex([["a", "b"]]), "c").simplexes == t.simplexes


def test_join_requires_disjoint_vertices():
    with pytest.raises(ContractViolation):
        join(make_complex([["a", "b"]]), make_complex([["b", "c"]]))


def test_join_dimension_additivity():
    k1 = make_complex([["a", "b"], ["b", "c"]])
    k2 = make_complex([["x", "y", "z"]])
    assert join(k1, k2).dimension == k1.dimension + k2.dimension + 1


def test_l1_distance_examples():
    da, db = Point.delta("a"), Point.delta("b")
    assert l1_distance(da, da) == 0
    assert l1_distance(da, db) == 2
    mid = Point.of({"a": Fraction(1, 2), "b": Fraction(1, 2)})
    assert l1_distance(mid, da) == 1


def test_carrier_examples():
    k = make_complex([["a", "b", "c"]])
    assert carrier(Point.delta("a"), k) == frozenset("a")
    mid = Point.of({"a": Fraction(1, 2), "b": Fraction(1, 2)})
    assert carrier(mid, k) == frozenset("ab")
    assert carrier(barycenter(frozenset("abc")), k) == frozenset("abc")
    assert carrier(barycenter(frozenset("abc")), k) == \
        barycenter(frozenset("abc")).support


def test_carrier_rejects_foreign_point():
    k = make_complex([["a", "b"], ["b", "c"]])
    with pytest.raises(ContractViolation):
        carrier(barycenter(frozenset("ac")), k)


def test_point_validation():
    with pytest.raises(ContractViolation):
        Point.of({"a": Fraction(1, 2)})  # does not sum to 1
    with pytest.raises(ContractViolation):
        Point.of({"a": Fraction(3, 2), "b": Fraction(-1, 2)})
    # zeros are dropped, not stored
    p = Point.of({"a": Fraction(1), "b": Fraction(0)})
    assert p.support == frozenset("a")


def _points(max_verts=4):
    vertex = st.sampled_from("abcd"[:max_verts])
    weights = st.dictionaries(vertex, st.integers(1, 9), min_size=1, max_size=max_verts)

    def build(w):
        total = sum(w.values())
        return Point.of({v: Fraction(c, total) for v, c in w.items()})
    return weights.map(build)


@given(_points(), _points())
@settings(max_examples=150)
def test_l1_symmetry(p, q):
    assert l1_distance(p, q) == l1_distance(q, p)


@given(_points(), _points(), _points())
@settings(max_examples=150)
def test_l1_triangle_inequality(p, q, r):
    assert l1_distance(p, r) <= l1_distance(p, q) + l1_distance(q, r)


@given(_points())
@settings(max_examples=100)
def test_l1_identity(p):
    assert l1_distance(p, p) == 0
    assert sum(c for _, c in p.coords) == 1


@given(_points())
@settings(max_examples=100)
def test_barycenter_carrier_roundtrip(p):
    b = barycenter(p.support)
    assert b.support == p.support
    assert sum(c for _, c in b.coords) == 1
