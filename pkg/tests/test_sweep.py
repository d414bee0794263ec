"""Sweeping-out: radial retractions, traces, and their invariants."""

import random
from fractions import Fraction

import pytest

from knets.complexes import Point, barycenter, make_complex
from knets.errors import ContractViolation
from knets.sweep import choose_puncture, radial_retraction, sweep_out

from support import random_complex, random_point, random_subcomplex

F = Fraction
TRIANGLE = make_complex([["a", "b", "c"]])
EDGE_AB = make_complex([["a", "b"]])


def pt(**kw):
    return Point.of({v: F(n, d) for v, (n, d) in kw.items()})


def test_radial_retraction_edge_example():
    # center (1/2,1/2), x (3/4,1/4): the ray exits at delta_a
    out = radial_retraction(frozenset("ab"), barycenter(frozenset("ab")),
                            pt(a=(3, 4), b=(1, 4)))
    assert out == Point.delta("a")


def test_radial_retraction_grid_oracle():
    # walk the ray parameter exactly: the image is the first boundary point
    center = pt(a=(1, 2), b=(1, 4), c=(1, 4))
    x = pt(a=(1, 4), b=(1, 2), c=(1, 4))
    out = radial_retraction(frozenset("abc"), center, x)
    assert out["a"] == 0
    # collinearity: out = center + t (x - center) for the coordinate that kept sign
    t = (out["b"] - center["b"]) / (x["b"] - center["b"])
    assert t >= 1
    assert out["c"] == center["c"] + t * (x["c"] - center["c"])


def test_radial_retraction_fixes_boundary():
    c = barycenter(frozenset("ab"))
    for x in (Point.delta("a"), Point.delta("b")):
        assert radial_retraction(frozenset("ab"), c, x) == x
    c3 = barycenter(frozenset("abc"))
    x = pt(a=(1, 2), b=(1, 2))
    assert radial_retraction(frozenset("abc"), c3, x) == x


def test_radial_retraction_errors():
    with pytest.raises(ContractViolation):
        radial_retraction(frozenset("ab"), Point.delta("a"), Point.delta("b"))
    c = barycenter(frozenset("ab"))
    with pytest.raises(ContractViolation):
        radial_retraction(frozenset("ab"), c, c)


def test_choose_puncture_prefers_barycenter():
    assert choose_puncture(frozenset("ab"), []) == barycenter(frozenset("ab"))
    blocked = [barycenter(frozenset("ab"))]
    alt = choose_puncture(frozenset("ab"), blocked)
    assert alt not in blocked
    assert alt.support == frozenset("ab")
    # deterministic
    assert alt == choose_puncture(frozenset("ab"), blocked)


def test_sweep_triangle_onto_edge():
    res = sweep_out(TRIANGLE, EDGE_AB, [])
    assert res.reduced.simplexes == EDGE_AB.simplexes
    assert len(res.rounds) <= 1 + TRIANGLE.dimension


def test_sweep_identity_when_already_reduced():
    res = sweep_out(EDGE_AB, EDGE_AB, [])
    assert res.reduced.simplexes == EDGE_AB.simplexes
    assert res.rounds == ()
    p = pt(a=(1, 3), b=(2, 3))
    assert res.evaluate(p) == p


def test_sweep_tracked_point_anchors_a_vertex():
    # collapsing the triangle onto vertex a with the bc midpoint tracked:
    # the midpoint slides to an endpoint of bc, which is then kept
    res = sweep_out(TRIANGLE, make_complex([["a"]]),
                    [barycenter(frozenset("bc"))])
    img = res.images[0]
    assert img.support in res.reduced.simplexes
    assert frozenset("a") in res.reduced.simplexes
    assert img.support <= frozenset("bc")


def test_sweep_rejects_foreign_point():
    with pytest.raises(ContractViolation):
        sweep_out(EDGE_AB, EDGE_AB, [barycenter(frozenset("bc"))])
    with pytest.raises(ContractViolation):
        sweep_out(EDGE_AB, TRIANGLE, [])


def test_sweep_evaluate_is_idempotent_and_carrier_monotone():
    res = sweep_out(TRIANGLE, EDGE_AB, [])
    queries = [barycenter(frozenset("abc")), pt(a=(1, 2), c=(1, 2)),
               pt(b=(1, 6), c=(5, 6)), Point.delta("c"),
               pt(a=(2, 5), b=(2, 5), c=(1, 5))]
    for q in queries:
        try:
            out = res.evaluate(q)
        except ContractViolation:
            continue  # the query ray started at a puncture
        assert res.evaluate(out) == out
        assert out.support <= q.support or out.support < q.support or \
            out.support.issubset(q.support)
        assert out.support in res.reduced.simplexes


@pytest.mark.parametrize("seed", range(8))
def test_sweep_invariants_randomized(seed):
    rng = random.Random(seed)
    source = random_complex(rng)
    kept = random_subcomplex(rng, source)
    points = [random_point(rng, source) for _ in range(rng.randint(0, 3))]
    res = sweep_out(source, kept, points)
    assert res.source.has_subcomplex(res.reduced)
    assert res.reduced.has_subcomplex(kept)
    assert len(res.rounds) <= 1 + source.dimension
    for p, img in zip(points, res.images):
        assert img.support in res.reduced.simplexes
        assert img.support <= p.support
        assert res.evaluate(p) == img
        assert res.evaluate(img) == img
