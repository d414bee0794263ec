"""JSON formats for every domain object, canonical and exact.

Rationals are serialized as reduced fraction strings ("3/4", "2"); sets
as sorted lists.  ``canonical_json`` is byte-deterministic (sorted keys,
tight separators, ASCII escapes) and backs the certificate digests.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .complexes import Point, SimplicialComplex, make_complex
from .errors import InputError
from .families import CylinderFamily, Factor, OrderedGround, cylinder_family
from .realization import SetSystem, set_system
from .synthesis import NamedSet


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(obj).encode("ascii")).hexdigest()


def fraction_to_str(f: Fraction) -> str:
    return str(f)


def fraction_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise InputError("rationals must be fraction strings, got %r" % (s,))
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("bad fraction %r: %s" % (s, e))
    return f


def _expect(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError("missing %r in %s" % (key, where))
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError("%r in %s must be %s" % (key, where, kind.__name__))
    return val


def _string_list(val, where):
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise InputError("%s must be a list of strings" % where)
    return val


# --- complexes --------------------------------------------------------------


def complex_to_json(k: SimplicialComplex) -> dict:
    return {"vertices": sorted(k.vertices),
            "maximal_simplices": sorted([sorted(s) for s in k.maximal_simplexes])}


def complex_from_json(obj) -> SimplicialComplex:
    tops = _expect(obj, "maximal_simplices", list, "complex")
    listed = _string_list(_expect(obj, "vertices", list, "complex"), "vertices")
    k = make_complex([_string_list(t, "maximal simplex") for t in tops])
    if frozenset(listed) != k.vertices:
        raise InputError("vertex list disagrees with the simplexes")
    return k


def point_to_json(p: Point) -> dict:
    return {"coords": {v: fraction_to_str(c) for v, c in p.coords}}


def point_from_json(obj) -> Point:
    coords = _expect(obj, "coords", dict, "point")
    return Point.of({v: fraction_from_str(c) for v, c in coords.items()})


def simplex_to_json(s) -> list:
    return sorted(s)


def simplex_from_json(obj) -> frozenset:
    return frozenset(_string_list(obj, "simplex"))


def chain_to_json(chain) -> dict:
    return {"chain": [sorted(s) for s in chain]}


def chain_from_json(obj):
    from .stars import Chain
    entries = _expect(obj, "chain", list, "chain")
    return Chain(tuple(frozenset(_string_list(e, "chain entry")) for e in entries))


# --- set systems and families ----------------------------------------------


def set_system_to_json(s: SetSystem) -> dict:
    return {"ground": sorted(s.ground),
            "families": [[{"name": name, "members": sorted(members)}
                          for name, members in group] for group in s.groups]}


def set_system_from_json(obj) -> SetSystem:
    ground = _string_list(_expect(obj, "ground", list, "set system"), "ground")
    groups_json = _expect(obj, "families", list, "set system")
    groups = []
    for group in groups_json:
        if not isinstance(group, list):
            raise InputError("each family group must be a list")
        entries = []
        for e in group:
            name = _expect(e, "name", str, "named set")
            members = _string_list(_expect(e, "members", list, "named set"), "members")
            entries.append((name, members))
        groups.append(entries)
    return set_system(ground, groups)


def named_sets_to_json(family) -> list:
    return [{"name": s.name, "members": sorted(s.members)} for s in family]


def named_sets_from_json(obj) -> tuple:
    if not isinstance(obj, list):
        raise InputError("family must be a list of named sets")
    out = []
    for e in obj:
        name = _expect(e, "name", str, "named set")
        members = _string_list(_expect(e, "members", list, "named set"), "members")
        out.append(NamedSet(name=name, members=frozenset(members)))
    return tuple(out)


def ordered_ground_to_json(g: OrderedGround) -> dict:
    return {"order": list(g.elements)}


def ordered_ground_from_json(obj) -> OrderedGround:
    return OrderedGround(tuple(_string_list(_expect(obj, "order", list, "ground"),
                                            "order")))


def convex_sets_from_json(obj):
    """File with a ground order and a list of convex member lists."""
    from .families import ConvexSet
    ground = ordered_ground_from_json(obj)
    sets_json = _expect(obj, "sets", list, "convex family")
    return ground, [ConvexSet(ground, frozenset(_string_list(s, "convex set")))
                    for s in sets_json]


# --- products ---------------------------------------------------------------


def cylinder_spec_to_json(cyl: CylinderFamily) -> dict:
    return {"factors": [{"ground": list(f.ground),
                         "family": named_sets_to_json(f.family)}
                        for f in cyl.factors],
            "dense": [list(r) for r in cyl.dense],
            "depth": cyl.depth}


def cylinder_spec_from_json(obj) -> CylinderFamily:
    factors_json = _expect(obj, "factors", list, "product spec")
    factors = []
    for f in factors_json:
        ground = tuple(_string_list(_expect(f, "ground", list, "factor"), "ground"))
        family = named_sets_from_json(_expect(f, "family", list, "factor"))
        factors.append(Factor(ground=ground, family=family))
    dense_json = _expect(obj, "dense", list, "product spec")
    dense = [tuple(_string_list(r, "dense row")) for r in dense_json]
    depth = obj.get("depth")
    if depth is not None and not isinstance(depth, int):
        raise InputError("depth must be an integer")
    return cylinder_family(factors, dense, depth)


def rows_to_json(rows) -> list:
    return sorted([list(r) for r in rows])
