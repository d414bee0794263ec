"""Machine-checkable certificates for every construction.

A certificate embeds its inputs, a digest of them, and a payload of exact
claims.  ``verify_certificate`` re-checks everything with verifier-side
logic only: exact membership tests, exact distances, clique intersections,
replay of recorded collapse rounds, and fiber/down-set recomputation for
the deterministic constructions.  Any single-field change to a certificate
makes verification fail.
"""

from __future__ import annotations

from fractions import Fraction

from . import cells, jsonio
from .complexes import SimplicialComplex, simplex_sort_key
from .errors import ContractViolation, InputError
from .families import (ConvexSet, all_convex_sets, go_witness, product_knetwork)
from .realization import (Realization, SetSystem, element_vertex_name,
                          meet_semilattice, minimal_member)
from .stars import (Chain, DisjointStars, StarFamily, chain_witness,
                    linked_stars_chain, st2_membership, star_cover)
from .sweep import SweepResult, choose_puncture, radial_retraction
from .synthesis import NamedSet, maximal_linked_subfamilies, verify_binary

KINDS = ("discreteness", "witness", "binarity", "refinement",
         "sweep-trace", "realization")


def make_certificate(kind: str, inputs: dict, payload: dict) -> dict:
    if kind not in KINDS:
        raise ContractViolation("unknown certificate kind", detail={"kind": kind})
    return {"kind": kind, "inputs": inputs,
            "inputs_digest": jsonio.digest(inputs), "payload": payload}


def _fail(reason: str, **detail):
    raise ContractViolation("certificate rejected: " + reason, detail=detail or None)


def _require(cond: bool, reason: str, **detail):
    if not cond:
        _fail(reason, **detail)


def verify_certificate(cert) -> dict:
    """Re-check a certificate against its embedded inputs.

    Returns a short summary on success; raises ContractViolation on any
    mismatch, including a digest that no longer matches the inputs.
    """
    try:
        kind = cert["kind"]
        inputs = cert["inputs"]
        recorded = cert["inputs_digest"]
        payload = cert["payload"]
    except (TypeError, KeyError):
        raise ContractViolation("certificate rejected: malformed envelope")
    _require(recorded == jsonio.digest(inputs), "inputs digest mismatch",
             recorded=recorded)
    checker = _CHECKERS.get(kind)
    if checker is None:
        _fail("unknown kind", kind=kind)
    try:
        checker(inputs, payload)
    except ContractViolation:
        raise
    except (InputError, KeyError, TypeError, ValueError, AttributeError, IndexError) as e:
        raise ContractViolation("certificate rejected: %s" % e)
    return {"verified": True, "kind": kind}


# ---------------------------------------------------------------------------
# discreteness


def discreteness_certificate_json(ambient: SimplicialComplex,
                                  cover_target: SimplicialComplex,
                                  family: StarFamily,
                                  result=None) -> dict:
    inputs = {"complex": jsonio.complex_to_json(ambient),
              "cover": jsonio.complex_to_json(cover_target)}
    groups = []
    if result is None:
        for card, bases in family.groups.items():
            groups.append({"cardinality": card,
                           "bases": [sorted(b) for b in bases],
                           "min_distance": None, "closest_pair": None})
        payload = {"n": family.discreteness_index,
                   "bound": str(Fraction(1, family.discreteness_index ** 2)),
                   "distances_computed": False, "groups": groups}
    else:
        for g in result.groups:
            groups.append({
                "cardinality": g.cardinality,
                "bases": [sorted(b) for b in g.bases],
                "min_distance": None if g.min_distance is None else str(g.min_distance),
                "closest_pair": None if g.closest_pair is None else
                    [sorted(g.closest_pair[0]), sorted(g.closest_pair[1])]})
        payload = {"n": result.n, "bound": str(result.bound),
                   "distances_computed": True, "groups": groups}
    return make_certificate("discreteness", inputs, payload)


def _check_discreteness(inputs, payload):
    ambient = jsonio.complex_from_json(inputs["complex"])
    target = jsonio.complex_from_json(inputs["cover"])
    family = star_cover(target, ambient)
    n = family.discreteness_index
    _require(payload["n"] == n, "discreteness index mismatch",
             expected=n, recorded=payload["n"])
    bound = Fraction(1, n * n)
    _require(jsonio.fraction_from_str(payload["bound"]) == bound, "bound mismatch")
    expected_groups = {card: [sorted(b) for b in bases]
                       for card, bases in family.groups.items()}
    seen = {}
    for g in payload["groups"]:
        seen[g["cardinality"]] = g["bases"]
    _require(seen == expected_groups, "group structure mismatch")
    for g in payload["groups"]:
        bases = [frozenset(b) for b in g["bases"]]
        if not payload["distances_computed"]:
            _require(g["min_distance"] is None, "unexpected distance entry")
            continue
        if len(bases) < 2:
            _require(g["min_distance"] is None, "distance recorded for a singleton group")
            continue
        star_cell_sets = {b: cells.star_cells(b, target) for b in bases}
        best, pair = None, None
        for i, a in enumerate(bases):
            for b in bases[i + 1:]:
                d = cells.min_l1_between_cell_unions(star_cell_sets[a],
                                                     star_cell_sets[b])
                if best is None or d < best:
                    best, pair = d, (a, b)
        _require(jsonio.fraction_from_str(g["min_distance"]) == best,
                 "group minimum distance mismatch",
                 cardinality=g["cardinality"], expected=str(best))
        _require(g["closest_pair"] == [sorted(pair[0]), sorted(pair[1])],
                 "closest pair mismatch", cardinality=g["cardinality"])
        _require(best >= bound, "separation bound violated",
                 cardinality=g["cardinality"], distance=str(best))


# ---------------------------------------------------------------------------
# witnesses


def membership_certificate_json(k, point, base, member: bool) -> dict:
    inputs = {"complex": jsonio.complex_to_json(k),
              "point": jsonio.point_to_json(point),
              "base": sorted(base)}
    return make_certificate("witness", inputs,
                            {"variant": "membership", "member": member})


def star_witness_certificate_json(k, bases, subcomplexes, witness) -> dict:
    inputs = {"complex": jsonio.complex_to_json(k),
              "bases": sorted([sorted(b) for b in bases]),
              "subcomplexes": [jsonio.complex_to_json(c) for c in subcomplexes]}
    payload = {"variant": "star",
               "point": jsonio.point_to_json(witness.point),
               "chain": [sorted(s) for s in witness.star_chain]}
    return make_certificate("witness", inputs, payload)


def order_witness_certificate_json(ground, convex_sets, low, high) -> dict:
    inputs = {"order": list(ground.elements),
              "sets": sorted([sorted(c.members) for c in convex_sets])}
    return make_certificate("witness", inputs,
                            {"variant": "order", "low": low, "high": high})


def _check_witness(inputs, payload):
    variant = payload["variant"]
    if variant == "membership":
        k = jsonio.complex_from_json(inputs["complex"])
        p = jsonio.point_from_json(inputs["point"])
        member = st2_membership(p, frozenset(inputs["base"]), k)
        _require(payload["member"] == member, "membership verdict mismatch",
                 expected=member)
    elif variant == "star":
        k = jsonio.complex_from_json(inputs["complex"])
        bases = [frozenset(b) for b in inputs["bases"]]
        subs = [jsonio.complex_from_json(c) for c in inputs["subcomplexes"]]
        chain = linked_stars_chain(bases, k)
        _require(not isinstance(chain, DisjointStars), "bases are not a chain")
        _require([sorted(s) for s in chain] == payload["chain"], "chain mismatch")
        point = jsonio.point_from_json(payload["point"])
        _require(point == chain_witness(chain), "witness point is not canonical")
        for b in chain:
            _require(st2_membership(point, b, k), "witness outside a star",
                     base=sorted(b))
        for i, f in enumerate(subs):
            _require(k.has_subcomplex(f), "not a subcomplex", index=i)
            _require(point.support in f.simplexes, "witness outside a subcomplex",
                     index=i)
    elif variant == "order":
        from .families import OrderedGround
        ground = OrderedGround(tuple(inputs["order"]))
        sets = [ConvexSet(ground, frozenset(s)) for s in inputs["sets"]]
        low, high = go_witness(sets)
        _require((low, high) == (payload["low"], payload["high"]),
                 "interval mismatch", expected=[low, high])
        interval = ground.interval(low, high)
        for s in sets:
            _require(interval <= s.members, "interval escapes a member")
    else:
        _fail("unknown witness variant", variant=variant)


# ---------------------------------------------------------------------------
# binarity


def binarity_certificate_json(source: str, inputs: dict, report,
                              witnesses=None, extra=None) -> dict:
    payload = {"source": source,
               "violations": [list(v) for v in report.violations],
               "checked_subfamilies": report.checked_subfamilies}
    if witnesses is not None:
        payload["witnesses"] = witnesses
    if extra:
        payload.update(extra)
    return make_certificate("binarity", inputs, payload)


def _check_binarity(inputs, payload):
    source = payload["source"]
    if source == "family":
        family = jsonio.named_sets_from_json(inputs["sets"])
        report = verify_binary(family)
    elif source == "convex":
        from .families import OrderedGround
        ground = OrderedGround(tuple(inputs["order"]))
        family = all_convex_sets(ground)
        report = verify_binary(family)
        witnesses = []
        by_name = {s.name: s for s in family}
        for clique, _ in maximal_linked_subfamilies(family):
            low, high = go_witness([ConvexSet(ground, by_name[n].members)
                                    for n in clique])
            witnesses.append({"clique": list(clique), "low": low, "high": high})
        _require(payload.get("witnesses") == witnesses, "witness table mismatch")
    elif source == "product":
        cyl = jsonio.cylinder_spec_from_json(inputs["spec"])
        result = product_knetwork(cyl)
        report = result.report
        cylinders = [{"name": s.name, "members": jsonio.rows_to_json(s.members)}
                     for s in result.cylinders]
        _require(payload.get("cylinders") == cylinders, "cylinder table mismatch")
        witnesses = [{"clique": list(c), "row": None if r is None else list(r)}
                     for c, r in result.witnesses]
        _require(payload.get("witnesses") == witnesses, "witness table mismatch")
    else:
        _fail("unknown binarity source", source=source)
    _require(payload["violations"] == [list(v) for v in report.violations],
             "violation list mismatch",
             expected=[list(v) for v in report.violations])
    _require(payload["checked_subfamilies"] == report.checked_subfamilies,
             "checked count mismatch", expected=report.checked_subfamilies)
    # A nonempty violation list must describe real violations: linked but empty.
    by_name = {s.name: s for s in report.family}
    for names in payload["violations"]:
        members = [by_name[n].members for n in names]
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                _require(bool(a & b), "reported violation is not linked")
        _require(not frozenset.intersection(*members), "reported violation is centered")


# ---------------------------------------------------------------------------
# refinement


def refinement_certificate_json(system: SetSystem, report) -> dict:
    inputs = {"system": jsonio.set_system_to_json(system)}
    levels = []
    by_name = {s.name: s for s in report.family}
    for level in report.levels:
        levels.append([{"name": n, "members": sorted(by_name[n].members)}
                       for n in level])
    payload = {"levels": levels,
               "refinement_table": [[name, list(blocks)]
                                    for name, blocks in report.refinement_table],
               "accounting": [dict(a) for a in report.level_accounting],
               "violations": [list(v) for v in report.violations],
               "checked_subfamilies": report.checked_subfamilies}
    return make_certificate("refinement", inputs, payload)


def _parse_block_name(name: str):
    if "@{" not in name or not name.endswith("}"):
        _fail("unparsable block name", name=name)
    parent, _, rest = name.partition("@{")
    tokens = rest[:-1]
    return parent, frozenset(t for t in tokens.split(",") if t != "")


def _check_refinement(inputs, payload):
    system = jsonio.set_system_from_json(inputs["system"])
    levels = payload["levels"]
    _require(len(levels) == len(system.groups), "level count mismatch",
             expected=len(system.groups))
    table = {name: tuple(blocks) for name, blocks in payload["refinement_table"]}
    family = {}
    for level in levels:
        for entry in level:
            _require(entry["name"] not in family, "duplicate block name",
                     name=entry["name"])
            family[entry["name"]] = frozenset(entry["members"])
    # Level 0 is the first input group verbatim.
    first = {name: members for name, members in
             (system.groups[0] if system.groups else ())}
    recorded0 = {e["name"]: frozenset(e["members"]) for e in levels[0]} if levels else {}
    _require(recorded0 == first, "level 0 does not match the first group")
    # Later levels: blocks are least-member fibers against the prior levels.
    prior_groups = [tuple((e["name"], frozenset(e["members"])) for e in levels[0])] \
        if levels else []
    for n in range(1, len(levels)):
        level_names = set()
        for name, members in system.groups[n]:
            _require(name in table, "input set missing from the table", name=name)
            blocks = table[name]
            union = frozenset()
            prior = SetSystem(ground=system.ground, groups=tuple(prior_groups))
            extended = SetSystem(ground=system.ground,
                                 groups=prior.groups + ((("^" + name, members),),))
            lattice = meet_semilattice(extended)
            fibers = {}
            for x in sorted(members):
                fibers.setdefault(minimal_member(x, lattice), set()).add(x)
            expected = {}
            for el, xs in fibers.items():
                expected["%s@{%s}" % (name, ",".join(sorted(el)))] = frozenset(xs)
            got = {b: family[b] for b in blocks}
            _require(got == expected, "blocks are not the least-member fibers",
                     name=name)
            for b in blocks:
                union |= family[b]
                level_names.add(b)
            _require(union == members, "blocks do not cover the input set",
                     name=name)
        recorded = {e["name"] for e in levels[n]}
        _require(recorded == level_names, "level membership mismatch", level=n)
        prior_groups.append(tuple((e["name"], frozenset(e["members"]))
                                  for e in levels[n]))
    # Per-level disjointness and the binarity of the full family.
    for n, level in enumerate(levels):
        entries = [(e["name"], frozenset(e["members"])) for e in level]
        for i, (_, a) in enumerate(entries):
            for _, b in entries[i + 1:]:
                _require(not (a & b), "level is not disjoint", level=n)
    named = [NamedSet(n_, m) for n_, m in family.items()]
    report = verify_binary(named)
    _require(payload["violations"] == [list(v) for v in report.violations],
             "violation list mismatch")
    _require(payload["checked_subfamilies"] == report.checked_subfamilies,
             "checked count mismatch")
    for n, acct in enumerate(payload["accounting"]):
        _require(acct == {"level": n, "declared_discreteness": 2 ** (n + 1),
                          "achieved_groups": 1},
                 "accounting row mismatch", level=n)


# ---------------------------------------------------------------------------
# sweep trace


def sweep_certificate_json(result: SweepResult, points) -> dict:
    inputs = {"complex": jsonio.complex_to_json(result.source),
              "subcomplex": jsonio.complex_to_json(result.kept),
              "points": [jsonio.point_to_json(p) for p in points]}
    payload = {"reduced": jsonio.complex_to_json(result.reduced),
               "rounds": [[{"simplex": sorted(s),
                            "puncture": jsonio.point_to_json(d)}
                           for s, d in entries] for entries in result.rounds],
               "images": [jsonio.point_to_json(p) for p in result.images]}
    return make_certificate("sweep-trace", inputs, payload)


def _covered_v(simplex, kept, images):
    if simplex in kept.simplexes:
        return True
    if len(simplex) == 1:
        v = next(iter(simplex))
        return any(img.coords == ((v, Fraction(1)),) for img in images)
    return False


def _check_sweep(inputs, payload):
    source = jsonio.complex_from_json(inputs["complex"])
    kept = jsonio.complex_from_json(inputs["subcomplex"])
    points = [jsonio.point_from_json(p) for p in inputs["points"]]
    _require(source.has_subcomplex(kept), "kept complex is not a subcomplex")
    _require(len(payload["rounds"]) <= 1 + source.dimension, "too many rounds",
             rounds=len(payload["rounds"]))
    current = source
    images = list(points)
    for entries in payload["rounds"]:
        removable = [s for s in current.maximal_simplexes
                     if not _covered_v(s, kept, images)]
        recorded = [frozenset(e["simplex"]) for e in entries]
        _require(sorted(recorded, key=simplex_sort_key) ==
                 sorted(removable, key=simplex_sort_key),
                 "round removes the wrong simplexes")
        table = {}
        for e in entries:
            s = frozenset(e["simplex"])
            d = jsonio.point_from_json(e["puncture"])
            _require(d == choose_puncture(s, images),
                     "puncture differs from the deterministic choice",
                     simplex=sorted(s))
            table[s] = d
        images = [radial_retraction(p.support, table[p.support], p)
                  if p.support in table else p for p in images]
        current = SimplicialComplex(frozenset(current.simplexes - set(table)))
    _require(not any(not _covered_v(s, kept, images)
                     for s in current.maximal_simplexes),
             "trace stops before the sweep is complete")
    reduced = jsonio.complex_from_json(payload["reduced"])
    _require(reduced.simplexes == current.simplexes, "reduced complex mismatch")
    _require(reduced.has_subcomplex(kept), "kept complex escapes the result")
    recorded_images = [jsonio.point_from_json(p) for p in payload["images"]]
    _require(recorded_images == images, "image trajectory mismatch")
    for p in images:
        _require(p.support in reduced.simplexes, "image escapes the result")


# ---------------------------------------------------------------------------
# realization


def realization_certificate_json(realization: Realization,
                                 requested_top: bool = False) -> dict:
    inputs = {"system": jsonio.set_system_to_json(realization.system),
              "include_top": requested_top}
    r = realization
    payload = {
        "elements": [sorted(e) for e in r.lattice.sorted_elements()],
        "strata": [[sorted(e) for e in layer] for layer in r.strata.layers],
        "include_top": r.include_top,
        "vertices": [r.vertex_name(e) for e in r.vertex_elements],
        "complex": jsonio.complex_to_json(r.complex),
        "assign": [{"element": sorted(e),
                    "vertices": sorted(r.assign(e).vertices)}
                   for e in r.lattice.sorted_elements()],
        "point_map": {x: jsonio.point_to_json(p)
                      for x, p in sorted(r.point_map.items())},
    }
    return make_certificate("realization", inputs, payload)


def _check_realization_cert(inputs, payload):
    system = jsonio.set_system_from_json(inputs["system"])
    elements = [frozenset(e) for e in payload["elements"]]
    element_set = set(elements)
    listed = [members for _, members in system.flat() if members]
    ground = system.ground
    # The recorded elements must be exactly the meet closure: every listed
    # set and the ground are present, pairwise meets stay inside, and every
    # element is recovered as the meet of the listed sets above it.
    _require(ground in element_set, "ground missing from the semilattice")
    for m in listed:
        _require(m in element_set, "listed set missing from the semilattice",
                 set=sorted(m))
    for i, a in enumerate(elements):
        for b in elements[i + 1:]:
            meet = a & b
            _require(not meet or meet in element_set,
                     "semilattice not closed under intersection",
                     pair=[sorted(a), sorted(b)])
    for e in elements:
        if e == ground:
            continue
        above = [m for m in listed if e <= m]
        _require(bool(above), "element is not an intersection of listed sets",
                 element=sorted(e))
        _require(frozenset.intersection(*above) == e,
                 "element is not an intersection of listed sets",
                 element=sorted(e))
    # Strata: repeatedly stripped minimal elements, disjoint and exhaustive.
    remaining = set(elements)
    for layer in payload["strata"]:
        expected = sorted((e for e in remaining
                           if not any(o < e for o in remaining)),
                          key=simplex_sort_key)
        _require([sorted(e) for e in expected] == layer, "stratum mismatch")
        remaining -= {frozenset(e) for e in layer}
    _require(not remaining, "strata do not exhaust the semilattice")
    _require(len(payload["strata"]) <= system.n + 1,
             "stratification exceeds the discreteness bound")
    # Vertices: the ground is kept only when forced or requested.
    proper = element_set - {ground}
    top_forced = (ground in listed
                  or any(not any(x in e for e in proper) for x in ground))
    use_top = bool(inputs.get("include_top")) or top_forced
    expected_vertices = [element_vertex_name(e)
                         for e in sorted(element_set if use_top else proper,
                                         key=simplex_sort_key)]
    _require(payload["include_top"] == use_top, "top handling mismatch")
    _require(payload["vertices"] == expected_vertices, "vertex list mismatch")
    vertex_elements = sorted(element_set if use_top else proper,
                             key=simplex_sort_key)
    name_of = {e: element_vertex_name(e) for e in vertex_elements}
    # The complex is the order complex: simplexes are exactly the chains.
    recorded = jsonio.complex_from_json(payload["complex"])
    element_of = {name_of[e]: e for e in vertex_elements}
    _require(recorded.vertices == frozenset(name_of.values()),
             "complex vertices mismatch")
    for s in recorded.simplexes:
        els = sorted((element_of[v] for v in s), key=len)
        _require(all(a < b for a, b in zip(els, els[1:])),
                 "complex contains a non-chain", simplex=sorted(s))
    n_chains = _count_chains(vertex_elements)
    _require(len(recorded.simplexes) == n_chains, "complex misses chains",
             expected=n_chains)
    _require(recorded.dimension <= system.n, "dimension bound violated")
    # Assignment rows are the full subcomplexes on down-sets.
    expected_assign = [{"element": sorted(e),
                        "vertices": sorted(name_of[f] for f in vertex_elements
                                           if f <= e)}
                       for e in sorted(element_set, key=simplex_sort_key)]
    _require(payload["assign"] == expected_assign, "assignment table mismatch")
    # Point map sends each ground element to its least member's vertex.
    expected_pm = {}
    for x in sorted(ground):
        least = ground
        for e in elements:
            if x in e:
                least = least & e
        expected_pm[x] = {"coords": {name_of[least]: "1"}}
    _require(payload["point_map"] == expected_pm, "point map mismatch")


def _count_chains(elements) -> int:
    supersets = {e: [f for f in elements if e < f] for e in elements}
    total = 0
    stack = [[e] for e in elements]
    while stack:
        chain = stack.pop()
        total += 1
        for f in supersets[chain[-1]]:
            stack.append(chain + [f])
    return total


_CHECKERS = {
    "discreteness": _check_discreteness,
    "witness": _check_witness,
    "binarity": _check_binarity,
    "refinement": _check_refinement,
    "sweep-trace": _check_sweep,
    "realization": _check_realization_cert,
}
