"""Command-line entry point.

One binary, one subcommand per module, JSON in and JSON out.  Exit codes:
0 success (a certificate or result on stdout), 1 malformed input (with
position diagnostics for JSON errors), 2 violated contract (with the
violating object), 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certificates, jsonio
from .errors import ContractViolation, InputError
from .families import OrderedGround, go_binary_family, go_witness, product_knetwork
from .realization import realize
from .stars import (Star, discreteness_certificate, linked_intersection_witness,
                    st2_membership, star_cover)
from .sweep import sweep_out
from .synthesis import synthesize, verify_binary

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("error: %s" % message, file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise InputError("%s: line %d column %d: %s"
                         % (path, e.lineno, e.colno, e.msg))


def _parse_simplex_arg(text):
    if text.lstrip().startswith("["):
        try:
            entries = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("bad simplex argument: %s" % e.msg)
        return frozenset(jsonio._string_list(entries, "simplex argument"))
    return frozenset(t for t in text.split(",") if t)


def _emit(obj) -> int:
    print(jsonio.canonical_json(obj))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="knets")
    sub = parser.add_subparsers(dest="command", required=True)

    star = sub.add_parser("star", help="closed-star calculus")
    star_sub = star.add_subparsers(dest="star_command", required=True)
    p = star_sub.add_parser("member", help="closed-star membership of a point")
    p.add_argument("--complex", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--base", required=True,
                   help="comma-separated vertices or a JSON list")
    p = star_sub.add_parser("cover", help="star cover of a subcomplex")
    p.add_argument("--complex", required=True)
    p.add_argument("--subcomplex")
    p = star_sub.add_parser("certify", help="star cover with exact separation")
    p.add_argument("--complex", required=True)
    p.add_argument("--subcomplex")
    p = star_sub.add_parser("witness", help="common point of linked stars")
    p.add_argument("--complex", required=True)
    p.add_argument("--bases", required=True, help="JSON list of vertex lists")
    p.add_argument("--subcomplex", action="append", default=[],
                   help="may repeat; each a complex JSON file")

    swp = sub.add_parser("sweep", help="piecewise-linear sweeping-out")
    swp_sub = swp.add_subparsers(dest="sweep_command", required=True)
    p = swp_sub.add_parser("run")
    p.add_argument("--complex", required=True)
    p.add_argument("--subcomplex", required=True)
    p.add_argument("--points", required=True,
                   help='file {"points": [point, ...]}')

    p = sub.add_parser("realize", help="order-complex realization of a set system")
    p.add_argument("--system", required=True)
    p.add_argument("--include-top", action="store_true")

    knet = sub.add_parser("knet", help="binary family synthesis and checks")
    knet_sub = knet.add_subparsers(dest="knet_command", required=True)
    p = knet_sub.add_parser("synthesize")
    p.add_argument("--system", required=True)
    p = knet_sub.add_parser("verify")
    p.add_argument("--family", required=True, help='file {"sets": [...]}')

    go = sub.add_parser("go", help="order-convex families")
    go_sub = go.add_subparsers(dest="go_command", required=True)
    p = go_sub.add_parser("witness")
    p.add_argument("--sets", required=True,
                   help='file {"order": [...], "sets": [[...], ...]}')
    p = go_sub.add_parser("family")
    p.add_argument("--ground", required=True, help='file {"order": [...]}')
    p.add_argument("--max-size", type=int, default=64)

    prod = sub.add_parser("product", help="cylinder families over products")
    prod_sub = prod.add_subparsers(dest="product_command", required=True)
    p = prod_sub.add_parser("build")
    p.add_argument("--spec", required=True)

    p = sub.add_parser("verify", help="re-check an emitted certificate")
    p.add_argument("--certificate", required=True)
    return parser


def _cmd_star(args) -> int:
    k = jsonio.complex_from_json(_load(args.complex))
    if args.star_command == "member":
        point = jsonio.point_from_json(_load(args.point))
        base = _parse_simplex_arg(args.base)
        member = st2_membership(point, base, k)
        return _emit(certificates.membership_certificate_json(k, point, base, member))
    if args.star_command in ("cover", "certify"):
        target = k if args.subcomplex is None else \
            jsonio.complex_from_json(_load(args.subcomplex))
        family = star_cover(target, k)
        result = discreteness_certificate(family) \
            if args.star_command == "certify" else None
        return _emit(certificates.discreteness_certificate_json(
            k, target, family, result))
    if args.star_command == "witness":
        try:
            bases_json = json.loads(args.bases)
        except json.JSONDecodeError as e:
            raise InputError("bad --bases: %s" % e.msg)
        if not isinstance(bases_json, list):
            raise InputError("--bases must be a JSON list of vertex lists")
        bases = [frozenset(jsonio._string_list(b, "base")) for b in bases_json]
        subs = [jsonio.complex_from_json(_load(p)) for p in args.subcomplex]
        members = [Star(b) for b in bases] + subs
        witness = linked_intersection_witness(members, k)
        return _emit(certificates.star_witness_certificate_json(
            k, bases, subs, witness))
    raise InputError("unknown star subcommand")


def _cmd_sweep(args) -> int:
    source = jsonio.complex_from_json(_load(args.complex))
    kept = jsonio.complex_from_json(_load(args.subcomplex))
    obj = _load(args.points)
    points_json = obj.get("points") if isinstance(obj, dict) else None
    if points_json is None or not isinstance(points_json, list):
        raise InputError('points file must look like {"points": [...]}')
    points = [jsonio.point_from_json(p) for p in points_json]
    result = sweep_out(source, kept, points)
    return _emit(certificates.sweep_certificate_json(result, points))


def _cmd_realize(args) -> int:
    system = jsonio.set_system_from_json(_load(args.system))
    realization = realize(system, include_top=args.include_top)
    return _emit(certificates.realization_certificate_json(
        realization, requested_top=args.include_top))


def _cmd_knet(args) -> int:
    if args.knet_command == "synthesize":
        system = jsonio.set_system_from_json(_load(args.system))
        report = synthesize(system)
        return _emit(certificates.refinement_certificate_json(system, report))
    obj = _load(args.family)
    sets_json = obj.get("sets") if isinstance(obj, dict) else None
    if sets_json is None:
        raise InputError('family file must look like {"sets": [...]}')
    family = jsonio.named_sets_from_json(sets_json)
    report = verify_binary(family)
    return _emit(certificates.binarity_certificate_json(
        "family", {"sets": jsonio.named_sets_to_json(family)}, report))


def _cmd_go(args) -> int:
    if args.go_command == "witness":
        ground, sets = jsonio.convex_sets_from_json(_load(args.sets))
        low, high = go_witness(sets)
        return _emit(certificates.order_witness_certificate_json(
            ground, sets, low, high))
    ground = jsonio.ordered_ground_from_json(_load(args.ground))
    family, report, witnesses = go_binary_family(ground, max_size=args.max_size)
    wit = [{"clique": list(c), "low": lo, "high": hi} for c, (lo, hi) in witnesses]
    return _emit(certificates.binarity_certificate_json(
        "convex", {"order": list(ground.elements)}, report, witnesses=wit))


def _cmd_product(args) -> int:
    spec = _load(args.spec)
    cyl = jsonio.cylinder_spec_from_json(spec)
    result = product_knetwork(cyl)
    cylinders = [{"name": s.name, "members": jsonio.rows_to_json(s.members)}
                 for s in result.cylinders]
    witnesses = [{"clique": list(c), "row": None if r is None else list(r)}
                 for c, r in result.witnesses]
    return _emit(certificates.binarity_certificate_json(
        "product", {"spec": jsonio.cylinder_spec_to_json(cyl)}, result.report,
        witnesses=witnesses, extra={"cylinders": cylinders}))


def _cmd_verify(args) -> int:
    cert = _load(args.certificate)
    return _emit(certificates.verify_certificate(cert))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else USAGE_EXIT
    try:
        if args.command == "star":
            return _cmd_star(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "realize":
            return _cmd_realize(args)
        if args.command == "knet":
            return _cmd_knet(args)
        if args.command == "go":
            return _cmd_go(args)
        if args.command == "product":
            return _cmd_product(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise InputError("unknown command")
    except InputError as e:
        print(jsonio.canonical_json({"error": {"kind": "input", "message": str(e)}}))
        return 1
    except ContractViolation as e:
        print(jsonio.canonical_json({"error": {"kind": "contract", "message": str(e),
                                               "violation": e.detail}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
