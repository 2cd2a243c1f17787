"""Command-line front end.

Subcommands: validate, gkm, facering, membership, interpolate, proptest.
Exit codes: 0 success, 1 mathematical failure or non-membership, 2 input
error.  Output is deterministic for fixed (input, flags, seed).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import facering
from .documents import InputError, build_polytope, load_document, load_tuple, resolve_order
from .facering import NotInW, ResidualNonzero, TruncationUnstable
from .gkm import build_gkm, dot_export, euler_coprimality_check, in_gamma, in_w
from .harness import run_all
from .polytope import (
    InvalidOrder,
    NonGenericHeight,
    fmt_facets,
    validate_characteristic,
    validate_simple,
)


@dataclass
class Report:
    command: str
    input_name: str
    status: str
    exit_code: int
    payload: dict
    human: str


def _render(report: Report, as_json: bool) -> str:
    if as_json:
        doc = {"command": report.command, "input": report.input_name,
               "status": report.status, "payload": report.payload}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return report.human if report.human.endswith("\n") else report.human + "\n"


def _order_or_error(doc, P):
    """(order, None) or (None, message); InputError passes through."""
    try:
        return resolve_order(doc, P), None
    except (InvalidOrder, NonGenericHeight) as exc:
        return None, str(exc)


def cmd_validate(doc, args) -> Report:
    P = build_polytope(doc)
    lines = []
    payload = {}
    ok = True
    rep = validate_simple(P)
    payload["simple"] = {"ok": rep.ok, "failures": list(rep.failures)}
    lines.append("simple polytope: " + ("pass" if rep.ok else "FAIL"))
    lines.extend("  " + f for f in rep.failures)
    ok &= rep.ok
    if rep.ok:
        crep = validate_characteristic(P, doc.lam)
        payload["characteristic"] = {"ok": crep.ok, "failures": list(crep.failures)}
        lines.append("characteristic matrix: " + ("pass" if crep.ok else "FAIL"))
        lines.extend("  " + f for f in crep.failures)
        ok &= crep.ok
        order, err = _order_or_error(doc, P)
        payload["order"] = {"ok": err is None, "failures": [] if err is None else [err]}
        lines.append("vertex order: " + ("pass" if err is None else "FAIL"))
        if err:
            lines.append("  " + err)
        ok &= err is None
    return Report("validate", doc.name, "pass" if ok else "fail",
                  0 if ok else 1, payload, "\n".join(lines))


def cmd_gkm(doc, args) -> Report:
    P = build_polytope(doc)
    bad = _require_valid(doc, P, "gkm")
    if bad:
        return bad
    order = resolve_order(doc, P)
    g = build_gkm(P, doc.lam, order=order, bott=doc.use_bott)
    rep = euler_coprimality_check(g)
    pos = order.position
    edges = sorted(({"a": min(pos[e.v], pos[e.w]) + 1,
                     "b": max(pos[e.v], pos[e.w]) + 1,
                     "facets": sorted(e.facets),
                     "character": list(e.character)} for e in g.edges),
                   key=lambda e: (e["a"], e["b"]))
    lines = [f"fixed points: {g.m}", f"edges: {len(g.edges)}"]
    for e in edges:
        lines.append(f"  v{e['a']} -- v{e['b']}  facets {fmt_facets(e['facets'])}  "
                     f"character ({','.join(str(x) for x in e['character'])})")
    lines.append("euler-class coprimality: " + ("pass" if rep.ok else "FAIL"))
    lines.extend("  " + f for f in rep.failures)
    payload = {"fixed_points": g.m, "edges": edges,
               "euler_check": {"ok": rep.ok, "failures": list(rep.failures)}}
    if args.dot:
        text = dot_export(g)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(text)
        lines.append(f"DOT written to {args.dot}")
        payload["dot"] = args.dot
    ok = rep.ok
    return Report("gkm", doc.name, "pass" if ok else "fail",
                  0 if ok else 1, payload, "\n".join(lines))


def cmd_facering(doc, args) -> Report:
    P = build_polytope(doc)
    bad = _require_valid(doc, P, "facering")
    if bad:
        return bad
    order = resolve_order(doc, P)
    g = build_gkm(P, doc.lam, order=order, bott=doc.use_bott)
    nonfaces = [sorted(S) for S in P.minimal_nonfaces()]
    gens = facering.kernel_generators(g)
    rvecs = {i: facering.r_vector(g, i) for i in range(1, g.d + 1)}
    lines = ["minimal non-faces: " + ", ".join(fmt_facets(S) for S in nonfaces)]
    lines.append("ideal generators:")
    lines.extend(f"  {p.text()}" for p in gens)
    lines.append("restriction tuples:")
    for i in range(1, g.d + 1):
        lines.append(f"  y{i} -> {rvecs[i].text()}")
    payload = {
        "minimal_nonfaces": nonfaces,
        "j_generators": [p.json_terms() for p in gens],
        "r_vectors": {f"y{i}": rvecs[i].json_entries() for i in range(1, g.d + 1)},
    }
    status_ok = True
    try:
        cert = facering.basis_certificate(g)
        lines.append("basis certificate:")
        for e in cert:
            lines.append(f"  position {e.position + 1}: vertex "
                         f"{fmt_facets(P.vertices[e.vertex])}, extra facets "
                         f"{fmt_facets(e.extra_facets)}, omega = {e.omega.text()}")
        payload["certificate"] = [
            {"position": e.position + 1,
             "vertex": sorted(P.vertices[e.vertex]),
             "extra_facets": list(e.extra_facets),
             "omega": e.omega.json_terms()} for e in cert]
    except facering.CertificateFailure as exc:
        status_ok = False
        lines.append(f"basis certificate: FAIL ({exc})")
        payload["certificate"] = {"error": str(exc)}
    if args.ordinary:
        pres = facering.ordinary_presentation(g)
        lines.append("ordinary presentation relations:")
        lines.extend(f"  {p.text()}" for p in pres.j_generators + pres.lattice_relations)
        payload["ordinary_presentation"] = {
            "generators": list(pres.generators),
            "j_generators": [p.json_terms() for p in pres.j_generators],
            "lattice_relations": [p.json_terms() for p in pres.lattice_relations],
        }
        try:
            res = facering.ordinary_rank(g)
            lines.append(f"ordinary rank: {res.rank} "
                         f"({'torsion-free' if res.torsion_free else 'has torsion'}, "
                         f"stable at degree {res.degree})")
            payload["ordinary_rank"] = {"rank": res.rank,
                                        "torsion_free": res.torsion_free,
                                        "degree": res.degree}
        except TruncationUnstable as exc:
            status_ok = False
            lines.append(f"ordinary rank: FAIL ({exc})")
            payload["ordinary_rank"] = {"error": str(exc)}
    return Report("facering", doc.name, "pass" if status_ok else "fail",
                  0 if status_ok else 1, payload, "\n".join(lines))


def cmd_membership(doc, args) -> Report:
    P = build_polytope(doc)
    bad = _require_valid(doc, P, "membership", need_order=False)
    if bad:
        return bad
    order = None
    if doc.has_order_source:
        order, _ = _order_or_error(doc, P)
    g = build_gkm(P, doc.lam, order=order, bott=doc.use_bott)
    t = load_tuple(args.tuple_file, g.char_profile, g.m)
    grep = in_gamma(g, t)
    wrep = in_w(g, t)
    lines = [f"edge-divisibility membership: {'member' if grep.member else 'NOT a member'}"]
    if grep.witness:
        lines.append("  " + grep.witness.text(P))
    lines.append(f"face-agreement membership: {'member' if wrep.member else 'NOT a member'}")
    if wrep.witness:
        lines.append("  " + wrep.witness.text(P))
    lines.append("predicates agree: " + ("yes" if grep.member == wrep.member else "NO"))
    payload = {
        "in_gamma": {"member": grep.member,
                     "witness": grep.witness.text(P) if grep.witness else None},
        "in_w": {"member": wrep.member,
                 "witness": wrep.witness.text(P) if wrep.witness else None},
        "agree": grep.member == wrep.member,
    }
    ok = grep.member and wrep.member
    return Report("membership", doc.name, "member" if ok else "non-member",
                  0 if ok else 1, payload, "\n".join(lines))


def cmd_interpolate(doc, args) -> Report:
    P = build_polytope(doc)
    bad = _require_valid(doc, P, "interpolate")
    if bad:
        return bad
    order = resolve_order(doc, P)
    g = build_gkm(P, doc.lam, order=order, bott=doc.use_bott)
    t = load_tuple(args.tuple_file, g.char_profile, g.m)
    try:
        res = facering.interpolate(g, t)
    except NotInW as exc:
        return Report("interpolate", doc.name, "fail", 1,
                      {"error": str(exc)}, f"not interpolable: {exc}")
    except ResidualNonzero as exc:
        return Report("interpolate", doc.name, "fail", 1,
                      {"error": str(exc)}, f"interpolation failed: {exc}")
    lines = [f"P = {res.poly.text()}", "steps:"]
    for s in res.steps:
        lines.append(f"  {s.position + 1}: vertex {fmt_facets(P.vertices[s.vertex])}  "
                     f"p = {s.poly.text()}")
    lines.append("verification phi(P) == tuple: pass")
    payload = {"poly": res.poly.json_terms(),
               "steps": [{"position": s.position + 1,
                          "vertex": sorted(P.vertices[s.vertex]),
                          "poly": s.poly.json_terms()} for s in res.steps],
               "verified": True}
    return Report("interpolate", doc.name, "pass", 0, payload, "\n".join(lines))


def cmd_proptest(doc, args) -> Report:
    P = build_polytope(doc)
    bad = _require_valid(doc, P, "proptest", need_order=False)
    if bad:
        return bad
    order = None
    if doc.has_order_source:
        order, order_err = _order_or_error(doc, P)
    else:
        order_err = "no order source in the input document"
    g = build_gkm(P, doc.lam, order=order, bott=doc.use_bott)
    results = run_all(g, args.seed, args.cases, coords=doc.vertex_coords)
    if order is None:
        results = [r if r.cases or r.passed else
                   type(r)(r.name, r.cases, r.passed, order_err) for r in results]
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"proptest (seed {args.seed}, cases {args.cases}): "
                 + ("ALL PASS" if ok else "FAILURES"))
    payload = {"seed": args.seed, "cases": args.cases,
               "suites": [{"name": r.name, "cases": r.cases,
                           "passed": r.passed, "detail": r.detail} for r in results]}
    return Report("proptest", doc.name, "pass" if ok else "fail",
                  0 if ok else 1, payload, "\n".join(lines))


def _require_valid(doc, P, command, need_order=True):
    """None if the document passes validation, else a failure Report."""
    failures = list(validate_simple(P).failures)
    if not failures:
        failures = list(validate_characteristic(P, doc.lam).failures)
    if failures:
        human = "input fails validation:\n" + "\n".join("  " + f for f in failures)
        return Report(command, doc.name, "fail", 1, {"failures": failures}, human)
    if need_order and not doc.has_order_source:
        raise InputError("this command needs 'vertex_order' or "
                         "'vertex_coords'+'height_vector' in the input document")
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasik",
        description="Exact equivariant K-ring computations for quasitoric manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, tuple_arg=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="input JSON document")
        if tuple_arg:
            p.add_argument("tuple_file", help="fixed-point tuple JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    add("validate", "validate polytope, characteristic matrix and vertex order")
    p = add("gkm", "build the fixed-point graph and run the Euler-class checks")
    p.add_argument("--dot", metavar="PATH", help="write the graph in DOT format")
    p = add("facering", "face-ring data: non-faces, generators, certificate")
    p.add_argument("--ordinary", action="store_true",
                   help="also compute the ordinary presentation and rank")
    add("membership", "test a tuple against both membership predicates", tuple_arg=True)
    add("interpolate", "compute a face-ring preimage of a member tuple", tuple_arg=True)
    p = add("proptest", "run the seeded randomized invariant suites")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--cases", type=int, default=200)
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "gkm": cmd_gkm,
    "facering": cmd_facering,
    "membership": cmd_membership,
    "interpolate": cmd_interpolate,
    "proptest": cmd_proptest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_document(args.input)
        report = COMMANDS[args.command](doc, args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(report, args.json))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
