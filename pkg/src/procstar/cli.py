"""Command line interface.

Exit codes: 0 success or verified, 1 verified false, 2 usage or input
error, 3 undecided (a bounded engine ran out).
"""
from __future__ import annotations

import argparse
import sys

from . import serialize
from .functor import (Filtration, GeneratorMap, Properness, Status, induced_hom, is_proper,
                      verify_relation_preservation)
from .homotopy import HomotopyDiagram, cylinder, eta_endpoints, verify_homotopy
from .polynomial import ExpressionError, parse_expression
from .presentation import Presentation, present, to_text
from .repcheck import (MatrixRep, RepresentationError, ResidualError, matrix_unit_rep, relation_residual,
                       search_representation, vertex_norm_report)
from .rewrite import DEFAULT_BOUND, Decision, compile_system, decide_equal
from .sset import FiniteSimplicialSet, SimplicialError, SimplicialMap, validate, validate_map
from .subdivision import subdivide

OK, FALSE, USAGE, UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, doc: dict | None, text: str):
    if args.format == "json" and doc is not None:
        sys.stdout.write(serialize.dumps(doc))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_or_print(args, obj, text: str | None = None):
    out = getattr(args, "output", None)
    if out:
        serialize.write(obj, out)
    elif args.format == "text" and text is not None:
        sys.stdout.write(text)
    else:
        sys.stdout.write(serialize.dumps(serialize.to_document(obj)))


def _read(path: str, *kinds):
    obj = serialize.read(path)
    if kinds and not isinstance(obj, kinds):
        names = "/".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _require_valid(X, path):
    report = validate(X)
    if not report.ok:
        v = report.violations[0]
        raise UsageError(f"{path}: invalid simplicial set ({v.kind} at {v.simplex}: {v.detail})")


# --- subcommands ------------------------------------------------------------

def cmd_subdivide(args) -> int:
    X = _read(args.input, FiniteSimplicialSet)
    _require_valid(X, args.input)
    result = subdivide(X)
    if args.provenance:
        chain_doc = lambda chain: [list(s) for s in chain]
        prov = {name: {"simplex": tau, "chain": chain_doc(chain),
                       "members": [{"simplex": m, "chain": chain_doc(c)} for m, c in result.provenance[name]]}
                for name, (tau, chain) in result.rep.items()}
        with open(args.provenance, "w") as fh:
            fh.write(serialize.dumps({"schema": "provenance.v1", "classes": prov}))
    counts = result.sd.counts()
    _write_or_print(args, result.sd, f"Sd({X.name}): nondegenerate simplices by dimension {counts}\n")
    return OK


def cmd_present(args) -> int:
    X = _read(args.input, FiniteSimplicialSet)
    _require_valid(X, args.input)
    P = present(X, hasse=args.hasse)
    if args.text:
        args.format = "text"
    _write_or_print(args, P, to_text(P))
    return OK


def _load_presentation(path):
    return _read(path, Presentation)


def cmd_nf(args) -> int:
    P = _load_presentation(args.presentation)
    rs = compile_system(P, args.bound)
    try:
        p = parse_expression(args.expr, P.alphabet)
        q = parse_expression(args.equal, P.alphabet) if args.equal is not None else None
    except ExpressionError as e:
        raise UsageError(str(e)) from None
    nf = rs.normal_form(p)
    doc = {"expr": args.expr, "normal_form": nf.format(), "terms": nf.to_json(), "complete": rs.complete}
    code = OK
    if q is not None:
        d = decide_equal(rs, p, q)
        doc["equal"] = d.value
        code = {Decision.EQUAL: OK, Decision.DISTINCT: FALSE, Decision.UNKNOWN: UNKNOWN}[d]
    text = nf.format()
    if q is not None:
        text += f"\n{doc['equal']}"
    _emit(args, doc, text)
    return code


def cmd_induce(args) -> int:
    f = _read(args.input, SimplicialMap)
    problems = validate_map(f)
    if problems:
        raise UsageError(f"{args.input}: not a simplicial map ({problems[0]})")
    g = induced_hom(f, hasse=args.hasse)
    P = g.source_presentation
    text = "".join(f"{x} -> {g.image(x).format()}\n" for x in P.vertex_gens + P.edge_gens)
    _write_or_print(args, g, text)
    return OK


def cmd_check_proper(args) -> int:
    obj = _read(args.input, SimplicialMap, Filtration)
    try:
        v = is_proper(obj)
    except SimplicialError as e:
        raise UsageError(f"{args.input}: {e}") from None
    doc = {"verdict": v.verdict.value, "max_preimage": v.max_preimage, "witness": v.witness,
           "history": list(v.history)}
    text = f"{v.verdict.value} (max preimage {v.max_preimage})"
    if v.witness is not None:
        text += f"\nwitness: {v.witness}, preimage sizes {list(v.history)}"
    _emit(args, doc, text)
    if v.verdict == Properness.NOT_PROPER:
        return FALSE
    return UNKNOWN if v.verdict == Properness.UNKNOWN else OK


def cmd_verify(args) -> int:
    g = _read(args.input, GeneratorMap)
    report = verify_relation_preservation(g, bound=args.bound)
    bad = report.failures + report.unknowns
    doc = {"status": report.status.value, "checked": report.checked, "unit": report.unit.value,
           "failures": [c.describe() for c in report.failures],
           "unknowns": [c.describe() for c in report.unknowns]}
    lines = [f"{report.status.value}: {report.checked} relation instances, unit {report.unit.value}"]
    lines += [c.describe() for c in bad[:args.limit]]
    _emit(args, doc, "\n".join(lines))
    return {Status.PASS: OK, Status.FAIL: FALSE, Status.UNKNOWN: UNKNOWN}[report.status]


def cmd_check_homotopy(args) -> int:
    f1 = _read(args.f1, SimplicialMap)
    f2 = _read(args.f2, SimplicialMap)
    gamma = _read(args.gamma, SimplicialMap)
    X, Y = f1.source, f1.target
    if f2.source != X or f2.target != Y or gamma.target != Y:
        raise UsageError("f1, f2 and gamma do not share source and target")
    cyl = cylinder(X)
    if gamma.source != cyl.space:
        raise UsageError("gamma is not defined on the cylinder over the source of f1")
    f2 = SimplicialMap(X, Y, f2.images, name=f2.name)
    gamma = SimplicialMap(cyl.space, Y, gamma.images, name=gamma.name)
    d = HomotopyDiagram(f1, f2, gamma, cyl)
    v = verify_homotopy(d, require_proper=args.proper)
    doc = {"valid": v.valid, "witness": list(v.witness) if v.witness else None, "proper": v.proper}
    lines = ["valid homotopy" if v.valid else f"invalid: {v.witness[0]} fails on {v.witness[1]}"]
    if v.proper is not None:
        lines.append("proper: " + ", ".join(f"{k}={b}" for k, b in v.proper.items()))
    code = OK if v.ok else FALSE
    if args.eta and v.valid:
        cert = eta_endpoints(d, bound=args.bound)
        doc["eta"] = {"status": cert.status.value, "generators": len(cert.entries),
                      "omega": cert.omega, "failures": [list(map(str, x)) for x in cert.failures()]}
        lines.append(f"eta endpoints: {cert.status.value} on {len(cert.entries)} generators")
        if cert.status == Status.FAIL:
            code = FALSE
        elif cert.status == Status.UNKNOWN and code == OK:
            code = UNKNOWN
    _emit(args, doc, "\n".join(lines))
    return code


def cmd_rep(args) -> int:
    P = _load_presentation(args.presentation)
    doc: dict = {}
    lines = []
    rep = None
    if args.canonical:
        rep = matrix_unit_rep(P)
    elif args.search:
        if len(args.search) not in (2, 3):
            raise UsageError("--search takes DIM ITERS [SEED]")
        dim, iters = args.search[0], args.search[1]
        seed = args.search[2] if len(args.search) == 3 else args.seed
        res = search_representation(P, dim, iters, seed)
        rep = res.rep
        doc["search"] = {"dim": dim, "iterations": res.iterations, "seed": seed,
                         "residual": res.residual, "converged": res.converged}
        lines.append(f"search dim {dim} seed {seed}: residual {res.residual:.3g} "
                     f"({'converged' if res.converged else 'not converged'})")
    code = OK
    if args.check is not None:
        if args.check:
            rep = _read(args.check, MatrixRep)
        if rep is None:
            raise UsageError("--check needs a representation (file, --canonical or --search)")
        res = relation_residual(rep, P).max
        doc["max_residual"] = res
        lines.append(f"max residual {res:.3g} (tol {args.tol:g})")
        try:
            nr = vertex_norm_report(rep, P, tol=args.tol)
            doc["vertex_norms"] = nr.norms
            doc["vertex_checks_ok"] = nr.ok
            lines.append(f"vertex norms in [{min(nr.norms.values()):.12g}, {max(nr.norms.values()):.12g}]; "
                         f"projection/orthogonality {'ok' if nr.ok else 'FAILED'}")
            code = OK if nr.ok else FALSE
        except ResidualError as e:
            doc["error"] = str(e)
            lines.append(str(e))
            code = FALSE
    elif rep is None:
        raise UsageError("choose --canonical, --search or --check")
    if args.output and rep is not None:
        serialize.write(rep, args.output)
    if args.check is None and rep is not None and not args.output:
        if args.format == "json":
            doc["rep"] = serialize.to_document(rep)
        else:
            lines.append(f"representation of dimension {rep.dim}")
    _emit(args, doc, "\n".join(lines))
    return code


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=1e-9, help="verification tolerance (default 1e-9)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help=f"completion bound on overlap length (default {DEFAULT_BOUND})")

    parser = argparse.ArgumentParser(prog="procstar", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subdivide", parents=[common], help="barycentric subdivision")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--provenance")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("present", parents=[common], help="generators and relations")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--text", action="store_true", help="human-readable relations")
    p.add_argument("--hasse", action="store_true", help="arrows for covering pairs only")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    p.add_argument("presentation")
    p.add_argument("--expr", required=True)
    p.add_argument("--equal", help="decide equality with this expression")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("induce", parents=[common], help="generator map induced by a simplicial map")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--hasse", action="store_true")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("check-proper", parents=[common], help="properness of a map or filtration")
    p.add_argument("input")
    p.set_defaults(func=cmd_check_proper)

    p = sub.add_parser("verify", parents=[common], help="relation preservation of a generator map")
    p.add_argument("input")
    p.add_argument("--limit", type=int, default=10, help="failures to print")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-homotopy", parents=[common], help="simplicial homotopy diagram")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("gamma")
    p.add_argument("--proper", action="store_true")
    p.add_argument("--eta", action="store_true", help="certify the rotation endpoints")
    p.set_defaults(func=cmd_check_homotopy)

    p = sub.add_parser("rep", parents=[common], help="matrix representations")
    p.add_argument("presentation")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--canonical", action="store_true")
    mode.add_argument("--search", nargs="+", type=int, metavar="N", help="DIM ITERS [SEED]")
    p.add_argument("--check", nargs="?", const="", metavar="REP", help="check a representation")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_rep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else USAGE
    try:
        return args.func(args)
    except (UsageError, serialize.DocumentError, SimplicialError, RepresentationError,
            FileNotFoundError, IsADirectoryError) as e:
        print(f"procstar {args.command}: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
