"""Command line entry point: ``oretel solve|verify|gb|closure``.

Exit codes: 0 success, 1 usage or parse error, 2 method failure
(search exhausted, degree cap, completion cap), 3 verification failure.
"""

import argparse
import json
import logging
import os
import sys

from . import __version__
from .closure import dfinite_product, hyperexp_annihilator, hypergeometric_annihilator
from .errors import (
    CompletionCapExceeded,
    DegreeCapExceeded,
    IncompatibleCertificates,
    NotDFinite,
    ParseError,
    SearchExhausted,
)
from .fileio import (
    ProblemFile,
    basis_to_json,
    certificates_from_json,
    dump_json,
    generators_from_json,
    load_json,
    result_from_json,
    result_to_json,
)
from .groebner import left_buchberger
from .telescope import find_creative_telescoping, verify_numeric_shift, verify_symbolic
from .terms import Term, grid_points, parse_grid
from .termorder import TermOrder

EXIT_OK, EXIT_USAGE, EXIT_METHOD, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("oretel")


def _emit(obj, args, text=None):
    payload = dump_json(obj)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(payload)
    if text is None:
        sys.stdout.write(payload)
    else:
        print(text)


def _numeric_report(pf, problem, t, spec):
    num = pf.numeric or {}
    if "term" not in num:
        raise ValueError("problem file has no 'numeric.term' entry for the numeric check")
    grid = parse_grid(None if spec is True else spec, num.get("grid"))
    names = problem.algebra.variables
    pts = grid_points(grid, names)
    rep = verify_numeric_shift(t, problem, Term(num["term"]).oracle(names), pts)
    return rep, {
        "checked": rep.checked,
        "skipped": len(rep.skipped),
        "violations": len(rep.violations),
        "max_violation": str(rep.max_violation),
    }


def cmd_solve(args):
    pf = ProblemFile.load(args.problem)
    if args.order:
        pf.order = TermOrder.parse(args.order)
    overrides = {
        "support": args.support,
        "denominator": args.denominator,
        "max_degree": args.max_degree,
        "prime": args.prime,
        "seed": args.seed,
    }
    if args.no_minimize:
        overrides["minimize_common"] = False
        overrides["minimize_individual"] = False
    opts = pf.solver_options(**overrides)
    problem = pf.problem()
    t = find_creative_telescoping(problem, opts)
    ok = verify_symbolic(t, problem)
    numeric = None
    if args.numeric is not None:
        rep, numeric = _numeric_report(pf, problem, t, args.numeric)
        ok = ok and rep.ok
    res = result_to_json(t, problem, symbolic=ok, numeric=numeric)
    if args.json_out or args.format == "json":
        _emit(res, args, None if args.format == "json" else _pretty(res))
    else:
        print(_pretty(res))
    return EXIT_OK if ok else EXIT_VERIFY


def _pretty(res):
    lines = [f"principal part: {res['principal']}"]
    for v, q in zip(res["telescope"], res["certificates"]):
        lines.append(f"certificate for {v}: {q}")
    st = res.get("statistics", {})
    if st:
        lines.append("stats: " + ", ".join(f"{k}={st[k]}" for k in ("stairs", "support", "delta", "unknowns", "seconds") if k in st))
    lines.append(f"verified: {res['verification']['symbolic']}")
    if "numeric" in res["verification"]:
        lines.append(f"numeric: {res['verification']['numeric']}")
    return "\n".join(lines)


def cmd_verify(args):
    pf = ProblemFile.load(args.problem)
    problem = pf.problem()
    t = result_from_json(load_json(args.result), pf.algebra)
    sym = verify_symbolic(t, problem)
    report = {"symbolic": sym}
    ok = sym
    if args.numeric is not None:
        rep, report["numeric"] = _numeric_report(pf, problem, t, args.numeric)
        ok = ok and rep.ok
    _emit(report, args)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gb(args):
    alg, ops = generators_from_json(load_json(args.file))
    order = TermOrder.parse(args.order or load_json(args.file).get("order", "degrevlex"))
    G = left_buchberger(ops, order)
    _emit(basis_to_json(G), args)
    return EXIT_OK


def cmd_closure(args):
    if args.kind in ("hypergeom", "hyperexp"):
        if len(args.inputs) != 1:
            raise ValueError(f"closure {args.kind} takes exactly one certificate file")
        cert = certificates_from_json(load_json(args.inputs[0]))
        G = hypergeometric_annihilator(cert) if args.kind == "hypergeom" else hyperexp_annihilator(cert)
    else:
        if len(args.inputs) < 2:
            raise ValueError("closure product needs at least two inputs")
        bases = []
        for path in args.inputs:
            alg, ops = generators_from_json(load_json(path))
            bases.append(left_buchberger(ops))
        if any(b.algebra != bases[0].algebra for b in bases):
            raise ValueError("inputs live in different algebras")
        G = bases[0]
        for b in bases[1:]:
            G = dfinite_product(G, b, seed=args.seed or 0)
    _emit(basis_to_json(G), args)
    return EXIT_OK


def build_parser():
    seed_default = os.environ.get("ORETEL_SEED")
    ap = argparse.ArgumentParser(prog="oretel", description="Creative telescoping with a rational ansatz.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find a telescoper for a problem file", formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    s.add_argument("problem", help="problem JSON file or bundled example name")
    s.add_argument("--support", help="fixed principal support, e.g. '1,Da'")
    s.add_argument("--denominator", help="fixed common delta-part denominator")
    s.add_argument("--max-degree", type=int, default=None, help="cap on the numerator degree loop (default 6)")
    s.add_argument("--seed", type=int, default=int(seed_default) if seed_default else None, help="evaluation seed (ORETEL_SEED)")
    s.add_argument("--prime", type=int, default=None, help="modulus for homomorphic images (default 2147483629)")
    s.add_argument("--no-minimize", action="store_true", help="skip denominator minimization")
    s.add_argument("--order", help="term order: degrevlex, lex or weighted(w1,...)")
    s.add_argument("--numeric", nargs="?", const=True, help="also check pointwise on a grid, e.g. 'n=0..4'")
    s.add_argument("--json-out", help="write the result file here")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a result file against a problem file")
    v.add_argument("problem")
    v.add_argument("result")
    v.add_argument("--numeric", nargs="?", const=True, help="grid spec, e.g. 'n=0..4'")
    v.add_argument("--json-out")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gb", help="left Groebner basis of a generator file")
    g.add_argument("file")
    g.add_argument("--order")
    g.add_argument("--json-out")
    g.set_defaults(func=cmd_gb)

    c = sub.add_parser("closure", help="annihilators from term ratios or of products")
    c.add_argument("kind", choices=("hypergeom", "hyperexp", "product"))
    c.add_argument("inputs", nargs="+")
    c.add_argument("--seed", type=int, default=int(seed_default) if seed_default else None)
    c.add_argument("--json-out")
    c.set_defaults(func=cmd_closure)
    return ap


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, ValueError, KeyError, FileNotFoundError, json.JSONDecodeError, IncompatibleCertificates) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegreeCapExceeded as exc:
        print(f"DegreeCapExceeded: {exc}", file=sys.stderr)
        return EXIT_METHOD
    except (SearchExhausted, CompletionCapExceeded, NotDFinite) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_METHOD


if __name__ == "__main__":
    sys.exit(main())
