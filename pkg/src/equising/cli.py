"""Command-line front end.

Subcommands: mult, whitney, dt, resolve, puiseux, qo, stratify, gallery.
All output is JSON (schema field included); DOT is emitted for resolution
dual graphs on request.  Exit codes: 0 success, 1 usage error,
2 computation error (JSON diagnostics on stderr), 3 dt disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from equising.polynomials import Poly, PolyError, parse
from equising.germs import Arc, Germ, GermError, equimultiplicity_scan, parse_arc, whitney_arc_test
from equising.dimtype import DtError, dimensionality_type, dt_scan
from equising.puiseux import PuiseuxError, characteristic_data, puiseux_expansions
from equising.resolution import (
    NonRationalPoint,
    ResolutionError,
    contract_minimal,
    dual_graph,
    embedded_resolve,
    is_negative_definite,
)
from equising.quasiordinary import (
    QOError,
    characteristic_monomials,
    qo_disc_identity,
    qo_roots,
    qo_same_type,
    qo_test,
)
from equising.strata import (
    StrataError,
    build_filtration,
    check_filtration,
    poset_from_json,
    tent_instance,
    verify_coarsest,
)

SCHEMA = 1
DEFAULT_SEED = 42


def _frac(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def _point(text: str):
    return tuple(Fraction(p.strip()) for p in text.split(","))


def _emit(payload, path=None):
    payload = {"schema": SCHEMA, **payload}
    text = json.dumps(payload, sort_keys=True, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    sys.stdout.write(text + "\n")


def _fail(kind, message, code=2):
    sys.stderr.write(
        json.dumps({"schema": SCHEMA, "error": kind, "message": str(message)}, sort_keys=True)
        + "\n"
    )
    return code


# -- subcommands -------------------------------------------------------------------


def cmd_mult(args):
    f = parse(args.poly, args.vars)
    germ = Germ(f, _point(args.point))
    _emit(
        {
            "multiplicity": germ.multiplicity(),
            "empty": germ.is_empty,
            "smooth": (not germ.is_empty) and germ.is_smooth(),
        },
        args.json,
    )
    return 0


def cmd_whitney(args):
    f = parse(args.poly, args.vars)
    germ = Germ(f, _point(args.point))
    y = parse_arc(args.y_arc)
    z = parse_arc(args.z_arc)
    verdict = whitney_arc_test(germ, y, z, order=args.order)
    _emit(
        {
            "limit_tangent_normal": [_frac(c) for c in verdict.limit_tangent_normal],
            "limit_secant_direction": [_frac(c) for c in verdict.limit_secant_direction],
            "holds": verdict.holds,
        },
        args.json,
    )
    return 0


def cmd_dt(args):
    f = parse(args.poly, args.vars)
    germ = Germ(f, _point(args.point))
    report = dimensionality_type(germ, samples=args.samples, seed=args.seed)
    _emit(
        {"value": report.value, "agreed": report.agreed, "trace": report.to_jsonable()},
        args.json,
    )
    return 0 if report.agreed else 3


def cmd_resolve(args):
    f = parse(args.poly, args.vars)
    scene, graph = embedded_resolve(f, max_steps=args.max_steps)
    if args.minimal:
        graph = contract_minimal(graph)
    order, matrix = graph.matrix()
    labels, eblock = graph.exceptional_block()
    payload = {
        "blowups": len(scene.history),
        "normal_crossings": scene.is_normal_crossings()[0],
        "components": order,
        "self_intersections": {l: s for l, s in graph.vertices},
        "intersection_matrix": matrix,
        "exceptional_block_negative_definite": is_negative_definite(eblock) if labels else True,
        "edges": {
            "--".join(sorted(pair)): mult for pair, mult in graph.edges.items()
        },
        "strict_multiplicities": [
            h.strict_multiplicity for h in scene.history if h.strict_multiplicity >= 1
        ],
        "pullback_identity": scene.verify_pullback(),
    }
    _emit(payload, args.json)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph.to_dot())
    return 0


def _series_jsonable(s):
    return {
        "ramification": s.ramification,
        "exact": s.exact,
        "truncation": _frac(s.truncation),
        "conjugates": s.nconj,
        "symbol": s.symbol.label if s.symbol else None,
        "terms": {
            str(Fraction(k, s.ramification)): repr(v) for k, v in sorted(s.terms.items())
        },
    }


def cmd_puiseux(args):
    f = parse(args.poly, args.vars)
    trunc = Fraction(args.trunc) if args.trunc else None
    x_var, z_var = args.vars
    branches, chardata = characteristic_data(f, x_var=x_var, z_var=z_var, trunc=trunc)
    payload = {
        "branches": [
            {
                **_series_jsonable(b),
                "char_exponents": [_frac(e) for e in cd.char_exponents],
                "char_pairs": [list(p) for p in cd.char_pairs],
                "multiplicity_sequence": list(cd.mult_sequence),
            }
            for b, cd in zip(branches, chardata)
        ]
    }
    _emit(payload, args.json)
    return 0


def cmd_qo(args):
    varlist = args.vars
    f = parse(args.poly, varlist)
    main = args.main
    base = tuple(v for v in varlist if v != main and (args.param is None or v != args.param))[:2]
    cert = qo_test(f, main, base)
    payload = {
        "is_qo": cert.is_qo,
        "raw_exponents": list(cert.raw_exponents),
        "reduced_exponents": list(cert.reduced_exponents),
        "unit_constant": _frac(cert.unit_constant),
        "witness": str(cert.witness),
    }
    if cert.is_qo and not args.test_only:
        cm = characteristic_monomials(f, main, base, trunc=Fraction(args.trunc) if args.trunc else None)
        payload["characteristic_monomials"] = [[_frac(a), _frac(b)] for a, b in cm.monomials]
        payload["normalized_monomials"] = [[_frac(a), _frac(b)] for a, b in cm.normalized]
        payload["denominator"] = cm.denominator
        payload["all_integral"] = cm.all_integral
        payload["disc_identity"] = qo_disc_identity(f, main, base)
    _emit(payload, args.json)
    return 0


def cmd_stratify(args):
    if args.poset == "tent":
        poset, oracle = tent_instance()
    else:
        with open(args.poset) as fh:
            poset, oracle = poset_from_json(fh.read())
    filt = build_filtration(poset, oracle)
    report = check_filtration(poset, filt)
    payload = {
        "levels": [list(level) for level in filt.levels],
        "strata": [[w, i] for w, i in filt.strata()],
        "axioms": {
            "dense_smooth": report.condition1,
            "frontier": report.condition2,
            "pure_codimension": report.condition3,
        },
    }
    if args.enumerate:
        rep = verify_coarsest(poset, oracle, enumerate_all=True)
        payload["enumerated_c_stratifications"] = rep.enumerated
        payload["all_refine_coarsest"] = rep.all_refine
    _emit(payload, args.json)
    return 0


def cmd_gallery(args):
    from equising.gallery import run_gallery

    payload = run_gallery(seed=args.seed)
    _emit(payload, args.json)
    return 0


# -- argument parsing ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(Exception):
    pass


def _vars_list(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser():
    top = _Parser(prog="equising", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, point=True):
        p.add_argument("--poly", required=True, help="polynomial expression")
        p.add_argument("--vars", required=True, type=_vars_list, help="comma-separated variables")
        if point:
            p.add_argument("--point", default=None, help="comma-separated rational coordinates")
        p.add_argument("--json", default=None, help="also write the JSON payload to this file")

    p = sub.add_parser("mult", help="multiplicity of a germ at a point")
    common(p)
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("whitney", help="arc-based Whitney condition test")
    common(p)
    p.add_argument("--y-arc", required=True, help="components in t, e.g. '0,0,t' or '... , ram=2'")
    p.add_argument("--z-arc", required=True)
    p.add_argument("--order", type=int, default=16, help="series truncation order for the on-V check")
    p.set_defaults(func=cmd_whitney)

    p = sub.add_parser("dt", help="dimensionality type via sampled projections")
    common(p)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_dt)

    p = sub.add_parser("resolve", help="embedded resolution of a plane-curve germ")
    common(p, point=False)
    p.add_argument("--minimal", action="store_true", help="contract removable (-1)-curves in the dual graph")
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--dot", default=None, help="write the dual graph in DOT format")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("puiseux", help="Newton-Puiseux expansions and characteristic data")
    common(p, point=False)
    p.add_argument("--trunc", default=None, help="truncation order (rational)")
    p.set_defaults(func=cmd_puiseux)

    p = sub.add_parser("qo", help="quasi-ordinary test and characteristic monomials")
    common(p, point=False)
    p.add_argument("--main", default="Z")
    p.add_argument("--param", default=None, help="family parameter variable")
    p.add_argument("--trunc", default=None)
    p.add_argument("--test-only", action="store_true")
    p.set_defaults(func=cmd_qo)

    p = sub.add_parser("stratify", help="coarsest C-stratification of a poset instance")
    p.add_argument("--poset", required=True, help="JSON file, or 'tent' for the built-in example")
    p.add_argument("--enumerate", action="store_true", help="exhaustively certify coarseness")
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_stratify)

    p = sub.add_parser("gallery", help="run every worked example and emit one report")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_gallery)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(
            json.dumps({"schema": SCHEMA, "error": "usage", "message": str(exc)}, sort_keys=True)
            + "\n"
        )
        return 1
    try:
        return args.func(args)
    except (
        PolyError,
        GermError,
        DtError,
        PuiseuxError,
        ResolutionError,
        QOError,
        StrataError,
        NonRationalPoint,
        ValueError,
        OSError,
    ) as exc:
        return _fail(type(exc).__name__, exc)


if __name__ == "__main__":
    sys.exit(main())
