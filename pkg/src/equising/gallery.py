"""The worked-example gallery: every headline computation in one report.

Covers the four introductory surfaces (multiplicity jumps, the failure of
equimultiplicity to capture equisingularity, the topologically-constant
family of four lines, the Whitney arc failure), the dimensionality-type
battery, the cusp resolution with its intersection matrix, the
quasi-ordinary examples, and the tent stratification.  The report is a
deterministic JSON-serializable dict: two runs with the same seed are
byte-identical.
"""

from __future__ import annotations

from fractions import Fraction

from equising.polynomials import parse
from equising.germs import Arc, Germ, equimultiplicity_scan, whitney_arc_test
from equising.dimtype import dimensionality_type
from equising.puiseux import characteristic_data
from equising.resolution import (
    dual_graph,
    embedded_resolve,
    is_negative_definite,
    multiplicity_sequence_from_blowups,
    predicted_multiplicity_sequence,
)
from equising.quasiordinary import (
    characteristic_monomials,
    qo_disc_identity,
    qo_same_type,
    qo_test,
)
from equising.strata import (
    Partition,
    StratPoset,
    build_filtration,
    check_filtration,
    partition_condition,
    tent_instance,
    verify_coarsest,
)


def _frac(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def _surface_families(seed: int):
    out = {}
    axis = Arc.from_strings(["0", "0", "t"])

    f_a = parse("X^3 - T*Y^2", ["X", "Y", "T"])
    scan = equimultiplicity_scan(f_a, axis, [0, 1, -1, 2, Fraction(1, 2)])
    out["cubic_family_multiplicities"] = {
        "polynomial": "X^3 - T*Y^2",
        "along": "T-axis",
        "values": [[_frac(c) for c in p] + [m] for p, m in scan],
    }
    dt_O = dimensionality_type(Germ(f_a, (0, 0, 0)), samples=5, seed=seed)
    dt_L = dimensionality_type(Germ(f_a, (0, 0, 1)), samples=5, seed=seed)
    out["cubic_family_dimensionality_type"] = {
        "at_origin": {"value": dt_O.value, "agreed": dt_O.agreed},
        "at_(0,0,1)": {"value": dt_L.value, "agreed": dt_L.agreed},
    }

    f_b = parse("X^2 - T*Y^2", ["X", "Y", "T"])
    scan_b = equimultiplicity_scan(f_b, axis, [0, 1, -1, 2])
    y = Arc.from_strings(["0", "0", "t"], ramification=2)
    z = Arc.from_strings(["t^4", "t^2", "t^4"], ramification=2)
    verdict = whitney_arc_test(Germ(f_b, (0, 0, 0)), y, z)
    out["quadric_family"] = {
        "polynomial": "X^2 - T*Y^2",
        "equimultiple_along_axis": sorted({m for _, m in scan_b}) == [2],
        "whitney_arcs": {
            "y": "(0, 0, t^(1/2)) cleared by t -> t^2",
            "z": "(t^4, t^2, t^4)",
            "limit_tangent_normal": [_frac(c) for c in verdict.limit_tangent_normal],
            "limit_secant_direction": [_frac(c) for c in verdict.limit_secant_direction],
            "holds": verdict.holds,
        },
    }

    f_c = parse("X*(X+Y)*(X-Y)*(T*X+Y)", ["X", "Y", "T"])
    dts = {}
    for label, t in (("origin", 0), ("t=2", 2)):
        rep = dimensionality_type(Germ(f_c, (0, 0, t)), samples=2, seed=seed)
        dts[label] = {"value": rep.value, "agreed": rep.agreed}
    out["four_lines_family"] = {
        "polynomial": "X*(X+Y)*(X-Y)*(T*X+Y)",
        "dimensionality_type_along_axis": dts,
    }
    return out


def _dt_battery(seed: int):
    rows = []
    cases = [
        ("Z - X^2", ["X", "Z"], (0, 0), 0),
        ("Z^2 - X^2", ["X", "Z"], (0, 0), 1),
        ("Z^2 - X^3", ["X", "Z"], (0, 0), 1),
        ("X1*X2*X3", ["X1", "X2", "X3"], (0, 0, 0), 2),
        ("X^3 - T*Y^2", ["X", "Y", "T"], (0, 0, 0), 2),
        ("X^3 - T*Y^2", ["X", "Y", "T"], (0, 0, 1), 1),
        ("X - 1", ["X", "Y"], (0, 0), -1),
    ]
    for expr, vs, pt, expected in cases:
        rep = dimensionality_type(Germ(parse(expr, vs), pt), samples=5, seed=seed)
        rows.append(
            {
                "polynomial": expr,
                "point": [_frac(c) for c in pt],
                "value": rep.value,
                "agreed": rep.agreed,
                "expected": expected,
            }
        )
    return rows


def _resolution_gallery():
    out = {}
    f = parse("Z^2 - X^3", ["X", "Z"])
    scene, graph = embedded_resolve(f)
    order, matrix = graph.matrix()
    labels, eblock = graph.exceptional_block()
    out["cusp"] = {
        "blowups": len(scene.history),
        "normal_crossings": scene.is_normal_crossings()[0],
        "components": order,
        "intersection_matrix": matrix,
        "self_intersections": {l: s for l, s in graph.vertices if l.startswith("E")},
        "negative_definite": is_negative_definite(eblock),
        "pullback_identity": scene.verify_pullback(),
    }
    seq = {}
    for expr in ["Z^2 - X^3", "Z^2 - X^5", "Z^3 - X^4", "Z^2 - X^4", "Z^2 - X^2"]:
        g = parse(expr, ["X", "Z"])
        blow = multiplicity_sequence_from_blowups(g)
        pred = predicted_multiplicity_sequence(g, x_var="X", z_var="Z")
        seq[expr] = {
            "from_blowups": list(blow),
            "from_characteristic_exponents": list(pred),
            "agree": blow == pred,
        }
    out["multiplicity_sequences"] = seq
    branches, chardata = characteristic_data(parse("Z^2 - X^3", ["X", "Z"]), "X", "Z")
    out["cusp_characteristic_data"] = {
        "exponents": [_frac(e) for e in chardata[0].char_exponents],
        "pairs": [list(p) for p in chardata[0].char_pairs],
        "multiplicity_sequence": list(chardata[0].mult_sequence),
    }
    return out


def _quasiordinary_gallery():
    V = ["X", "Y", "Z"]
    out = {}
    rows = []
    for expr in ["Z^2 - X^3*Y^5", "Z^2 - X^2*Y", "Z^2 - X*Y*(X+Y)"]:
        cert = qo_test(parse(expr, V), "Z", ("X", "Y"))
        row = {
            "polynomial": expr,
            "is_qo": cert.is_qo,
            "raw_exponents": list(cert.raw_exponents),
            "reduced_exponents": list(cert.reduced_exponents),
        }
        if cert.is_qo:
            cm = characteristic_monomials(parse(expr, V))
            row["characteristic_monomials"] = [[_frac(a), _frac(b)] for a, b in cm.monomials]
            row["disc_identity"] = qo_disc_identity(parse(expr, V))
        rows.append(row)
    out["certificates"] = rows
    out["same_type"] = {
        "Z^2-X^3*Y^5 vs Z^2-X^5*Y^3": qo_same_type(
            parse("Z^2 - X^3*Y^5", V), parse("Z^2 - X^5*Y^3", V)
        ),
        "Z^2-X^3*Y^5 vs perturbed": qo_same_type(
            parse("Z^2 - X^3*Y^5", V), parse("Z^2 - X^3*Y^5 + X^4*Y^5", V)
        ),
        "Z^2-X^3 vs Z^2-X^5": qo_same_type(parse("Z^2 - X^3", V), parse("Z^2 - X^5", V)),
    }
    return out


def _strata_gallery():
    out = {}
    poset, oracle = tent_instance()
    filt = build_filtration(poset, oracle)
    rep = check_filtration(poset, filt)
    coarse = verify_coarsest(poset, oracle, enumerate_all=True)
    out["tent"] = {
        "levels": [list(l) for l in filt.levels],
        "axioms_pass": rep.ok,
        "enumerated_c_stratifications": coarse.enumerated,
        "all_refine_coarsest": coarse.all_refine,
    }
    p = StratPoset.build(
        dims={"V": 2, "L": 1, "O": 0},
        order_pairs=[("L", "V"), ("O", "L")],
        sing={"V": ("L",)},
    )
    part = Partition.build(
        p, {"generic": frozenset({"V"}), "axis": frozenset({"L"}), "origin": frozenset({"O"})}
    )
    filt2 = build_filtration(p, partition_condition(p, part))
    out["dt_fiber_partition"] = {
        "instance": "V > L > O with Sing(V) = L (the cubic family pattern)",
        "levels": [list(l) for l in filt2.levels],
        "strata": "V-L, L-O, O",
    }
    return out


def run_gallery(seed: int = 42):
    return {
        "seed": seed,
        "surfaces": _surface_families(seed),
        "dimensionality_type": _dt_battery(seed),
        "resolution": _resolution_gallery(),
        "quasi_ordinary": _quasiordinary_gallery(),
        "stratifications": _strata_gallery(),
    }
