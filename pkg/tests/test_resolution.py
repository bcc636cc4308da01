from fractions import Fraction

import pytest

from equising.polynomials import parse
from equising.puiseux import PuiseuxError
from equising.resolution import (
    NonRationalPoint,
    ResolutionError,
    ResolutionScene,
    common_points,
    contract_minimal,
    dual_graph,
    embedded_resolve,
    is_negative_definite,
    multiplicity_sequence_from_blowups,
    predicted_multiplicity_sequence,
    singular_points,
)


def chart_poly(expr):
    return parse(expr, ["x", "z"])


# -- exact point solving -----------------------------------------------------------


def test_common_points_basic():
    assert common_points(chart_poly("z^2 - x"), chart_poly("z")) == [(0, 0)]
    assert common_points(chart_poly("x"), chart_poly("z - 1")) == [(0, 1)]
    assert common_points(chart_poly("x - 1"), chart_poly("x + 1")) == []


def test_common_points_vertical_component():
    # first polynomial vanishes on the line x = 0
    pts = common_points(chart_poly("x*z - x"), chart_poly("z + x - 3"))
    assert (0, 3) in pts


def test_common_points_irrational_raises():
    with pytest.raises(NonRationalPoint):
        common_points(chart_poly("z^2 - 2"), chart_poly("x"))


def test_singular_points():
    assert singular_points(chart_poly("z^2 - x^3")) == [(0, 0)]
    assert singular_points(chart_poly("z^2 - x^2")) == [(0, 0)]
    assert singular_points(chart_poly("z - x^2")) == []
    assert singular_points(chart_poly("1 - x^3*z")) == []
    # node away from the origin
    assert singular_points(chart_poly("z^2 - (x - 1)^2")) == [(1, 0)]


# -- blowups ----------------------------------------------------------------------------


def test_blowup_cusp_first_chart():
    scene = ResolutionScene.initial(parse("Z^2 - X^3", ["X", "Z"]))
    scene = scene.blowup_point(0, (0, 0))
    chart_a = scene.charts[1]
    assert chart_a.components["C"][0] == chart_poly("z^2 - x")
    assert chart_a.components["E1"] == (chart_poly("x"), 2)
    assert scene.verify_pullback()


def test_blowup_node_first_chart():
    scene = ResolutionScene.initial(parse("Z^2 - X^2", ["X", "Z"]))
    scene = scene.blowup_point(0, (0, 0))
    chart_a = scene.charts[1]
    assert chart_a.components["C"][0] == chart_poly("z^2 - 1")
    # two points on E1, strict transform smooth and transverse there
    ok, offenders = scene.is_normal_crossings()
    assert ok and offenders == []


def test_blowup_smooth_point():
    scene = ResolutionScene.initial(parse("Z - X^2", ["X", "Z"]))
    scene2 = scene.blowup_point(0, (0, 0))
    ok, _ = scene2.is_normal_crossings()
    assert ok
    assert scene2.verify_pullback()


def test_blowup_center_off_divisor():
    scene = ResolutionScene.initial(parse("Z^2 - X^3", ["X", "Z"]))
    with pytest.raises(ResolutionError):
        scene.blowup_point(0, (1, 1))


def test_initial_requires_squarefree_and_origin():
    with pytest.raises(ResolutionError):
        ResolutionScene.initial(parse("(Z - X)^2", ["X", "Z"]))
    with pytest.raises(ResolutionError):
        ResolutionScene.initial(parse("Z - X - 1", ["X", "Z"]))


# -- normal crossings --------------------------------------------------------------------


def test_nc_cusp_progression():
    scene = ResolutionScene.initial(parse("Z^2 - X^3", ["X", "Z"]))
    scene1 = scene.blowup_point(0, (0, 0))
    ok, offenders = scene1.is_normal_crossings()
    assert not ok  # strict transform tangent to E1
    assert len(offenders) == 1
    full, _ = embedded_resolve(parse("Z^2 - X^3", ["X", "Z"]))
    assert full.is_normal_crossings()[0]


def test_nc_axes_scene():
    f = parse("x*z", ["x", "z"])
    sc = ResolutionScene.initial(f, factors=[chart_poly("x"), chart_poly("z")])
    ok, offenders = sc.is_normal_crossings()
    assert ok and offenders == []


# -- full resolutions ---------------------------------------------------------------------


def test_cusp_resolution_complete():
    scene, graph = embedded_resolve(parse("Z^2 - X^3", ["X", "Z"]))
    assert len(scene.history) == 3
    assert scene.self_intersections == {"E1": -3, "E2": -2, "E3": -1}
    order, matrix = graph.matrix()
    assert order == ["C", "E1", "E2", "E3"]
    assert matrix == [
        [0, 0, 0, 1],
        [0, -3, 0, 1],
        [0, 0, -2, 1],
        [1, 1, 1, -1],
    ]
    labels, eblock = graph.exceptional_block()
    assert is_negative_definite(eblock)
    assert scene.verify_pullback()


def test_node_resolution():
    scene, graph = embedded_resolve(parse("Z^2 - X^2", ["X", "Z"]))
    assert len(scene.history) == 1
    assert graph.vertices == [("C", 0), ("E1", -1)]
    assert graph.edges == {frozenset(("C", "E1")): 2}


def test_tangent_pair_resolution():
    scene, graph = embedded_resolve(parse("Z^2 - X^4", ["X", "Z"]))
    assert len(scene.history) == 2
    labels, eblock = graph.exceptional_block()
    assert is_negative_definite(eblock)


def test_smooth_resolution_convention():
    scene, graph = embedded_resolve(parse("Z - X^2", ["X", "Z"]))
    assert len(scene.history) == 0
    assert graph.matrix() == (["C"], [[0]])


def test_negative_definiteness_battery():
    for expr in ["Z^2 - X^3", "Z^2 - X^2", "Z^2 - X^4", "Z^2 - X^5", "Z^3 - X^4"]:
        _, graph = embedded_resolve(parse(expr, ["X", "Z"]))
        labels, eblock = graph.exceptional_block()
        if labels:
            assert is_negative_definite(eblock), expr


def test_self_intersection_sum_rule():
    # each blowup drops by one exactly the exceptional curves through the center
    scene, _ = embedded_resolve(parse("Z^2 - X^5", ["X", "Z"]))
    drops = {l: -1 - s for l, s in scene.self_intersections.items()}
    # E_k is crossed by later centers (drop count) consistent with history length
    assert sum(drops.values()) >= 0
    assert scene.self_intersections["E%d" % len(scene.birth_step)] == -1


# -- multiplicity sequences: the two paths ----------------------------------------------------


SEQ_CASES = {
    "Z^2 - X^3": (2, 1, 1),
    "Z^2 - X^5": (2, 2, 1, 1),
    "Z^3 - X^4": (3, 1, 1, 1),
    "Z^2 - X^4": (2, 2),
    "Z^2 - X^2": (2,),
}


@pytest.mark.parametrize("expr,expected", sorted(SEQ_CASES.items()))
def test_multiplicity_sequence_two_paths(expr, expected):
    f = parse(expr, ["X", "Z"])
    blow = multiplicity_sequence_from_blowups(f)
    pred = predicted_multiplicity_sequence(f, x_var="X", z_var="Z")
    assert blow == expected
    assert pred == expected


def test_multiplicity_sequence_two_stage_branch():
    f = parse("(Z - X^2)^2 - X^5", ["X", "Z"])
    assert multiplicity_sequence_from_blowups(f, max_steps=96) == (2, 2, 1, 1)
    assert predicted_multiplicity_sequence(f, x_var="X", z_var="Z") == (2, 2, 1, 1)


def test_non_rational_infinitely_near_point_refused():
    f = parse("(Z^2 - X^3)^2 - 4*X^5*Z - X^7", ["X", "Z"])
    with pytest.raises(NonRationalPoint):
        multiplicity_sequence_from_blowups(f, max_steps=96)


def test_budget_guard():
    with pytest.raises(ResolutionError):
        embedded_resolve(parse("Z^2 - X^3", ["X", "Z"]), max_steps=1)


# -- dual graph post-passes -----------------------------------------------------------------


def test_contract_minimal_no_op_on_cusp():
    _, graph = embedded_resolve(parse("Z^2 - X^3", ["X", "Z"]))
    contracted = contract_minimal(graph)
    assert {l for l, _ in contracted.vertices} == {"C", "E1", "E2", "E3"}


def test_contract_minimal_keeps_node_nc():
    _, graph = embedded_resolve(parse("Z^2 - X^2", ["X", "Z"]))
    contracted = contract_minimal(graph)
    # E1 meets the single labelled strict component twice: not contractible
    assert ("E1", -1) in contracted.vertices


def test_contract_minimal_contracts_free_exceptional():
    # blow up a smooth free point: E1 meets C once and is contractible
    scene = ResolutionScene.initial(parse("Z - X^2", ["X", "Z"]))
    scene = scene.blowup_point(0, (0, 0))
    graph = dual_graph(scene)
    contracted = contract_minimal(graph)
    assert [l for l, _ in contracted.vertices] == ["C"]


def test_dot_output():
    _, graph = embedded_resolve(parse("Z^2 - X^3", ["X", "Z"]))
    dot = graph.to_dot()
    assert dot.startswith("graph dual {")
    assert '"E1" [label="E1 (-3)"]' in dot
    assert '"C" -- "E3"' in dot
