import random
from fractions import Fraction

import pytest

from equising.germs import (
    Arc,
    Germ,
    GermError,
    LinearChange,
    equimultiplicity_scan,
    parse_arc,
    regularize,
    whitney_arc_test,
)
from equising.polynomials import parse


CUBIC = parse("X^3 - T*Y^2", ["X", "Y", "T"])


def test_multiplicity_along_family():
    assert Germ(CUBIC, (0, 0, 0)).multiplicity() == 3
    for t in (1, -1, 2, Fraction(1, 2)):
        assert Germ(CUBIC, (0, 0, t)).multiplicity() == 2


def test_translate_to_origin():
    g = Germ(CUBIC, (0, 0, 1)).translate_to_origin()
    assert g.f == parse("X^3 - T*Y^2 - Y^2", ["X", "Y", "T"])
    g0 = Germ(CUBIC, (0, 0, 0))
    assert g0.translate_to_origin() is g0
    lin = Germ(parse("Z - X", ["X", "Z"]), (1, 1)).translate_to_origin()
    assert lin.f == parse("Z - X", ["X", "Z"])


def test_multiplicity_off_hypersurface_flags_empty():
    g = Germ(parse("X - 1", ["X", "Y"]), (0, 0))
    assert g.is_empty
    assert g.multiplicity() == 0


def test_is_smooth():
    assert Germ(parse("Z - X^2", ["X", "Z"]), (0, 0)).is_smooth()
    assert not Germ(CUBIC, (0, 0, 0)).is_smooth()
    assert not Germ(CUBIC, (0, 0, 1)).is_smooth()
    with pytest.raises(GermError):
        Germ(parse("X - 1", ["X", "Y"]), (0, 0)).is_smooth()


def test_multiplicity_invariant_under_linear_change():
    rng = random.Random(17)
    ring = CUBIC.variables
    g = Germ(CUBIC, (0, 0, 0))
    m = g.multiplicity()
    for _ in range(5):
        while True:
            rows = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
            det = (
                rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
            )
            if det != 0:
                break
        change = LinearChange(ring, tuple(tuple(r) for r in rows))
        assert Germ(change.apply(CUBIC), (0, 0, 0)).multiplicity() == m


def test_regularize_identity_when_regular():
    g, change = regularize(Germ(parse("Z^2 - X^3", ["X", "Z"]), (0, 0)), "Z", seed=1)
    assert change.is_identity
    g2, change2 = regularize(Germ(CUBIC, (0, 0, 0)), "X", seed=1)
    assert change2.is_identity  # pure X^3 term present


def test_regularize_degenerate_direction():
    f = parse("X*Y", ["X", "Y", "Z"])
    g, change = regularize(Germ(f, (0, 0, 0)), "Z", seed=3)
    assert not change.is_identity
    # pure Z^2 term with nonzero constant coefficient
    zi = g.f.variables.index("Z")
    pure = [c for e, c in g.f.terms.items() if e[zi] == 2 and sum(e) == 2]
    assert pure and pure[0] != 0
    # determinism in the seed
    g_b, change_b = regularize(Germ(f, (0, 0, 0)), "Z", seed=3)
    assert g_b.f == g.f


# -- arcs and the Whitney test ---------------------------------------------------------


def test_parse_arc():
    arc = parse_arc("t^4, t^2, t^4, ram=2")
    assert arc.ramification == 2
    assert arc(2) == (16, 4, 16)
    assert arc.start() == (0, 0, 0)


def test_whitney_failure_paper_arcs():
    f = parse("X^2 - T*Y^2", ["X", "Y", "T"])
    y = Arc.from_strings(["0", "0", "t"], ramification=2)
    z = Arc.from_strings(["t^4", "t^2", "t^4"], ramification=2)
    v = whitney_arc_test(Germ(f, (0, 0, 0)), y, z)
    # limiting tangent plane T = 2X, limiting line the T-axis
    assert v.limit_tangent_normal == (2, 0, -1)
    assert v.limit_secant_direction == (0, 0, 1)
    assert not v.holds


def test_whitney_hyperplane_always_holds():
    f = parse("X", ["X", "Y", "T"])
    v = whitney_arc_test(
        Germ(f, (0, 0, 0)),
        Arc.from_strings(["0", "0", "t"]),
        Arc.from_strings(["0", "t", "t"]),
    )
    assert v.holds
    assert v.limit_tangent_normal == (1, 0, 0)
    assert v.limit_secant_direction == (0, 1, 0)


def test_whitney_on_smooth_locus_with_float_oracle():
    # z(t) = ((1+t) t^2, (1+t) t^3, 1+t) lies on X^3 = T Y^2 exactly
    f = CUBIC
    y = Arc.from_strings(["0", "0", "1 + t"])
    z = Arc.from_strings(["(1+t)*t^2", "(1+t)*t^3", "1 + t"])
    v = whitney_arc_test(Germ(f, (0, 0, 1)), y, z)
    assert v.holds
    # floating-point limit oracle
    import math

    for k in (3, 4, 5, 6):
        t = 10.0 ** (-k)
        zx, zy, zt = (1 + t) * t * t, (1 + t) * t ** 3, 1 + t
        grad = (3 * zx ** 2, -2 * zt * zy, -(zy ** 2))
        sec = (zx - 0.0, zy - 0.0, zt - (1 + t))
        ng = math.sqrt(sum(c * c for c in grad))
        norm = [c / ng for c in grad]
        exact = [float(c) for c in v.limit_tangent_normal]
        ne = math.sqrt(sum(c * c for c in exact))
        exact = [c / ne for c in exact]
        agree = sum(a * b for a, b in zip(norm, exact))
        assert abs(abs(agree) - 1.0) < 10 ** (-k + 2)


def test_whitney_requires_arc_on_hypersurface():
    f = parse("X", ["X", "Y", "T"])
    with pytest.raises(GermError):
        whitney_arc_test(
            Germ(f, (0, 0, 0)),
            Arc.from_strings(["0", "0", "t"]),
            Arc.from_strings(["t", "t", "t"]),
        )


def test_whitney_constant_y_arc_on_smooth_hypersurface():
    f = parse("X", ["X", "Y", "T"])
    v = whitney_arc_test(
        Germ(f, (0, 0, 0)),
        Arc.from_strings(["0", "0", "0"]),
        Arc.from_strings(["0", "t", "t^2"]),
    )
    assert v.holds


# -- equimultiplicity scans --------------------------------------------------------------


def test_equimultiplicity_scan_cubic():
    axis = Arc.from_strings(["0", "0", "t"])
    scan = equimultiplicity_scan(CUBIC, axis, [0, 1, -1, 2])
    assert [m for _, m in scan] == [3, 2, 2, 2]


def test_equimultiplicity_scan_quadric_not_whitney():
    f = parse("X^2 - T*Y^2", ["X", "Y", "T"])
    axis = Arc.from_strings(["0", "0", "t"])
    scan = equimultiplicity_scan(f, axis, [0, 1])
    assert [m for _, m in scan] == [2, 2]


def test_equimultiplicity_scan_smooth():
    f = parse("Z - X^2", ["X", "Z"])
    curve = Arc.from_strings(["t", "t^2"])
    assert [m for _, m in equimultiplicity_scan(f, curve, [0, 1, 2])] == [1, 1, 1]


def test_scan_rejects_point_off_hypersurface():
    with pytest.raises(GermError):
        equimultiplicity_scan(CUBIC, Arc.from_strings(["t", "0", "0"]), [1])


def test_upper_semicontinuity_sampled():
    axis = Arc.from_strings(["0", "0", "t"])
    for f in (CUBIC, parse("X^2 - T*Y^2", ["X", "Y", "T"])):
        scan = equimultiplicity_scan(f, axis, [0, 1, -1, 3])
        special = scan[0][1]
        assert all(special >= m for _, m in scan[1:])
