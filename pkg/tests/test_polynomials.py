import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from equising.polynomials import (
    NewtonPolygon,
    ParseError,
    Poly,
    PolyError,
    bareiss_determinant,
    discriminant,
    exact_divide,
    gcd,
    newton_polygon,
    parse,
    resultant,
    squarefree_part,
)


# -- parsing --------------------------------------------------------------------


def test_parse_cusp():
    p = parse("Z^2 - X^3", ["X", "Z"])
    assert p.terms == {(0, 2): Fraction(1), (3, 0): Fraction(-1)}


def test_parse_quartic_expansion():
    p = parse("X*(X+Y)*(X-Y)*(T*X+Y)", ["X", "Y", "T"])
    q = parse("T*X^4 + X^3*Y - T*X^2*Y^2 - X*Y^3", ["X", "Y", "T"])
    assert p == q


def test_parse_zero():
    assert parse("0", ["X"]).terms == {}


def test_parse_rationals_and_parens():
    p = parse("1/2*X + (3 - 1/3)", ["X"])
    assert p.eval((Fraction(2),)) == 1 + Fraction(8, 3)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("X + ", ["X"])
    with pytest.raises(ParseError) as err:
        parse("X*W", ["X"])
    assert "W" in str(err.value)
    with pytest.raises(ParseError):
        parse("X^Y", ["X", "Y"])  # exponent must be an integer literal
    with pytest.raises(ParseError):
        parse("2 X", ["X"])  # implicit multiplication rejected


def test_parse_no_negative_exponents():
    with pytest.raises(ParseError):
        parse("X^-1", ["X"])


# -- ring operations -------------------------------------------------------------


def test_basic_identities():
    X = lambda s: parse(s, ["X", "Y"])
    assert X("X+Y") * X("X-Y") == X("X^2 - Y^2")
    p = X("X^2 + 3*Y")
    assert p + Poly.zero(("X", "Y")) == p
    assert parse("(Z - X)^2", ["X", "Z"]) == parse("Z^2 - 2*X*Z + X^2", ["X", "Z"])


def test_mismatched_rings_rejected():
    with pytest.raises(PolyError):
        parse("X", ["X"]) + parse("Y", ["Y"])


small_coeff = st.integers(min_value=-4, max_value=4)


def poly_strategy(nvars=2, max_terms=4, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in range(nvars)])
    term = st.tuples(exps, small_coeff)
    names = tuple("XYZW"[:nvars])

    def build(terms):
        return Poly(names, {e: c for e, c in terms})

    return st.lists(term, max_size=max_terms).map(build)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(poly_strategy())
def test_print_parse_round_trip(p):
    assert parse(str(p), ["X", "Y"]) == p


def test_derivative():
    assert parse("Z^2 - X^3", ["X", "Z"]).derivative("Z") == parse("2*Z", ["X", "Z"])
    assert parse("X^3 - T*Y^2", ["X", "Y", "T"]).derivative("X") == parse(
        "3*X^2", ["X", "Y", "T"]
    )
    assert parse("5", ["T"]).derivative("T").is_zero()
    with pytest.raises(PolyError):
        parse("X", ["X"]).derivative("Q")


def test_substitute():
    f = parse("X^3 - T*Y^2", ["X", "Y", "T"])
    ring = f.variables
    shifted = f.substitute({"T": parse("T + 1", ["X", "Y", "T"])})
    assert shifted == parse("X^3 - T*Y^2 - Y^2", ["X", "Y", "T"])
    cusp = parse("Z^2 - X^3", ["X", "Z"])
    blown = cusp.substitute({"Z": parse("X*Z", ["X", "Z"])})
    assert blown == parse("X^2*Z^2 - X^3", ["X", "Z"])
    assert cusp.substitute({"X": parse("X", ["X", "Z"]), "Z": parse("Z", ["X", "Z"])}) == cusp


# -- resultant and discriminant -----------------------------------------------------


def test_resultant_conventions():
    ab = ["a", "b", "Z"]
    assert resultant(parse("Z - a", ab), parse("Z - b", ab), "Z") == parse("a - b", ab)
    xz = ["X", "Z"]
    assert resultant(parse("Z^2 - X", xz), parse("Z", xz), "Z") == parse("-X", xz)
    assert resultant(parse("Z^2 - X^2", xz), parse("Z - X", xz), "Z").is_zero()
    with pytest.raises(PolyError):
        resultant(Poly.zero(("X", "Z")), Poly.zero(("X", "Z")), "Z")


def test_resultant_vanishes_iff_common_factor():
    rng = random.Random(5)
    ring = ("X", "Z")

    def rand_poly(deg):
        terms = {}
        for _ in range(3):
            terms[(rng.randint(0, 2), rng.randint(0, deg))] = rng.randint(1, 3)
        p = Poly(ring, terms)
        return p if p.involves("Z") else p + parse("Z", ring) ** deg

    for _ in range(8):
        common = parse("Z - X", ring) if rng.random() < 0.5 else parse("Z + X^2", ring)
        p = rand_poly(2) * common
        q = rand_poly(2) * common
        assert resultant(p, q, "Z").is_zero()
    for _ in range(8):
        p = parse("Z - X", ring) * rand_poly(1) + Poly.one(ring)
        q = parse("Z + X + 1", ring)
        r = resultant(p, q, "Z")
        # generically nonzero: verify by evaluating the constructed gcd
        assert not gcd(p, q).involves("Z") or r.is_zero()


def test_resultant_multiplicativity():
    rng = random.Random(11)
    ring = ("X", "Z")
    for _ in range(6):
        def rp():
            return Poly(
                ring,
                {
                    (rng.randint(0, 2), j): rng.randint(-3, 3)
                    for j in range(rng.randint(1, 2) + 1)
                },
            ) + parse("Z^2", ring)
        p, q, r = rp(), rp(), rp()
        assert resultant(p, q * r, "Z") == resultant(p, q, "Z") * resultant(p, r, "Z")


def test_discriminant_formulas():
    xz = ["X", "Z"]
    assert discriminant(parse("Z^2 - X^3", xz), "Z") == parse("4*X^3", xz)
    pq = ["p", "q", "Z"]
    assert discriminant(parse("Z^3 + p*Z + q", pq), "Z") == parse(
        "-4*p^3 - 27*q^2", pq
    )
    xyz = ["X", "Y", "Z"]
    assert discriminant(parse("Z^2 - X^2*Y", xyz), "Z") == parse("4*X^2*Y", xyz)
    with pytest.raises(PolyError):
        discriminant(parse("Z - X", xz), "Z")


def test_bareiss_and_prs_agree():
    cases = [
        ("Z^3 + p*Z + q", ["p", "q", "Z"]),
        ("Z^4 - X*Z^2 + Y", ["X", "Y", "Z"]),
        ("Z^5 - X*Z + X^2", ["X", "Z"]),
        ("(Z^2 - X^3)^2 - 4*X^5*Z - X^7", ["X", "Z"]),
    ]
    for expr, vs in cases:
        f = parse(expr, vs)
        assert discriminant(f, "Z", method="bareiss") == discriminant(f, "Z", method="prs")


def test_discriminant_of_product_vanishing_loci():
    # disc(pq) contains the vanishing loci of disc(p), disc(q): checked at
    # sampled rational points
    ring = ("X", "Z")
    p = parse("Z^2 - X", ring)
    q = parse("Z^2 - X - 1", ring)
    dpq = discriminant(p * q, "Z")
    dp = discriminant(p, "Z")
    dq = discriminant(q, "Z")
    for x0 in [Fraction(0), Fraction(-1), Fraction(2), Fraction(1, 3)]:
        if dp.eval((x0, 0)) == 0 or dq.eval((x0, 0)) == 0:
            assert dpq.eval((x0, 0)) == 0


# -- gcd and squarefree part -----------------------------------------------------------


def test_gcd_examples():
    xy = ["X", "Y"]
    assert gcd(parse("X^2 - Y^2", xy), parse("X + Y", xy)) == parse("X + Y", xy)
    p = parse("6*X^2 - 6*Y^2", xy)
    assert gcd(p, Poly.zero(("X", "Y"))) == parse("X^2 - Y^2", xy)
    assert gcd(parse("X^2", xy), parse("Y^2", xy)) == Poly.one(("X", "Y"))


def test_gcd_planted_factors():
    rng = random.Random(3)
    ring = ("X", "Y")
    for _ in range(6):
        g = parse("X + Y", ring) if rng.random() < 0.5 else parse("X^2 + Y", ring)
        a = g * Poly(ring, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 4)})
        b = g * parse("X - Y + 1", ring)
        assert exact_divide(gcd(a, b), g).is_constant() or gcd(a, b) == g.normalized()


def test_squarefree_examples():
    xy = ["X", "Y"]
    assert squarefree_part(parse("4*X^3*Y^2", xy)) == parse("X*Y", xy)
    assert squarefree_part(parse("(X+Y)^2*(X-Y)", xy)) == parse("X^2 - Y^2", xy)
    assert squarefree_part(parse("X^2 - Y^2", xy)) == parse("X^2 - Y^2", xy)
    with pytest.raises(PolyError):
        squarefree_part(Poly.zero(("X",)))


def test_squarefree_idempotent_and_strict():
    ring = ("X", "Y")
    cases = [
        parse("(X + Y)^3 * (X - Y)^2 * X", ring),
        parse("X^4*Y^2", ring),
        parse("(X^2 + Y)^2", ring),
    ]
    for p in cases:
        s = squarefree_part(p)
        assert squarefree_part(s) == s
        # s^2 never divides p * s
        try:
            exact_divide(p * s, s * s)
            divides_sq = True
        except PolyError:
            divides_sq = False
        if divides_sq:
            # allowed only when p itself had the extra factors
            assert not exact_divide(p * s, s * s).is_zero()


# -- Newton polygon -----------------------------------------------------------------


def test_newton_polygon_cusp():
    np_ = newton_polygon(parse("Z^2 - X^3", ["X", "Z"]), "X", "Z")
    assert len(np_.segments) == 1
    (slope, (a, b)) = np_.segments[0]
    assert (a, b) == ((0, 2), (3, 0))
    assert np_.exponents() == [Fraction(3, 2)]


def test_newton_polygon_two_segments():
    np_ = newton_polygon(parse("Z^2 - X^2*Z - X^5", ["X", "Z"]), "X", "Z")
    assert np_.exponents() == [Fraction(2), Fraction(3)]
    slopes = [s for s, _ in np_.segments]
    assert slopes == sorted(slopes)


def test_newton_polygon_line_and_errors():
    assert newton_polygon(parse("Z - X", ["X", "Z"]), "X", "Z").exponents() == [Fraction(1)]
    with pytest.raises(PolyError):
        newton_polygon(parse("Z - X + 1", ["X", "Z"]), "X", "Z")
    with pytest.raises(PolyError):
        newton_polygon(parse("Z - X*Y", ["X", "Y", "Z"]), "X", "Z")


# -- determinants ------------------------------------------------------------------


def test_bareiss_matches_fraction_gauss():
    rng = random.Random(9)
    ring = ("X",)
    for n in (2, 3, 4):
        rows = [
            [Poly.constant(rng.randint(-5, 5), ring) for _ in range(n)] for _ in range(n)
        ]
        det = bareiss_determinant([r[:] for r in rows])
        # cofactor expansion reference
        def cof(m):
            if len(m) == 1:
                return m[0][0]
            acc = Poly.zero(ring)
            for j in range(len(m)):
                minor = [row[:j] + row[j + 1:] for row in m[1:]]
                term = m[0][j] * cof(minor)
                acc = acc + (term if j % 2 == 0 else -term)
            return acc
        assert det == cof(rows)
