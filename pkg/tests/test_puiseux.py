from fractions import Fraction

import pytest

from equising.polynomials import parse
from equising.puiseux import (
    AlgebraicNum,
    PuiseuxError,
    PuiseuxSeries,
    UnsupportedExtension,
    back_substitute,
    characteristic_data,
    characteristic_exponents,
    cyclotomic_minpoly,
    cyclotomic_symbol,
    multiplicity_sequence_from_char,
    product_reconstruction,
    puiseux_expansions,
    puiseux_pairs,
    radical_symbol,
    solve_characteristic,
)


def expand(expr, trunc=None):
    f = parse(expr, ["X", "Z"])
    return f, puiseux_expansions(f, trunc=trunc, x_var="X", z_var="Z")


# -- algebraic number kernel -------------------------------------------------------


def test_cyclotomic_minpolys():
    assert cyclotomic_minpoly(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_minpoly(3) == (Fraction(1), Fraction(1), Fraction(1))
    assert cyclotomic_minpoly(4) == (Fraction(1), Fraction(0), Fraction(1))
    assert cyclotomic_minpoly(6) == (Fraction(1), Fraction(-1), Fraction(1))


def test_algebraic_arithmetic():
    sym = radical_symbol(Fraction(2))
    w = AlgebraicNum(sym, (0, 1))
    assert w * w == AlgebraicNum.lift(2, sym)
    assert (w + 1) * (w - 1) == AlgebraicNum.lift(1, sym)
    inv = w.inverse()
    assert w * inv == AlgebraicNum.lift(1, sym)
    zeta = cyclotomic_symbol(3)
    om = AlgebraicNum(zeta, (0, 1))
    assert om ** 3 == AlgebraicNum.lift(1, zeta)
    assert om ** 2 + om + 1 == AlgebraicNum.lift(0, zeta)


def test_solve_characteristic_shapes():
    roots, sym = solve_characteristic([Fraction(-1), 0, Fraction(1)], None)  # c^2 = 1
    assert sorted(r.as_fraction() for r, _ in roots) == [-1, 1]
    roots, sym = solve_characteristic([Fraction(-2), 0, Fraction(1)], None)  # c^2 = 2
    assert sym is not None and len(roots) == 2
    roots, sym = solve_characteristic([Fraction(-1), 0, 0, Fraction(1)], None)  # c^3 = 1
    assert len(roots) == 3 and sym.kind == "cyclotomic"
    roots, sym = solve_characteristic([Fraction(1), Fraction(-2), Fraction(1)], None)
    assert roots == [(AlgebraicNum.rational(1), 2)]
    with pytest.raises(UnsupportedExtension):
        solve_characteristic([Fraction(-2), 0, 0, Fraction(1)], None)  # c^3 = 2


# -- expansions ----------------------------------------------------------------------


EXACT_CASES = [
    ("Z^2 - X^3", [(2, [Fraction(3, 2)])]),
    ("Z^2 - X^2", [(1, []), (1, [])]),
    ("Z^2 - X^5", [(2, [Fraction(5, 2)])]),
    ("Z^3 - X^4", [(3, [Fraction(4, 3)])]),
    ("Z^2 - X^4", [(1, []), (1, [])]),
    ("Z^3 - X^2", [(3, [Fraction(2, 3)])]),
    ("Z^2 - 2*X^3", [(2, [Fraction(3, 2)])]),
    ("(Z - X^2)^2 - X^5", [(2, [Fraction(5, 2)])]),
    ("(Z^2 - X^3)^2 - 4*X^5*Z - X^7", [(4, [Fraction(3, 2), Fraction(7, 4)])]),
]


@pytest.mark.parametrize("expr,expected", EXACT_CASES)
def test_expansion_branches(expr, expected):
    f, branches = expand(expr)
    got = sorted(
        (b.ramification, characteristic_exponents(b)) for b in branches
    )
    assert got == sorted(expected)
    assert sum(b.nconj for b in branches) == f.degree_in("Z")


@pytest.mark.parametrize("expr,expected", EXACT_CASES)
def test_back_substitution(expr, expected):
    f, branches = expand(expr)
    for b in branches:
        assert back_substitute(f, b, "X", "Z")
        for c in b.conjugates():
            assert back_substitute(f, c, "X", "Z")


@pytest.mark.parametrize("expr,expected", EXACT_CASES)
def test_product_reconstruction(expr, expected):
    f, branches = expand(expr)
    assert product_reconstruction(f, branches, "X", "Z")


def test_factored_pair_of_smooth_branches():
    f, branches = expand("Z^2 - (X^2 + X^3)*Z + X^5")  # (Z - X^2)(Z - X^3)
    orders = sorted(b.order() for b in branches)
    assert orders == [2, 3]


def test_nonterminating_expansion_truncates():
    f, branches = expand("(Z^2 - X^3)^2 - X^7")
    assert len(branches) == 2
    for b in branches:
        assert not b.exact
        assert back_substitute(f, b, "X", "Z")
        # series modulo its truncation: exponents stay below it
        assert all(Fraction(k, b.ramification) < b.truncation for k in b.terms)
    assert product_reconstruction(f, branches, "X", "Z")


def test_explicit_truncation_respected():
    f, branches = expand("(Z^2 - X^3)^2 - X^7", trunc=Fraction(6))
    for b in branches:
        assert b.truncation >= 6
        assert back_substitute(f, b, "X", "Z")


def test_ramification_minimal_invariant():
    _, branches = expand("Z^2 - X^4")  # exponents integral: ram 1
    assert all(b.ramification == 1 for b in branches)


def test_requires_squarefree_and_regular():
    with pytest.raises(PuiseuxError):
        puiseux_expansions(parse("(Z - X)^2", ["X", "Z"]), x_var="X", z_var="Z")
    with pytest.raises(PuiseuxError):
        puiseux_expansions(parse("X^2 - X^3", ["X", "Z"]), x_var="X", z_var="Z")
    # vanishing at the origin is required
    with pytest.raises(PuiseuxError):
        puiseux_expansions(parse("Z^2 - X - 1", ["X", "Z"]), x_var="X", z_var="Z")


def test_zero_branch_emitted_exactly():
    f = parse("Z*(Z - X^2)", ["X", "Z"])
    branches = puiseux_expansions(f, x_var="X", z_var="Z")
    supports = sorted(tuple(b.support()) for b in branches)
    assert supports == [(), (Fraction(2),)]
    assert all(b.exact for b in branches)


# -- characteristic data -----------------------------------------------------------------


def test_characteristic_data_cusp():
    f = parse("Z^2 - X^3", ["X", "Z"])
    branches, data = characteristic_data(f, "X", "Z")
    cd = data[0]
    assert cd.char_exponents == [Fraction(3, 2)]
    assert cd.char_pairs == [(2, 3)]
    assert cd.mult_sequence == (2, 1, 1)


def test_characteristic_data_battery():
    expect = {
        "Z^2 - X^5": ([Fraction(5, 2)], [(2, 5)], (2, 2, 1, 1)),
        "Z^3 - X^4": ([Fraction(4, 3)], [(3, 4)], (3, 1, 1, 1)),
        "Z - X^2": ([], [], (1,)),
    }
    for expr, (exps, pairs, seq) in expect.items():
        _, data = characteristic_data(parse(expr, ["X", "Z"]), "X", "Z")
        cd = data[0]
        assert (cd.char_exponents, cd.char_pairs, cd.mult_sequence) == (exps, pairs, seq)


def test_characteristic_data_two_pairs():
    f = parse("(Z^2 - X^3)^2 - 4*X^5*Z - X^7", ["X", "Z"])
    _, data = characteristic_data(f, "X", "Z")
    cd = data[0]
    assert cd.char_exponents == [Fraction(3, 2), Fraction(7, 4)]
    assert cd.char_pairs == [(2, 3), (2, 7)]


def test_multiplicity_sequence_euclid():
    assert multiplicity_sequence_from_char(2, [3]) == (2, 1, 1)
    assert multiplicity_sequence_from_char(2, [5]) == (2, 2, 1, 1)
    assert multiplicity_sequence_from_char(3, [4]) == (3, 1, 1, 1)
    assert multiplicity_sequence_from_char(1, []) == (1,)


def test_puiseux_pairs_two_pair_series():
    s = PuiseuxSeries(
        ramification=4,
        terms={6: Fraction(1), 7: Fraction(1)},
        truncation=Fraction(3),
        exact=True,
    )
    assert puiseux_pairs(s) == [(2, 3), (2, 7)]


def test_transversality_guard():
    # Z^2 - X: branch exponent 1/2 < 1, not in Weierstrass position
    with pytest.raises(PuiseuxError):
        characteristic_data(parse("Z^2 - X", ["X", "Z"]), "X", "Z")
