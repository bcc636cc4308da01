"""Quasi-ordinary hypersurface germs: detection, fractional roots,
characteristic monomials, and embedded-topology comparison.

A germ Z^m + a_1(X,Y)Z^{m-1} + ... + a_m(X,Y) is quasi-ordinary when its
Z-discriminant is a monomial X^a Y^b times a unit.  Its roots are then
fractional power series in X^{1/n}, Y^{1/n}; the dominating monomials of
the pairwise root differences are the characteristic monomials, which
classify the embedded topology.

A family parameter t may ride along as an extra polynomial variable in
the coefficients; roots are computed as series in (X^{1/n}, Y^{1/n}, t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from equising.polynomials import Poly, PolyError, discriminant, squarefree_part
from equising.puiseux import (
    SYMBOL_VAR,
    AlgebraicNum,
    PuiseuxError,
    RootSymbol,
    UnsupportedExtension,
    cyclotomic_symbol,
    radical_symbol,
    reduce_symbol,
    zeta_in,
    _rational_nth_root,
)


class QOError(ValueError):
    pass


@dataclass
class QOCertificate:
    """Outcome of the quasi-ordinary test.

    raw_exponents are the monomial exponents of the full discriminant,
    reduced_exponents those of its squarefree part (the witness);
    unit_constant is the value of the discriminant's unit cofactor at the
    origin.
    """

    is_qo: bool
    raw_exponents: tuple
    reduced_exponents: tuple
    unit_constant: Fraction
    witness: Poly

    def __bool__(self):
        return self.is_qo


def _monic_normalize(f: Poly, main_var) -> Poly:
    lc = f.leading_coefficient_in(main_var)
    if not lc.is_constant():
        raise QOError("f is not monic-normalizable in %s" % main_var)
    c = lc.constant_value()
    if c == 0:
        raise QOError("zero polynomial")
    if c == 1:
        return f
    return Poly(f.variables, {e: v / c for e, v in f.terms.items()})


def _monomial_split(p: Poly, xi: int, yi: int):
    """Split p = X^a Y^b * cofactor with respect to two variable indices."""
    a = min(e[xi] for e in p.terms)
    b = min(e[yi] for e in p.terms)
    terms = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne[xi] -= a
        ne[yi] -= b
        terms[tuple(ne)] = c
    return (a, b), Poly(p.variables, terms)


def qo_test(f: Poly, main_var, base_vars) -> QOCertificate:
    """Quasi-ordinary test: the squarefree Z-discriminant must be a
    monomial in the base variables times a unit.

    Extra variables of f beyond main and base are treated as family
    parameters (the unit must be a unit at parameter value 0 as well).
    """
    xb, yb = base_vars
    f = _monic_normalize(f, main_var)
    if f.eval((0,) * len(f.variables)) != 0:
        raise QOError("the germ must pass through the origin")
    if f.degree_in(main_var) < 2:
        raise QOError("need degree >= 2 in %s" % main_var)
    disc = discriminant(f, main_var)
    if disc.is_zero():
        raise QOError("identically zero discriminant: non-squarefree input")
    xi = disc._index(xb)
    yi = disc._index(yb)
    raw_exps, raw_cof = _monomial_split(disc, xi, yi)
    unit_c = raw_cof.eval((0,) * len(disc.variables))
    witness = squarefree_part(disc)
    red_exps, _ = _monomial_split(witness, xi, yi)
    return QOCertificate(
        is_qo=unit_c != 0,
        raw_exponents=raw_exps,
        reduced_exponents=red_exps,
        unit_constant=unit_c,
        witness=witness,
    )


# -- fractional power series in two base variables --------------------------------

@dataclass
class FracSeries2:
    """Truncated series sum c_{ij...} X^{i/n} Y^{j/n} t^k...

    backed by a Poly over (symbol, x1, y1, params...) with x1 = X^{1/n},
    y1 = Y^{1/n}.  Truncation bounds the X- and Y-exponents (each < trunc
    in X/Y units); parameter exponents are bounded by the same cap.
    """

    ramification: int
    poly: Poly  # ring (SYMBOL_VAR, "x1", "y1", *params)
    truncation: Fraction
    symbol: Optional[RootSymbol] = None
    exact: bool = False

    @property
    def params(self):
        return self.poly.variables[3:]

    def support(self):
        """Fractional (X, Y) exponents with nonzero coefficient, merged over
        parameter powers."""
        n = self.ramification
        return sorted({(Fraction(e[1], n), Fraction(e[2], n)) for e in self.poly.terms})

    def __sub__(self, other: "FracSeries2") -> "FracSeries2":
        if self.ramification != other.ramification or self.poly.variables != other.poly.variables:
            raise QOError("series live in different rings")
        sym = self.symbol or other.symbol
        return FracSeries2(
            self.ramification,
            reduce_symbol(self.poly - other.poly, sym),
            min(self.truncation, other.truncation),
            sym,
            self.exact and other.exact,
        )

    def __mul__(self, other: "FracSeries2") -> "FracSeries2":
        sym = self.symbol or other.symbol
        prod = reduce_symbol(self.poly * other.poly, sym)
        trunc = min(self.truncation, other.truncation)
        cap = int(trunc * self.ramification)
        if not (self.exact and other.exact):
            prod = Poly(
                prod.variables,
                {e: c for e, c in prod.terms.items() if e[1] < cap and e[2] < cap},
            )
        return FracSeries2(
            self.ramification, prod, trunc, sym, self.exact and other.exact
        )

    def is_zero(self):
        return self.poly.is_zero()

    def dominating_monomial(self):
        """The unique minimal support pair under componentwise order, or
        None if no term divides all others (truncation too small)."""
        sup = {(e[1], e[2]) for e in self.poly.terms}
        if not sup:
            return None
        for cand in sorted(sup):
            if all(i >= cand[0] and j >= cand[1] for i, j in sup):
                n = self.ramification
                return (Fraction(cand[0], n), Fraction(cand[1], n))
        return None

    def __repr__(self):
        n = self.ramification
        bits = []
        for e in sorted(self.poly.terms, key=lambda e: (e[1] + e[2], e)):
            c = self.poly.terms[e]
            mono = []
            if e[0]:
                mono.append("w^%d" % e[0])
            if e[1]:
                mono.append("X^(%s)" % Fraction(e[1], n))
            if e[2]:
                mono.append("Y^(%s)" % Fraction(e[2], n))
            for v, k in zip(self.poly.variables[3:], e[3:]):
                if k:
                    mono.append("%s^%d" % (v, k))
            bits.append(("%s" % c) + ("*" + "*".join(mono) if mono else ""))
        body = " + ".join(bits) if bits else "0"
        return body + ("" if self.exact else " + O(%s)" % self.truncation)


def _series_ring(params):
    return (SYMBOL_VAR, "x1", "y1") + tuple(params)


def _sqrt_series(u: Poly, ring, cap: int, symbol):
    """Square root of a unit power series u (u(0) != 0) to total degree cap.

    Solves s^2 = u degree by degree; the constant term's square root must
    be rational or is adjoined as a radical symbol.  Returns (s, symbol).
    """
    zero = tuple([0] * len(ring))
    c0 = u.terms.get(zero, Fraction(0))
    if c0 == 0:
        raise QOError("not a unit series")
    root0 = _rational_nth_root(c0, 2)
    if root0 is not None:
        s0 = Poly.constant(root0, ring)
        sym = symbol
    else:
        if symbol is not None:
            raise UnsupportedExtension("second radical needed for sqrt(%s)" % c0)
        sym = radical_symbol(c0)
        s0 = Poly.variable(SYMBOL_VAR, ring)
    s = s0
    # group u by total degree in (x1, y1, params)
    by_deg = {}
    for e, c in u.terms.items():
        d = sum(e[1:])
        by_deg.setdefault(d, {})[e] = c
    maxdeg = cap
    inv2s0 = None
    # 1/(2 s0): rational, or (1/(2 sqrt(c0))) = w/(2 c0) for the radical case
    if root0 is not None:
        inv2s0 = Poly.constant(Fraction(1, 2) / root0, ring)
    else:
        inv2s0 = Poly.variable(SYMBOL_VAR, ring) * Poly.constant(
            Fraction(1, 2) / c0, ring
        )
    for d in range(1, maxdeg + 1):
        # s_d = (u_d - sum_{0<i<d} s_i s_{d-i}) / (2 s_0)
        acc = Poly(ring, by_deg.get(d, {}))
        partial = {}
        for e, c in s.terms.items():
            partial.setdefault(sum(e[1:]), {})[e] = c
        for i in range(1, d):
            if i in partial and (d - i) in partial:
                acc = acc - Poly(ring, partial[i]) * Poly(ring, partial[d - i])
        acc = reduce_symbol(acc, sym)
        sd = reduce_symbol(acc * inv2s0, sym)
        s = s + sd
    s = Poly(ring, {e: c for e, c in s.terms.items() if sum(e[1:]) <= maxdeg})
    return reduce_symbol(s, sym), sym


def _nth_root_series(u: Poly, m: int, ring, cap: int, symbol):
    """m-th root of a unit series with rational constant-term root."""
    zero = tuple([0] * len(ring))
    c0 = u.terms.get(zero, Fraction(0))
    root0 = _rational_nth_root(c0, m)
    if root0 is None:
        raise UnsupportedExtension("irrational %d-th root of %s" % (m, c0))
    s = Poly.constant(root0, ring)
    inv = Poly.constant(Fraction(1) / (m * root0 ** (m - 1)), ring)
    by_deg = {}
    for e, c in u.terms.items():
        by_deg.setdefault(sum(e[1:]), {})[e] = c
    for d in range(1, cap + 1):
        # s_d = (u_d - [degree-d part of s_{<d}^m]) / (m s_0^{m-1})
        power = s ** m
        got = Poly(ring, {e: c for e, c in power.terms.items() if sum(e[1:]) == d})
        want = Poly(ring, by_deg.get(d, {}))
        sd = (want - got) * inv
        sd = Poly(ring, {e: c for e, c in sd.terms.items() if sum(e[1:]) == d})
        s = s + sd
    return reduce_symbol(
        Poly(ring, {e: c for e, c in s.terms.items() if sum(e[1:]) <= cap}), symbol
    ), symbol


def qo_roots(
    f: Poly, main_var, base_vars, trunc: Optional[Fraction] = None
):
    """All roots of a quasi-ordinary f as truncated fractional series.

    Supported shapes: any monic quadratic, and Z^m + a_m(X,Y,t) with a_m a
    monomial times a unit; deeper Newton-polyhedron cases are rejected
    with UnsupportedExtension.
    """
    cert = qo_test(f, main_var, base_vars)
    if not cert.is_qo:
        raise QOError("input is not quasi-ordinary")
    f = _monic_normalize(f, main_var)
    xb, yb = base_vars
    params = tuple(
        v for v in f.variables if v not in (main_var, xb, yb) and f.involves(v)
    )
    m = f.degree_in(main_var)
    if trunc is None:
        trunc = Fraction(2 * max(cert.raw_exponents) + 4)
    if m == 2:
        return _quadratic_roots(f, main_var, base_vars, params, trunc)
    coeffs = f.coefficients_in(main_var)
    if all(c.is_zero() for c in coeffs[1:m]):
        return _binomial_roots(f, main_var, base_vars, params, m, trunc)
    raise UnsupportedExtension(
        "roots implemented for quadratics and binomial Z^m + a(X,Y); "
        "degree %d with middle terms is outside the supported tower" % m
    )


def _inject(p: Poly, ring, xb, yb, params, scale: int) -> Poly:
    """Embed a polynomial in (X, Y, params) into the series ring with
    X -> x1^scale, Y -> y1^scale."""
    terms = {}
    xi = p._index(xb)
    yi = p._index(yb)
    pidx = [p._index(v) for v in params]
    tracked = {xi, yi} | set(pidx)
    for k, v in enumerate(p.variables):
        if k not in tracked and p.involves(v):
            raise QOError("stray variable %r in coefficient" % v)
    for e, c in p.terms.items():
        ne = [0] * len(ring)
        ne[1] = e[xi] * scale
        ne[2] = e[yi] * scale
        for k, pi in enumerate(pidx):
            ne[3 + k] = e[pi]
        terms[tuple(ne)] = terms.get(tuple(ne), Fraction(0)) + c
    return Poly(ring, terms)


def _quadratic_roots(f, main_var, base_vars, params, trunc):
    xb, yb = base_vars
    coeffs = f.coefficients_in(main_var)
    a1 = coeffs[1]
    disc = discriminant(f, main_var)  # a1^2 - 4 a2
    xi = disc._index(xb)
    yi = disc._index(yb)
    (a, b), cof = _monomial_split(disc, xi, yi)
    n = 2
    ring = _series_ring(params)
    cap = int(Fraction(trunc) * n)
    cof_s = _inject(cof, ring, xb, yb, params, n)
    exact = cof.is_constant()
    sqrt_cof, sym = _sqrt_series(cof_s, ring, cap, None)
    x1 = Poly.variable("x1", ring)
    y1 = Poly.variable("y1", ring)
    half_mono = x1 ** a * y1 ** b  # (X^a Y^b)^{1/2} in x1,y1 exponents
    sqrt_disc = reduce_symbol(half_mono * sqrt_cof, sym)
    a1_s = _inject(a1, ring, xb, yb, params, n)
    half = Poly.constant(Fraction(1, 2), ring)
    roots = []
    for sign in (1, -1):
        zp = (Poly.constant(sign, ring) * sqrt_disc - a1_s) * half
        zp = reduce_symbol(zp, sym)
        if not exact:
            zp = Poly(ring, {e: c for e, c in zp.terms.items() if e[1] < cap and e[2] < cap})
        roots.append(
            FracSeries2(
                ramification=n,
                poly=zp,
                truncation=Fraction(trunc),
                symbol=sym,
                exact=exact,
            )
        )
    return roots


def _binomial_roots(f, main_var, base_vars, params, m, trunc):
    xb, yb = base_vars
    a_m = f.coefficients_in(main_var)[0]
    neg = -a_m  # Z^m = -a_m
    xi = neg._index(xb)
    yi = neg._index(yb)
    (a, b), cof = _monomial_split(neg, xi, yi)
    ring = _series_ring(params)
    n = m
    cap = int(Fraction(trunc) * n)
    cof_s = _inject(cof, ring, xb, yb, params, n)
    exact = cof.is_constant()
    root_cof, sym = _nth_root_series(cof_s, m, ring, cap, None)
    if m == 2:
        zeta = AlgebraicNum.rational(-1)
        sym_z = sym
    else:
        if sym is not None:
            z = zeta_in(sym, m)
            if z is None:
                raise UnsupportedExtension("needs zeta_%d over %s" % (m, sym.label))
            zeta, sym_z = z, sym
        else:
            sym_z = cyclotomic_symbol(m)
            zeta = AlgebraicNum(
                sym_z,
                tuple(Fraction(1 if i == 1 else 0) for i in range(sym_z.degree)),
            )
    x1 = Poly.variable("x1", ring)
    y1 = Poly.variable("y1", ring)
    base = reduce_symbol(x1 ** a * y1 ** b * root_cof, sym_z)
    roots = []
    for k in range(m):
        factor = (zeta ** k).to_poly(ring)
        zp = reduce_symbol(factor * base, sym_z)
        if not exact:
            zp = Poly(ring, {e: c for e, c in zp.terms.items() if e[1] < cap and e[2] < cap})
        roots.append(
            FracSeries2(
                ramification=n,
                poly=zp,
                truncation=Fraction(trunc),
                symbol=sym_z,
                exact=exact,
            )
        )
    return roots


# -- characteristic monomials -----------------------------------------------------

@dataclass
class CharMonomials:
    """Characteristic monomials of a quasi-ordinary germ.

    ``monomials`` is the deduplicated, lexicographically sorted list of
    dominating-exponent pairs of the pairwise root differences (raw view);
    ``normalized`` drops pairs with both exponents integral unless all are
    (the standardization choice is documented in the README).
    """

    monomials: list
    normalized: list
    denominator: int
    all_integral: bool


def characteristic_monomials(
    f: Poly, main_var="Z", base_vars=("X", "Y"), trunc=None
) -> CharMonomials:
    roots = qo_roots(f, main_var, base_vars, trunc=trunc)
    monos = set()
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            diff = roots[i] - roots[j]
            if diff.is_zero():
                raise QOError("coincident roots: input not squarefree")
            dom = diff.dominating_monomial()
            if dom is None:
                raise QOError(
                    "no dominating monomial within truncation %s; increase it"
                    % roots[i].truncation
                )
            monos.add(dom)
    monomials = sorted(monos)
    denom = 1
    for p, q in monomials:
        denom = denom * p.denominator // math.gcd(denom, p.denominator)
        denom = denom * q.denominator // math.gcd(denom, q.denominator)
    fractional = [m for m in monomials if m[0].denominator > 1 or m[1].denominator > 1]
    all_integral = not fractional
    normalized = monomials if all_integral else fractional
    return CharMonomials(
        monomials=monomials,
        normalized=normalized,
        denominator=denom,
        all_integral=all_integral,
    )


def qo_same_type(
    f: Poly, g: Poly, main_var="Z", base_vars=("X", "Y"), trunc=None
) -> bool:
    """Equal embedded topology: equal normalized characteristic monomials,
    allowing the swap of the two base variables."""
    cf = characteristic_monomials(f, main_var, base_vars, trunc)
    cg = characteristic_monomials(g, main_var, base_vars, trunc)
    mf = set(cf.normalized)
    mg = set(cg.normalized)
    if mf == mg:
        return True
    swapped = {(b, a) for a, b in mg}
    return mf == swapped


def qo_disc_identity(
    f: Poly, main_var="Z", base_vars=("X", "Y"), trunc=None
) -> bool:
    """Verify disc(f) = prod_{i<j} (zeta_i - zeta_j)^2 modulo truncation:
    the two independent computation paths for the discriminant."""
    f = _monic_normalize(f, main_var)
    roots = qo_roots(f, main_var, base_vars, trunc=trunc)
    xb, yb = base_vars
    params = roots[0].params
    ring = roots[0].poly.variables
    n = roots[0].ramification
    prod = FracSeries2(n, Poly.one(ring), roots[0].truncation, None, True)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = roots[i] - roots[j]
            prod = prod * d * d
    disc = discriminant(f, main_var)
    disc_s = _inject(disc, ring, xb, yb, params, n)
    diff = reduce_symbol(prod.poly - disc_s, prod.symbol or roots[0].symbol)
    if all(r.exact for r in roots):
        return diff.is_zero()
    cap = int(min(r.truncation for r in roots) * n)
    kept = Poly(ring, {e: c for e, c in diff.terms.items() if e[1] < cap and e[2] < cap})
    return kept.is_zero()
