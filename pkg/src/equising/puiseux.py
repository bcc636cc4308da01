"""Newton-Puiseux expansions of plane-curve germs and characteristic data.

Roots of f(X, Z) = 0 vanishing at the origin are computed as truncated
fractional-power series in X.  Coefficients live in Q or in a single
algebraic extension Q(w) presented by the minimal polynomial of w; the
supported extensions are square roots of rationals (including quadratic
irrationalities via the quadratic formula) and roots of unity.  Inputs
that would require a deeper tower are rejected with a clear error rather
than approximated.

Internally a series coefficient field Q(w) is modelled by adjoining an
extra variable ``_w`` to the polynomial ring and reducing exponents
modulo the minimal polynomial after every product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from equising.polynomials import Poly, squarefree_part


class PuiseuxError(ValueError):
    pass


class UnsupportedExtension(PuiseuxError):
    """The expansion would need an algebraic extension outside the
    supported radical/cyclotomic tower."""


SYMBOL_VAR = "_w"


# -- cyclotomic polynomials ----------------------------------------------------

def _poly_div_exact(num, den):
    """Exact division of univariate coefficient lists over Q."""
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise PuiseuxError("inexact cyclotomic division")
    return out


def cyclotomic_minpoly(n: int):
    """Coefficients (c0, ..., 1) of the n-th cyclotomic polynomial."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_minpoly(d))
    return tuple(poly)


@dataclass(frozen=True)
class RootSymbol:
    """A single algebraic generator w with monic minimal polynomial over Q.

    kind is "radical" (w^2 = r or quadratic irrationality) or "cyclotomic"
    (w a primitive n-th root of unity).
    """

    label: str
    minpoly: tuple  # monic, (c0, ..., c_{d-1}, 1)
    kind: str
    order: int = 0  # for cyclotomic: n with w = zeta_n

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def __repr__(self):
        return "RootSymbol(%s)" % self.label


def radical_symbol(r: Fraction) -> RootSymbol:
    """The symbol sqrt(r) with minimal polynomial w^2 - r (r not a square)."""
    r = Fraction(r)
    if r == -1:
        return cyclotomic_symbol(4)
    return RootSymbol("sqrt(%s)" % r, (Fraction(-r), Fraction(0), Fraction(1)), "radical")


def cyclotomic_symbol(n: int) -> RootSymbol:
    return RootSymbol("zeta%d" % n, cyclotomic_minpoly(n), "cyclotomic", order=n)


def reduce_symbol(p: Poly, sym: Optional[RootSymbol]) -> Poly:
    """Reduce the _w-exponents of p modulo the minimal polynomial of w."""
    if sym is None:
        return p
    wi = p.variables.index(SYMBOL_VAR)
    d = sym.degree
    if p.degree_in(SYMBOL_VAR) < d:
        return p
    # power table: w^k as coefficient vectors for k up to the max exponent
    maxe = p.degree_in(SYMBOL_VAR)
    table = {}
    cur = [Fraction(0)] * d
    # w^d = -(c0 + c1 w + ... + c_{d-1} w^{d-1})
    top = [-c for c in sym.minpoly[:d]]
    cur = list(top)
    table[d] = list(cur)
    for k in range(d + 1, maxe + 1):
        nxt = [Fraction(0)] * d
        # multiply cur by w
        carry = cur[d - 1]
        for i in range(d - 1, 0, -1):
            nxt[i] = cur[i - 1]
        nxt[0] = Fraction(0)
        if carry:
            for i in range(d):
                nxt[i] += carry * top[i]
        cur = nxt
        table[k] = list(cur)
    terms = {}
    for e, c in p.terms.items():
        k = e[wi]
        if k < d:
            terms[e] = terms.get(e, Fraction(0)) + c
            continue
        for j, cj in enumerate(table[k]):
            if cj:
                ne = list(e)
                ne[wi] = j
                key = tuple(ne)
                terms[key] = terms.get(key, Fraction(0)) + c * cj
    return Poly(p.variables, terms)


# -- algebraic numbers ----------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicNum:
    """An element of Q(w): coefficient tuple of 1, w, ..., w^{d-1}.

    symbol None means a plain rational (coeffs of length 1).
    """

    symbol: Optional[RootSymbol]
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def rational(cls, c) -> "AlgebraicNum":
        return cls(None, (Fraction(c),))

    @classmethod
    def lift(cls, value, symbol: Optional[RootSymbol]) -> "AlgebraicNum":
        if isinstance(value, AlgebraicNum):
            if value.symbol is None and symbol is not None:
                d = symbol.degree
                return cls(symbol, value.coeffs + (Fraction(0),) * (d - 1))
            if value.symbol == symbol or symbol is None and value.symbol is None:
                return value
            if symbol is None:
                raise PuiseuxError("cannot forget a symbol")
            raise UnsupportedExtension("mixing two distinct symbols")
        d = symbol.degree if symbol else 1
        return cls(symbol, (Fraction(value),) + (Fraction(0),) * (d - 1))

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise PuiseuxError("not a rational number: %r" % (self,))
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _pair(self, other):
        other = AlgebraicNum.rational(other) if not isinstance(other, AlgebraicNum) else other
        if self.symbol is None and other.symbol is not None:
            return AlgebraicNum.lift(self, other.symbol), other
        if other.symbol is None and self.symbol is not None:
            return self, AlgebraicNum.lift(other, self.symbol)
        if self.symbol != other.symbol:
            # symbols with identical minimal polynomials denote the same field
            if (
                self.symbol is not None
                and other.symbol is not None
                and self.symbol.minpoly == other.symbol.minpoly
            ):
                return self, AlgebraicNum(self.symbol, other.coeffs)
            raise UnsupportedExtension("mixing two distinct symbols")
        return self, other

    def __add__(self, other):
        a, b = self._pair(other)
        return AlgebraicNum(a.symbol, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNum(self.symbol, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.symbol is None:
            return AlgebraicNum(None, (a.coeffs[0] * b.coeffs[0],))
        d = a.symbol.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        # reduce modulo the minimal polynomial
        top = [-c for c in a.symbol.minpoly[:d]]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for i in range(d):
                    prod[k - d + i] += c * top[i]
        return AlgebraicNum(a.symbol, tuple(prod[:d]))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = AlgebraicNum.lift(1, self.symbol)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "AlgebraicNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero algebraic number")
        if self.symbol is None:
            return AlgebraicNum(None, (1 / self.coeffs[0],))
        # extended Euclid of self (as polynomial in w) and the minimal polynomial
        a = list(self.coeffs)
        m = list(self.symbol.minpoly)
        # invariants: s * self = r (mod minpoly)
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                return AlgebraicNum(
                    self.symbol,
                    tuple(
                        (s1[i] if i < len(s1) else Fraction(0)) * inv
                        for i in range(self.symbol.degree)
                    ),
                )
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __eq__(self, other):
        try:
            a, b = self._pair(other)
        except (PuiseuxError, TypeError):
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.symbol, self.coeffs))

    def to_poly(self, ring) -> Poly:
        """Embed into a Poly over a ring containing the symbol variable."""
        if self.symbol is None:
            return Poly.constant(self.coeffs[0], ring)
        w = Poly.variable(SYMBOL_VAR, ring)
        out = Poly.zero(ring)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + Poly.constant(c, ring) * w ** i
        return out

    def __repr__(self):
        if self.symbol is None:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                wpow = self.symbol.label if i == 1 else "%s^%d" % (self.symbol.label, i)
                parts.append(wpow if c == 1 else "%s*%s" % (c, wpow))
        return " + ".join(parts) if parts else "0"


def _poly_divmod(num, den):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return q, num[: len(den) - 1]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def zeta_in(symbol: Optional[RootSymbol], n: int) -> Optional[AlgebraicNum]:
    """A primitive n-th root of unity expressed in Q(symbol), or None."""
    if n == 1:
        return AlgebraicNum.lift(1, symbol)
    if n == 2:
        return AlgebraicNum.lift(-1, symbol)
    if symbol is None:
        return None
    if symbol.kind == "cyclotomic":
        m = symbol.order
        if m % n == 0:
            return _zeta_power(symbol, m // n)
        return None
    if symbol.kind == "radical":
        # w^2 = r: zeta3 and zeta6 live in Q(sqrt(-3)); zeta4 in Q(sqrt(-1))
        r = -symbol.minpoly[0]
        if n == 4 and r == -1:
            return AlgebraicNum(symbol, (Fraction(0), Fraction(1)))
        if n in (3, 6) and r == -3:
            w = AlgebraicNum(symbol, (Fraction(0), Fraction(1)))
            if n == 3:
                return (w - 1) / 2
            return (w + 1) / 2
    return None


def _zeta_power(symbol: RootSymbol, k: int) -> AlgebraicNum:
    w = AlgebraicNum(symbol, tuple(
        Fraction(1) if i == 1 else Fraction(0) for i in range(symbol.degree)
    ))
    return w ** k


# -- Puiseux series --------------------------------------------------------------

def _normalize_ram(terms: dict, ram: int):
    """Reduce the ramification to the minimal one for the stored support."""
    if not terms:
        return {}, 1
    g = ram
    for k in terms:
        g = math.gcd(g, k)
    if g == 1:
        return dict(terms), ram
    return {k // g: c for k, c in terms.items()}, ram // g


@dataclass
class PuiseuxSeries:
    """A truncated fractional-power series  sum_k c_k X^{k/n}.

    ``terms`` maps the integer k (power of X^{1/n}) to its coefficient
    (Fraction or AlgebraicNum).  ``exact`` marks a series whose expansion
    terminated; then the truncation order is irrelevant.  ``nconj`` is the
    number of conjugate roots represented by this branch (the branch
    orbit size); conjugates are produced by ``conjugates()``.
    """

    ramification: int
    terms: dict
    truncation: Fraction
    symbol: Optional[RootSymbol] = None
    exact: bool = False
    nconj: int = 1

    def __post_init__(self):
        terms, ram = _normalize_ram(
            {k: v for k, v in self.terms.items() if not _is_zero_coef(v)},
            self.ramification,
        )
        self.terms = terms
        self.ramification = ram
        self.truncation = Fraction(self.truncation)

    def support(self):
        """Exponents as Fractions, increasing."""
        return sorted(Fraction(k, self.ramification) for k in self.terms)

    def order(self) -> Optional[Fraction]:
        s = self.support()
        return s[0] if s else None

    def coefficient(self, e: Fraction):
        e = Fraction(e)
        k = e * self.ramification
        if k.denominator != 1:
            return AlgebraicNum.rational(0)
        v = self.terms.get(int(k), Fraction(0))
        return v

    def conjugate(self, j: int) -> "PuiseuxSeries":
        """Twist X^{1/n} -> zeta_n^j X^{1/n}."""
        n = self.ramification
        j %= n
        if j == 0 or not self.terms:
            return self
        if n == 2:
            terms = {
                k: (c if k % 2 == 0 else _coef_neg(c)) for k, c in self.terms.items()
            }
            return PuiseuxSeries(n, terms, self.truncation, self.symbol, self.exact, self.nconj)
        zeta = zeta_in(self.symbol, n)
        if zeta is None:
            sym = cyclotomic_symbol(n)
            if self.symbol is not None:
                raise UnsupportedExtension(
                    "conjugation needs zeta_%d on top of %s" % (n, self.symbol.label)
                )
            zeta = AlgebraicNum(sym, tuple(
                Fraction(1) if i == 1 else Fraction(0) for i in range(sym.degree)
            ))
            lifted = {k: AlgebraicNum.lift(c, sym) for k, c in self.terms.items()}
            terms = {k: zeta ** ((j * k) % n) * c for k, c in lifted.items()}
            return PuiseuxSeries(n, terms, self.truncation, sym, self.exact, self.nconj)
        terms = {
            k: zeta ** ((j * k) % n) * AlgebraicNum.lift(c, zeta.symbol)
            for k, c in self.terms.items()
        }
        return PuiseuxSeries(n, terms, self.truncation, zeta.symbol, self.exact, self.nconj)

    def conjugates(self):
        """All nconj distinct conjugate series (including this one)."""
        seen = []
        for j in range(self.ramification):
            cand = self.conjugate(j)
            if not any(_series_equal(cand, s) for s in seen):
                seen.append(cand)
        return seen

    def to_poly(self, ring, x1_var) -> Poly:
        """As a polynomial in x1 = X^{1/n} over ``ring`` (with symbol var)."""
        out = Poly.zero(ring)
        x1 = Poly.variable(x1_var, ring)
        for k, c in self.terms.items():
            cc = c if isinstance(c, AlgebraicNum) else AlgebraicNum.rational(c)
            out = out + cc.to_poly(ring) * x1 ** k
        return out

    def __repr__(self):
        if not self.terms:
            return "PuiseuxSeries(0)"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            e = Fraction(k, self.ramification)
            bits.append("(%s)*X^(%s)" % (c, e))
        tail = "" if self.exact else " + O(X^%s)" % self.truncation
        return " + ".join(bits) + tail


def _is_zero_coef(c) -> bool:
    if isinstance(c, AlgebraicNum):
        return c.is_zero()
    return c == 0


def _coef_neg(c):
    return -c


def _series_equal(a: PuiseuxSeries, b: PuiseuxSeries) -> bool:
    if a.ramification != b.ramification:
        return False
    if set(a.terms) != set(b.terms):
        return False
    for k, c in a.terms.items():
        ca = c if isinstance(c, AlgebraicNum) else AlgebraicNum.rational(c)
        cb = b.terms[k] if isinstance(b.terms[k], AlgebraicNum) else AlgebraicNum.rational(b.terms[k])
        try:
            if ca != cb:
                return False
        except UnsupportedExtension:
            return False
    return True


# -- characteristic-equation root solving -----------------------------------------

def _int_nth_root(a: int, n: int):
    if a < 0:
        if n % 2 == 0:
            return None
        r = _int_nth_root(-a, n)
        return -r if r is not None else None
    r = round(a ** (1.0 / n)) if a > 1 else a
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == a:
            return cand
    return None


def _rational_nth_root(r: Fraction, n: int):
    num = _int_nth_root(r.numerator, n)
    den = _int_nth_root(r.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _rational_roots_with_mult(coeffs):
    """Rational roots (with multiplicity) of a Q-coefficient list, plus the
    deflated cofactor."""
    work = [Fraction(c) for c in coeffs]
    while work and work[-1] == 0:
        work.pop()
    roots = []
    # strip roots at zero
    while work and work[0] == 0:
        work = work[1:]
    den = 1
    for c in work:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in work]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    if len(ints) <= 1:
        return roots, [Fraction(c) for c in ints]

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return out

    candidates = set()
    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    poly = [Fraction(c) for c in ints]
    for cand in sorted(candidates):
        while True:
            # synthetic evaluation and deflation
            val = Fraction(0)
            for c in reversed(poly):
                val = val * cand + c
            if val != 0 or len(poly) == 1:
                break
            newpoly = [Fraction(0)] * (len(poly) - 1)
            acc = Fraction(0)
            for i in range(len(poly) - 1, 0, -1):
                acc = poly[i] + acc * cand
                newpoly[i - 1] = acc
            poly = newpoly
            roots.append(cand)
    counted = [(r, roots.count(r)) for r in sorted(set(roots))]
    return counted, poly


def solve_characteristic(coeffs, symbol: Optional[RootSymbol]):
    """All roots (value, multiplicity) of a univariate polynomial given by
    AlgebraicNum/Fraction coefficients c0..cd over Q(symbol).

    Returns (roots, symbol') where symbol' extends the input symbol if a
    new quadratic or cyclotomic generator was required.  Raises
    UnsupportedExtension when the roots do not fit in a single supported
    extension.
    """
    cs = [c if isinstance(c, AlgebraicNum) else AlgebraicNum.rational(c) for c in coeffs]
    while cs and cs[-1].is_zero():
        cs.pop()
    if len(cs) <= 1:
        raise PuiseuxError("constant characteristic polynomial")
    deg = len(cs) - 1
    if deg == 1:
        c = -(cs[0] / cs[1])
        return [(c, 1)], symbol or c.symbol
    all_rational = all(c.is_rational for c in cs)
    if not all_rational:
        raise UnsupportedExtension(
            "characteristic equation of degree %d over an extension field" % deg
        )
    rat = [c.as_fraction() for c in cs]
    support = [i for i, c in enumerate(rat) if c != 0]
    # pure binomial a*c^k + b
    if len(support) == 2 and support[0] == 0:
        k = support[1]
        r = -rat[0] / rat[k]
        rt = _rational_nth_root(r, k)
        roots = []
        if rt is not None:
            # all k-th roots of r: rt * zeta_k^j
            if k == 1:
                return [(AlgebraicNum.rational(rt), 1)], symbol
            if k == 2:
                return (
                    [(AlgebraicNum.rational(rt), 1), (AlgebraicNum.rational(-rt), 1)],
                    symbol,
                )
            zsym = symbol if symbol and symbol.kind == "cyclotomic" and symbol.order == k else None
            if symbol is not None and zsym is None:
                raise UnsupportedExtension("needs zeta_%d over %s" % (k, symbol.label))
            zsym = zsym or cyclotomic_symbol(k)
            z = AlgebraicNum(zsym, tuple(
                Fraction(1) if i == 1 else Fraction(0) for i in range(zsym.degree)
            ))
            return (
                [(AlgebraicNum.lift(rt, zsym) * z ** j, 1) for j in range(k)],
                zsym,
            )
        if k == 2:
            if symbol is not None:
                raise UnsupportedExtension("needs sqrt(%s) over %s" % (r, symbol.label))
            sym = radical_symbol(r)
            w = AlgebraicNum(sym, (Fraction(0), Fraction(1)))
            return [(w, 1), (-w, 1)], sym
        raise UnsupportedExtension("irrational %d-th root of %s" % (k, r))
    # general: peel rational roots, then allow one quadratic factor
    rational_roots, cofactor = _rational_roots_with_mult(rat)
    roots = [(AlgebraicNum.rational(r), m) for r, m in rational_roots]
    while cofactor and cofactor[-1] == 0:
        cofactor.pop()
    codeg = len(cofactor) - 1
    if codeg <= 0:
        return roots, symbol
    if codeg == 2:
        a, b, c = cofactor[2], cofactor[1], cofactor[0]
        disc = b * b - 4 * a * c
        if symbol is not None:
            raise UnsupportedExtension("quadratic factor over an existing extension")
        sq = _rational_nth_root(disc, 2)
        if sq is not None:
            r1 = (-b + sq) / (2 * a)
            r2 = (-b - sq) / (2 * a)
            return roots + [(AlgebraicNum.rational(r1), 1), (AlgebraicNum.rational(r2), 1)], symbol
        sym = radical_symbol(disc)
        w = AlgebraicNum(sym, (Fraction(0), Fraction(1)))
        half = AlgebraicNum.lift(Fraction(1, 2) / a, sym)
        mb = AlgebraicNum.lift(-b, sym)
        return (
            roots + [((mb + w) * half, 1), ((mb - w) * half, 1)],
            sym,
        )
    # repeated quadratic/cubic patterns beyond this are out of the tower
    raise UnsupportedExtension(
        "characteristic factor of degree %d is outside the supported tower" % codeg
    )


# -- the Newton-Puiseux algorithm ---------------------------------------------------

_XVAR, _ZVAR = "_x", "_z"
_RING = (SYMBOL_VAR, _XVAR, _ZVAR)


def _to_internal(f: Poly, xname, zname) -> Poly:
    terms = {}
    xi = f._index(xname)
    zi = f._index(zname)
    for v in f.variables:
        if v not in (xname, zname) and f.involves(v):
            raise PuiseuxError("polynomial must be bivariate in (%s, %s)" % (xname, zname))
    for e, c in f.terms.items():
        terms[(0, e[xi], e[zi])] = c
    return Poly(_RING, terms)


def _lower_hull(points):
    pts = sorted(set(points))
    frontier = [p for p in pts if not any(q[0] <= p[0] and q[1] <= p[1] and q != p for q in pts)]
    frontier.sort(key=lambda t: (t[0], -t[1]))
    chain = []
    for pt in frontier:
        while len(chain) >= 2:
            (x1, y1), (x2, y2) = chain[-2], chain[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                chain.pop()
            else:
                break
        chain.append(pt)
    return chain


@dataclass
class _PathState:
    f: Poly                       # internal ring (_w, _x, _z)
    symbol: Optional[RootSymbol]
    scale: Fraction               # current x = X^{scale}
    offset: Fraction              # absolute exponent consumed so far
    prefix: list                  # [(absolute exponent in X units, AlgebraicNum)]
    steps_after_simple: int
    simple: bool


def _support_xz(f: Poly):
    return {(e[1], e[2]) for e in f.terms}


def _coeff_at(f: Poly, i: int, j: int, symbol) -> AlgebraicNum:
    """Coefficient of x^i z^j as an AlgebraicNum."""
    d = symbol.degree if symbol else 1
    coeffs = [Fraction(0)] * d
    for e, c in f.terms.items():
        if e[1] == i and e[2] == j:
            coeffs[e[0]] += c
    return AlgebraicNum(symbol, tuple(coeffs))


def _truncate_x(f: Poly, cap: int) -> Poly:
    return Poly(f.variables, {e: c for e, c in f.terms.items() if e[1] <= cap})


def puiseux_expansions(
    f: Poly,
    trunc: Optional[Fraction] = None,
    x_var: Optional[str] = None,
    z_var: Optional[str] = None,
    guard_steps: int = 4,
):
    """All Puiseux branches of f(X, Z) = 0 through the origin.

    f must be squarefree with f(0,0) = 0 and f(0, Z) not identically zero
    (Z-regularity).  Returns one PuiseuxSeries per branch; conjugate roots
    are grouped (``nconj`` per branch, ``conjugates()`` to enumerate).  The
    sum of branch sizes equals the Z-order of f(0, Z).

    With trunc=None each branch is expanded until its characteristic
    exponents are determined (all Newton steps past a simple root) plus
    ``guard_steps`` further steps; an explicit trunc overrides this.
    """
    if x_var is None or z_var is None:
        names = [v for v in f.variables if f.involves(v)]
        if len(names) == 1:
            names = list(f.variables[:2])
        if len(names) != 2:
            raise PuiseuxError("expected a bivariate polynomial")
        x_var = x_var or names[0]
        z_var = z_var or names[1]
    if f.is_zero() or f.eval(tuple(Fraction(0) for _ in f.variables)) != 0:
        raise PuiseuxError("f must be nonzero and vanish at the origin")
    sf = squarefree_part(f)
    if sf.normalized() != f.normalized():
        raise PuiseuxError("f must be squarefree")
    fi = _to_internal(f, x_var, z_var)
    # Z-regularity: f(0, Z) not identically zero
    f0 = Poly(_RING, {e: c for e, c in fi.terms.items() if e[1] == 0})
    if f0.is_zero():
        raise PuiseuxError("f is not Z-regular: f(0, Z) vanishes identically")
    expected = min(e[2] for e in f0.terms)

    hard_trunc = Fraction(trunc) if trunc is not None else None
    series = []
    stack = [
        _PathState(
            f=fi,
            symbol=None,
            scale=Fraction(1),
            offset=Fraction(0),
            prefix=[],
            steps_after_simple=0,
            simple=False,
        )
    ]
    while stack:
        st = stack.pop()
        fcur = st.f
        # exact root: z = 0 divides
        fz0 = Poly(_RING, {e: c for e, c in fcur.terms.items() if e[2] == 0})
        if fz0.is_zero():
            # z = 0 is an exact root on this path; peel it and continue with
            # the cofactor (z^2 | f would contradict squarefreeness)
            series.append(_emit(st, exact=True, hard_trunc=hard_trunc))
            zq = Poly(
                _RING, {(e[0], e[1], e[2] - 1): c for e, c in fcur.terms.items() if e[2] >= 1}
            )
            zq0 = Poly(_RING, {e: c for e, c in zq.terms.items() if e[2] == 0})
            if zq0.is_zero():
                raise PuiseuxError("internal: repeated root branch on squarefree input")
            if zq.degree_in(_ZVAR) >= 1:
                stack.append(
                    _PathState(
                        zq, st.symbol, st.scale, st.offset, st.prefix,
                        st.steps_after_simple, st.simple,
                    )
                )
            continue
        # stopping by truncation
        if _past_truncation(st, hard_trunc, guard_steps):
            series.append(_emit(st, exact=False, hard_trunc=hard_trunc))
            continue
        hull = _lower_hull(_support_xz(fcur))
        segments = list(zip(hull, hull[1:]))
        if not segments:
            # no root tending to zero on this path (should not happen)
            continue
        for (i1, j1), (i2, j2) in segments:
            # j1 > j2, exponent mu = (i2-i1)/(j1-j2) > 0
            du = i2 - i1
            dv = j1 - j2
            g = math.gcd(du, dv)
            u, v = du // g, dv // g
            mu = Fraction(du, dv)
            # full characteristic polynomial along the segment: the terms
            # a_ij x^i z^j on the segment contribute a_ij c^(j-j2); lattice
            # points are spaced v apart in j
            deg_c = j1 - j2
            psi = [AlgebraicNum.lift(0, st.symbol) for _ in range(deg_c + 1)]
            for k in range(deg_c // v + 1):
                j = j2 + v * k
                i = i2 - u * k
                psi[v * k] = _coeff_at(fcur, i, j, st.symbol)
            try:
                roots, new_symbol = solve_characteristic(psi, st.symbol)
            except UnsupportedExtension:
                raise
            for c, r in roots:
                c = AlgebraicNum.lift(c, new_symbol)
                fl = reduce_symbol(
                    _lift_symbol_poly(fcur, st.symbol, new_symbol), new_symbol
                )
                # substitute x -> x^v, z -> x^u (c + z), divide by x^w
                x = Poly.variable(_XVAR, _RING)
                z = Poly.variable(_ZVAR, _RING)
                img_z = x ** u * (c.to_poly(_RING) + z)
                fsub = fl.substitute({_XVAR: x ** v, _ZVAR: img_z})
                fsub = reduce_symbol(fsub, new_symbol)
                w = min(e[1] for e in fsub.terms)
                fnext = Poly(
                    _RING, {(e[0], e[1] - w, e[2]): cc for e, cc in fsub.terms.items()}
                )
                new_scale = st.scale / v
                exponent = st.offset + st.scale * mu
                new_prefix = st.prefix + [(exponent, c)]
                simple = r == 1
                steps = st.steps_after_simple + 1 if st.simple else (1 if simple else 0)
                cap = _x_cap(new_scale, exponent, hard_trunc, guard_steps)
                fnext = _truncate_x(fnext, cap)
                stack.append(
                    _PathState(
                        fnext, new_symbol, new_scale, exponent, new_prefix, steps, simple
                    )
                )
    total = sum(s.nconj for s in series)
    grouped = _group_conjugates(series)
    total = sum(s.nconj for s in grouped)
    if total != expected:
        raise PuiseuxError(
            "internal: found %d roots, expected %d" % (total, expected)
        )
    return grouped


def _lift_symbol_poly(f: Poly, old: Optional[RootSymbol], new: Optional[RootSymbol]) -> Poly:
    if old == new or new is None:
        return f
    if old is None:
        return f
    raise UnsupportedExtension("cannot mix symbols %s and %s" % (old.label, new.label))


def _past_truncation(st: _PathState, hard_trunc, guard_steps) -> bool:
    if not st.prefix:
        return False
    last = max(e for e, _ in st.prefix)
    if hard_trunc is not None:
        return last >= hard_trunc
    return st.simple and st.steps_after_simple > guard_steps


def _x_cap(scale, last_exponent, hard_trunc, guard_steps) -> int:
    """Working precision in current-x units (x = X^scale); absolute
    exponents below the target are preserved exactly under the Newton
    transforms, so truncating above the target is safe."""
    target = Fraction(hard_trunc) if hard_trunc is not None else last_exponent + guard_steps + 6
    bound = (target - last_exponent) / scale
    return max(16, int(bound) + 8)


def _emit(st: _PathState, exact: bool, hard_trunc) -> PuiseuxSeries:
    exps = [e for e, _ in st.prefix]
    denom = 1
    for e in exps:
        denom = denom * e.denominator // math.gcd(denom, e.denominator)
    terms = {}
    for e, c in st.prefix:
        k = int(e * denom)
        terms[k] = c
    last = max(exps, default=Fraction(0))
    if exact:
        trunc = last + 1
    else:
        # the next (uncomputed) exponent exceeds last by at least one step
        # of the current scale, so the series is certified below that
        trunc = last + st.scale
    return PuiseuxSeries(
        ramification=denom,
        terms=terms,
        truncation=trunc,
        symbol=st.symbol,
        exact=exact,
        nconj=1,
    )


def _group_conjugates(series):
    """Group the enumerated roots into branches (conjugation orbits)."""
    remaining = list(series)
    out = []
    while remaining:
        s = remaining.pop(0)
        orbit = [s]
        try:
            conjs = [s.conjugate(j) for j in range(1, s.ramification)]
        except UnsupportedExtension:
            conjs = []
        for c in conjs:
            for other in list(remaining):
                if _series_equal(c, other):
                    remaining.remove(other)
                    if not any(_series_equal(c, o) for o in orbit):
                        orbit.append(c)
                    break
        rep = orbit[0]
        rep.nconj = len(orbit)
        out.append(rep)
    return out


# -- verification helpers ---------------------------------------------------------

def back_substitute(f: Poly, s: PuiseuxSeries, x_var, z_var) -> bool:
    """Check f(X, s(X)) = 0 modulo X^truncation (exactly for exact series)."""
    fi = _to_internal(f, x_var, z_var)
    n = s.ramification
    x = Poly.variable(_XVAR, _RING)
    zeta_poly = s.to_poly(_RING, _XVAR)
    sub = fi.substitute({_XVAR: x ** n, _ZVAR: zeta_poly})
    sub = reduce_symbol(sub, s.symbol)
    if s.exact:
        return sub.is_zero()
    cap = int(s.truncation * n)
    kept = Poly(_RING, {e: c for e, c in sub.terms.items() if e[1] < cap})
    return kept.is_zero()


def product_reconstruction(f: Poly, branches, x_var, z_var) -> bool:
    """Check prod over all roots of (Z - zeta_i) = f / lc modulo truncation.

    Valid when every root of f(0, Z) vanishes (f(0,Z) = c Z^deg); branch
    norms are computed per-branch in the branch's own field, yielding
    rational polynomials which are then multiplied together.
    """
    fi = _to_internal(f, x_var, z_var)
    degz = fi.degree_in(_ZVAR)
    f0 = Poly(_RING, {e: c for e, c in fi.terms.items() if e[1] == 0})
    if min(e[2] for e in f0.terms) != degz:
        raise PuiseuxError("product reconstruction needs all roots vanishing at 0")
    lc = fi.leading_coefficient_in(_ZVAR)
    if not lc.is_constant():
        raise PuiseuxError("product reconstruction needs constant leading coefficient")
    lcv = lc.constant_value()
    trunc = min(
        (Fraction(b.truncation) for b in branches if not b.exact), default=None
    )
    total = Poly.one(_RING)
    overall_ram = 1
    for b in branches:
        overall_ram = overall_ram * b.ramification // math.gcd(overall_ram, b.ramification)
    x = Poly.variable(_XVAR, _RING)
    z = Poly.variable(_ZVAR, _RING)
    for b in branches:
        conjs = b.conjugates()
        if len(conjs) != b.nconj:
            raise PuiseuxError("cannot enumerate all conjugates of a branch")
        n = b.ramification
        norm = Poly.one(_RING)
        sym = None
        for c in conjs:
            sym = c.symbol or sym
        for c in conjs:
            cp = c.to_poly(_RING, _XVAR)
            norm = norm * (z - cp)
            norm = reduce_symbol(norm, sym)
        if norm.degree_in(SYMBOL_VAR) > 0:
            raise PuiseuxError("branch norm failed to be rational")
        # x here is X^{1/n}; rescale to the common ramification
        scale = overall_ram // n
        norm = norm.substitute({_XVAR: x ** scale, _ZVAR: z})
        total = total * norm
    # compare against f(X = x^overall_ram, Z) up to truncation
    target = fi.substitute({_XVAR: x ** overall_ram, _ZVAR: z})
    diff = total * Poly.constant(lcv, _RING) - target
    if trunc is None:
        return diff.is_zero()
    cap = int(trunc * overall_ram)
    kept = Poly(_RING, {e: c for e, c in diff.terms.items() if e[1] < cap})
    return kept.is_zero()


# -- characteristic data ------------------------------------------------------------

@dataclass
class CharData:
    """Characteristic exponents, Puiseux pairs, and the multiplicity
    sequence of one branch."""

    char_exponents: list
    char_pairs: list
    mult_sequence: tuple


def characteristic_exponents(s: PuiseuxSeries):
    """Exponents of the branch whose denominators enlarge the ramification
    reached so far."""
    out = []
    m = 1
    for e in s.support():
        d = e.denominator
        if m % d != 0:
            out.append(e)
            m = m * d // math.gcd(m, d)
    return out


def puiseux_pairs(s: PuiseuxSeries):
    """Pairs (p_i, q_i) with beta_i = q_i / (p_1 ... p_i); the cusp gives
    [(2, 3)]."""
    n = s.ramification
    exps = characteristic_exponents(s)
    pairs = []
    e_prev = n
    for b in exps:
        k = int(b * n)
        e_i = math.gcd(e_prev, k)
        pairs.append((e_prev // e_i, k // e_i))
        e_prev = e_i
    return pairs


def multiplicity_sequence_from_char(n: int, ks):
    """Multiplicity sequence from the Puiseux characteristic (n; k_1...k_g)
    by the classical Euclidean expansion; ends in 1."""
    if not ks:
        return (1,)
    seq = []
    e_prev = n
    prev_k = None
    for idx, k in enumerate(ks):
        a = k if idx == 0 else k - prev_k
        b = e_prev
        # Euclidean expansion of (a, b): append divisor, quotient times
        while b > 0:
            q, r = divmod(a, b)
            seq.extend([b] * q)
            a, b = b, r
        e_prev = math.gcd(e_prev, k)
        prev_k = k
    if not seq or seq[-1] != 1:
        seq.append(1)
    return tuple(seq)


def characteristic_data(f: Poly, x_var=None, z_var=None, trunc=None):
    """Characteristic data per branch of f (squarefree, Z-regular).

    Branches must be transverse to the Z-direction (all exponents >= 1);
    otherwise the data is not intrinsic and an error is raised.
    """
    branches = puiseux_expansions(f, trunc=trunc, x_var=x_var, z_var=z_var)
    out = []
    for b in branches:
        o = b.order()
        if o is not None and o < 1:
            raise PuiseuxError(
                "branch with exponent %s < 1: choose a transverse Z direction" % o
            )
        exps = characteristic_exponents(b)
        ks = [int(e * b.ramification) for e in exps]
        out.append(
            CharData(
                char_exponents=exps,
                char_pairs=puiseux_pairs(b),
                mult_sequence=multiplicity_sequence_from_char(b.ramification, ks),
            )
        )
    return branches, out
