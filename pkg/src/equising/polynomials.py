"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are kept dense in variables (every Poly carries an ordered
variable tuple) and sparse in terms (a dict from exponent vectors to
nonzero Fractions).  Everything here is pure and exact; no floats ever
enter.  The elimination primitives (resultant, discriminant, gcd,
squarefree part) are the engine for the discriminant recursion and the
blowup bookkeeping in the rest of the package.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class PolyError(ValueError):
    """Raised for contract violations in polynomial operations."""


class ParseError(PolyError):
    """Syntax or identifier error in a polynomial expression, with position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise PolyError("coefficients must be exact rationals, got %r" % (value,))


class Poly:
    """Sparse exact multivariate polynomial over Q.

    Immutable after construction.  ``terms`` maps exponent tuples (one
    entry per variable) to nonzero Fraction coefficients; the zero
    polynomial is the empty mapping.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object]):
        vars = tuple(variables)
        clean = {}
        nvars = len(vars)
        for exps, coeff in terms.items():
            c = _as_fraction(coeff)
            if c == 0:
                continue
            e = tuple(int(x) for x in exps)
            if len(e) != nvars:
                raise PolyError("exponent vector %r has wrong length for %r" % (e, vars))
            if any(x < 0 for x in e):
                raise PolyError("negative exponent in %r" % (e,))
            clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "variables", vars)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "Poly":
        return cls(variables, {})

    @classmethod
    def constant(cls, value, variables) -> "Poly":
        vars = tuple(variables)
        return cls(vars, {tuple([0] * len(vars)): _as_fraction(value)})

    @classmethod
    def one(cls, variables) -> "Poly":
        return cls.constant(1, variables)

    @classmethod
    def variable(cls, name, variables) -> "Poly":
        vars = tuple(variables)
        if name not in vars:
            raise PolyError("unknown variable %r (have %r)" % (name, vars))
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: Fraction(1)})

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("not a constant: %s" % self)
        if not self.terms:
            return Fraction(0)
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int:
        """Minimal total degree among terms (order of vanishing at 0); -1 if zero."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def _index(self, var) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise PolyError("unknown variable %r (have %r)" % (var, self.variables))

    def involves(self, var) -> bool:
        i = self._index(var)
        return any(e[i] > 0 for e in self.terms)

    def support(self):
        return set(self.terms)

    # -- ring operations ---------------------------------------------------

    def _check_same_ring(self, other: "Poly"):
        if self.variables != other.variables:
            raise PolyError(
                "mismatched variable lists: %r vs %r"
                % (self.variables, other.variables)
            )

    def __add__(self, other):
        other = self._coerce(other)
        self._check_same_ring(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Poly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        self._check_same_ring(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Poly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PolyError("polynomial power must be a non-negative integer")
        result = Poly.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(other, self.variables)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, var) -> "Poly":
        i = self._index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = terms.get(tuple(ne), Fraction(0)) + c * e[i]
        return Poly(self.variables, terms)

    def gradient(self):
        return [self.derivative(v) for v in self.variables]

    def eval(self, point: Sequence) -> Fraction:
        """Evaluate at a rational point (one value per variable)."""
        vals = [_as_fraction(x) for x in point]
        if len(vals) != len(self.variables):
            raise PolyError("point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, bindings: Mapping[str, "Poly"]) -> "Poly":
        """Substitute polynomials for variables.

        Every bound name must be one of this polynomial's variables, and
        all images must share one common variable list.  Unbound
        variables map to themselves and must exist in the image ring.
        """
        if not bindings:
            return self
        images = list(bindings.values())
        target_vars = images[0].variables
        for img in images:
            if img.variables != target_vars:
                raise PolyError("substitution images have mismatched variable lists")
        for name in bindings:
            self._index(name)
        maps = []
        for v in self.variables:
            if v in bindings:
                maps.append(bindings[v])
            else:
                maps.append(Poly.variable(v, target_vars))  # raises if missing
        result = Poly.zero(target_vars)
        # Horner-free straightforward expansion; desk-scale inputs only.
        power_cache = [dict() for _ in maps]
        for e, c in self.terms.items():
            term = Poly.constant(c, target_vars)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                cache = power_cache[i]
                if k not in cache:
                    cache[k] = maps[i] ** k
                term = term * cache[k]
            result = result + term
        return result

    def shift(self, offsets: Sequence) -> "Poly":
        """Translate coordinates: p(x) -> p(x + offsets)."""
        vals = [_as_fraction(x) for x in offsets]
        if len(vals) != len(self.variables):
            raise PolyError("offset vector has wrong length")
        bindings = {}
        for v, a in zip(self.variables, vals):
            if a != 0:
                bindings[v] = Poly.variable(v, self.variables) + Poly.constant(a, self.variables)
        return self.substitute(bindings)

    # -- variable management -------------------------------------------------

    def with_variables(self, new_variables) -> "Poly":
        """Re-express in a larger (or reordered) variable list."""
        new_vars = tuple(new_variables)
        idx = []
        for v in self.variables:
            if v not in new_vars:
                if self.involves(v):
                    raise PolyError("cannot drop used variable %r" % v)
                idx.append(None)
            else:
                idx.append(new_vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for pos, k in enumerate(e):
                if k:
                    ne[idx[pos]] = k
            key = tuple(ne)
            terms[key] = terms.get(key, Fraction(0)) + c
        return Poly(new_vars, terms)

    def rename_variables(self, new_names) -> "Poly":
        """Positional rename of the variable list."""
        new_names = tuple(new_names)
        if len(new_names) != len(self.variables):
            raise PolyError("rename needs one name per variable")
        return Poly(new_names, self.terms)

    def drop_variable(self, var) -> "Poly":
        i = self._index(var)
        if self.involves(var):
            raise PolyError("cannot drop variable %r still in use" % var)
        new_vars = self.variables[:i] + self.variables[i + 1:]
        return Poly(new_vars, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    # -- univariate views ---------------------------------------------------

    def coefficients_in(self, var) -> list:
        """Coefficient list [c0, c1, ...] of powers of ``var``; each ci is a
        Poly in the same ring with ``var``-degree zero."""
        i = self._index(var)
        d = self.degree_in(var)
        if d < 0:
            return []
        coeffs = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[i]
            ne = list(e)
            ne[i] = 0
            key = tuple(ne)
            coeffs[k][key] = coeffs[k].get(key, Fraction(0)) + c
        return [Poly(self.variables, t) for t in coeffs]

    def leading_coefficient_in(self, var) -> "Poly":
        coeffs = self.coefficients_in(var)
        if not coeffs:
            return Poly.zero(self.variables)
        return coeffs[-1]

    @staticmethod
    def from_coefficients(coeffs: Iterable["Poly"], var) -> "Poly":
        coeffs = list(coeffs)
        if not coeffs:
            raise PolyError("empty coefficient list")
        ring = coeffs[0].variables
        x = Poly.variable(var, ring)
        result = Poly.zero(ring)
        for k, c in enumerate(coeffs):
            result = result + c * x ** k
        return result

    # -- term order and normalization ----------------------------------------

    def _grlex_key(self, e):
        return (sum(e), e)

    def leading_term_grlex(self):
        """(exponent tuple, coefficient) of the graded-lex greatest term."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=self._grlex_key)
        return e, self.terms[e]

    def content(self) -> Fraction:
        """Positive rational c with p/c integer-coefficient and primitive."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "Poly":
        """Primitive (integer coefficients, content 1) with positive
        graded-lex leading coefficient.  Deterministic representative of
        the scalar class; the zero polynomial normalizes to itself."""
        if not self.terms:
            return self
        c = self.content()
        _, lead = self.leading_term_grlex()
        if lead < 0:
            c = -c
        return Poly(self.variables, {e: v / c for e, v in self.terms.items()})

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda ec: self._grlex_key(ec[0]), reverse=True)
        pieces = []
        for e, c in items:
            factors = []
            for v, k in zip(self.variables, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append("%s^%d" % (v, k))
            mag = abs(c)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return "Poly(%r, %s)" % (list(self.variables), str(self))


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()/]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError("unexpected character %r" % stripped[0], at)
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for the expression grammar:

        expression := ['+'|'-']? term (('+'|'-') term)*
        term       := factor ('*' factor)*
        factor     := base ('^' uint)?
        base       := identifier | rational | '(' expression ')'
        rational   := uint ('/' uint)?

    Implicit multiplication is rejected.  A leading sign is accepted as a
    convenience superset of the grammar.
    """

    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.k = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError("expected %r" % op, pos)
        return self.next()

    def parse(self) -> Poly:
        p = self.expression()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input %r" % val, pos)
        return p

    def expression(self) -> Poly:
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        p = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.peek()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            self.next()
            p = p ** int(val)
        return p

    def base(self) -> Poly:
        kind, val, pos = self.next()
        if kind == "ident":
            if val not in self.variables:
                raise ParseError("unknown identifier %r" % val, pos)
            return Poly.variable(val, self.variables)
        if kind == "int":
            num = int(val)
            kind2, val2, pos2 = self.peek()
            if kind2 == "op" and val2 == "/":
                self.next()
                kind3, val3, pos3 = self.peek()
                if kind3 != "int":
                    raise ParseError("denominator must be an integer literal", pos3)
                self.next()
                den = int(val3)
                if den == 0:
                    raise ParseError("zero denominator", pos3)
                return Poly.constant(Fraction(num, den), self.variables)
            return Poly.constant(num, self.variables)
        if kind == "op" and val == "(":
            p = self.expression()
            self.expect_op(")")
            return p
        raise ParseError("expected identifier, number, or '('", pos)


def parse(text: str, variables) -> Poly:
    """Parse an expression into a fully expanded, normalized Poly."""
    return _Parser(text, variables).parse()


# -- exact division -----------------------------------------------------------

def exact_divide(a: Poly, b: Poly) -> Poly:
    """Exact multivariate division a/b; raises if b does not divide a."""
    a._check_same_ring(b)
    if b.is_zero():
        raise PolyError("division by zero polynomial")
    if a.is_zero():
        return a
    if b.is_constant():
        c = b.constant_value()
        return Poly(a.variables, {e: v / c for e, v in a.terms.items()})
    quotient: dict = {}
    rem = a
    be, bc = b.leading_term_grlex()
    while not rem.is_zero():
        re_, rc = rem.leading_term_grlex()
        qe = tuple(x - y for x, y in zip(re_, be))
        if any(x < 0 for x in qe):
            raise PolyError("inexact polynomial division")
        qc = rc / bc
        quotient[qe] = quotient.get(qe, Fraction(0)) + qc
        rem = rem - Poly(a.variables, {qe: qc}) * b
        if not rem.is_zero() and rem._grlex_key(rem.leading_term_grlex()[0]) >= rem._grlex_key(re_):
            raise PolyError("inexact polynomial division (no descent)")
    return Poly(a.variables, quotient)


def divides(b: Poly, a: Poly) -> bool:
    try:
        exact_divide(a, b)
        return True
    except PolyError:
        return False


# -- determinants and resultants ----------------------------------------------

def bareiss_determinant(rows) -> Poly:
    """Fraction-free Bareiss determinant of a square matrix of Polys."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        raise PolyError("empty matrix")
    ring = m[0][0].variables
    for r in m:
        if len(r) != n:
            raise PolyError("matrix is not square")
    sign = 1
    prev = Poly.one(ring)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(ring)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = Poly.zero(ring)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(p: Poly, q: Poly, var):
    """Sylvester matrix of p, q with respect to ``var``; entries are Polys
    in the same ring with ``var``-degree zero."""
    p._check_same_ring(q)
    dp = p.degree_in(var)
    dq = q.degree_in(var)
    if dp <= 0 and dq <= 0:
        raise PolyError("Sylvester matrix needs positive degree in %r" % var)
    pc = list(reversed(p.coefficients_in(var)))
    qc = list(reversed(q.coefficients_in(var)))
    n = dp + dq
    zero = Poly.zero(p.variables)
    rows = []
    for i in range(dq):
        rows.append([zero] * i + pc + [zero] * (n - i - len(pc)))
    for i in range(dp):
        rows.append([zero] * i + qc + [zero] * (n - i - len(qc)))
    return rows


def pseudo_remainder(a: Poly, b: Poly, var) -> Poly:
    """prem(a,b) with the classical scaling lc(b)^(da-db+1)*a = q*b + r."""
    da = a.degree_in(var)
    db = b.degree_in(var)
    if db < 0:
        raise PolyError("pseudo-remainder by zero")
    if da < db:
        return a
    lcb = b.leading_coefficient_in(var)
    x = Poly.variable(var, a.variables)
    rem = a
    steps = da - db + 1
    done = 0
    while True:
        dr = rem.degree_in(var)
        if dr < db:
            break
        lcr = rem.leading_coefficient_in(var)
        rem = rem * lcb - lcr * x ** (dr - db) * b
        done += 1
        if rem.degree_in(var) >= dr:
            raise PolyError("pseudo-remainder failed to reduce degree")
    if done < steps:
        rem = rem * lcb ** (steps - done)
    return rem


def resultant_prs(p: Poly, q: Poly, var) -> Poly:
    """Resultant via the subresultant polynomial remainder sequence."""
    ring = p.variables
    dp = p.degree_in(var)
    dq = q.degree_in(var)
    if p.is_zero() or q.is_zero():
        raise PolyError("resultant of the zero polynomial")
    if dp <= 0 and dq <= 0:
        return Poly.one(ring)
    if dp < dq:
        r = resultant_prs(q, p, var)
        return -r if (dp * dq) % 2 == 1 else r
    if dq == 0:
        return q ** dp
    a, b = p, q
    s = 1
    g = Poly.one(ring)
    h = Poly.one(ring)
    while True:
        da = a.degree_in(var)
        db = b.degree_in(var)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = pseudo_remainder(a, b, var)
        if r.is_zero():
            return Poly.zero(ring)
        a, b = b, exact_divide(r, g * h ** delta)
        g = a.leading_coefficient_in(var)
        if delta > 0:
            h = exact_divide(g ** delta, h ** (delta - 1))
        db = b.degree_in(var)
        if db == 0:
            da = a.degree_in(var)
            res = exact_divide(b ** da, h ** (da - 1)) if da > 1 else (b if da == 1 else h)
            return res if s == 1 else -res


def resultant(p: Poly, q: Poly, var, method: str = "bareiss") -> Poly:
    """Res_var(p, q), convention Res(f,g) = lc(f)^{deg g} * prod g(roots of f).

    Computed by fraction-free Bareiss elimination on the Sylvester matrix
    (default) or by the subresultant remainder sequence; the two paths are
    cross-validated in the test suite.  Degenerate degrees follow the
    classical conventions (Res with a nonzero constant c is c^{deg other}).
    """
    p._check_same_ring(q)
    if p.is_zero() and q.is_zero():
        raise PolyError("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        return Poly.zero(p.variables)
    dp = p.degree_in(var)
    dq = q.degree_in(var)
    if dp <= 0 and dq <= 0:
        return Poly.one(p.variables)
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp
    if method == "prs":
        return resultant_prs(p, q, var)
    return bareiss_determinant(sylvester_matrix(p, q, var))


def discriminant(p: Poly, var, method: str = "bareiss") -> Poly:
    """disc_var(p) = (-1)^(n(n-1)/2) Res(p, dp/dvar) / lc, n = deg_var(p).

    Matches the classical normalization disc(Z^2+aZ+b) = a^2-4b.
    """
    n = p.degree_in(var)
    if n < 2:
        raise PolyError("discriminant needs degree >= 2 in %r" % var)
    dp = p.derivative(var)
    res = resultant(p, dp, var, method=method)
    lc = p.leading_coefficient_in(var)
    sign = -1 if (n * (n - 1) // 2) % 2 == 1 else 1
    return exact_divide(res if sign == 1 else -res, lc)


# -- gcd and squarefree part ----------------------------------------------------

def _split_monomial(p: Poly):
    """Factor out the largest monomial: p = x^e * q with q having no
    variable as a common factor.  Returns (exponent tuple, q)."""
    if p.is_zero():
        return (0,) * len(p.variables), p
    mins = None
    for e in p.terms:
        if mins is None:
            mins = list(e)
        else:
            mins = [min(a, b) for a, b in zip(mins, e)]
    if not any(mins):
        return tuple(mins), p
    q = Poly(p.variables, {tuple(a - b for a, b in zip(e, mins)): c for e, c in p.terms.items()})
    return tuple(mins), q


def _content_in(p: Poly, var):
    """(content, primitive part) of p viewed in (coefficient ring)[var]."""
    coeffs = [c for c in p.coefficients_in(var) if not c.is_zero()]
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = gcd(cont, c)
        if cont.is_constant():
            break
    cont = cont.normalized()
    return cont, exact_divide(p, cont)


def _gcd_prs(a: Poly, b: Poly, var) -> Poly:
    """Subresultant PRS: last nonzero remainder of primitive inputs
    (up to content), assuming deg_var(a) >= deg_var(b) >= 1."""
    ring = a.variables
    g = Poly.one(ring)
    h = Poly.one(ring)
    while True:
        delta = a.degree_in(var) - b.degree_in(var)
        r = pseudo_remainder(a, b, var)
        if r.is_zero():
            return b
        if r.degree_in(var) == 0:
            return Poly.one(ring)
        a, b = b, exact_divide(r, g * h ** delta)
        g = a.leading_coefficient_in(var)
        if delta > 0:
            h = exact_divide(g ** delta, h ** (delta - 1))


def gcd(p: Poly, q: Poly) -> Poly:
    """A gcd, normalized primitive with positive graded-lex leading
    coefficient; gcd(p, 0) is the normalization of p."""
    p._check_same_ring(q)
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    if p.is_constant() or q.is_constant():
        return Poly.one(p.variables)
    ep, p0 = _split_monomial(p)
    eq, q0 = _split_monomial(q)
    shared = tuple(min(a, b) for a, b in zip(ep, eq))
    mono = Poly(p.variables, {shared: Fraction(1)})
    var = None
    for v in p0.variables:
        if p0.involves(v) or q0.involves(v):
            var = v
            break
    if var is None:
        return mono.normalized()
    if not (p0.involves(var) and q0.involves(var)):
        # var appears in only one argument: gcd lives in the coefficient ring
        if p0.involves(var):
            cp, _ = _content_in(p0, var)
            return (mono * gcd(cp, q0)).normalized()
        cq, _ = _content_in(q0, var)
        return (mono * gcd(p0, cq)).normalized()
    cp, pp = _content_in(p0, var)
    cq, qq = _content_in(q0, var)
    c = gcd(cp, cq)
    a, b = pp, qq
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    g = _gcd_prs(a, b, var)
    if not g.is_constant():
        _, g = _content_in(g, var)
    return (mono * c * g).normalized()


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of p, normalized
    (constant content dropped, positive graded-lex leading coefficient)."""
    if p.is_zero():
        raise PolyError("squarefree part of zero")
    if p.is_constant():
        return Poly.one(p.variables)
    exps, q = _split_monomial(p.normalized())
    mono = Poly(p.variables, {tuple(1 if e else 0 for e in exps): Fraction(1)})
    if q.is_constant():
        return mono.normalized()
    g = q
    for v in q.variables:
        if not q.involves(v):
            continue
        g = gcd(g, q.derivative(v))
        if g.is_constant():
            break
    return (mono * exact_divide(q, g)).normalized()


# -- Newton polygon ------------------------------------------------------------

class NewtonPolygon:
    """Lower-left boundary of the support of a bivariate polynomial.

    Points are (base exponent, main exponent).  ``segments`` is a list of
    (slope, (start, end)) with slopes strictly increasing; the candidate
    Puiseux exponent of a segment is -run/rise = -1/slope.
    """

    def __init__(self, segments):
        self.segments = list(segments)

    def exponents(self):
        """Candidate Puiseux exponents, one per segment, increasing."""
        out = []
        for slope, (a, b) in self.segments:
            out.append(Fraction(b[0] - a[0], a[1] - b[1]))
        return out

    def __repr__(self):
        return "NewtonPolygon(%r)" % (self.segments,)


def newton_polygon(p: Poly, base_var, main_var) -> NewtonPolygon:
    """Newton polygon of p with respect to (base, main) variables.

    Requires p nonzero, vanishing at the origin, and effectively
    bivariate in the two named variables.
    """
    if p.is_zero():
        raise PolyError("Newton polygon of the zero polynomial")
    bi = p._index(base_var)
    mi = p._index(main_var)
    for v in p.variables:
        if v not in (base_var, main_var) and p.involves(v):
            raise PolyError("polynomial is not effectively bivariate in (%s, %s)" % (base_var, main_var))
    pts = sorted({(e[bi], e[mi]) for e in p.terms})
    if (0, 0) in pts:
        raise PolyError("polynomial does not vanish at the origin")
    # Pareto frontier (no point dominates another towards the origin)
    frontier = []
    for pt in pts:  # sorted by base exponent, then main
        if any(q[0] <= pt[0] and q[1] <= pt[1] and q != pt for q in pts):
            continue
        frontier.append(pt)
    frontier.sort(key=lambda t: (t[0], -t[1]))
    # lower convex chain over the frontier
    chain = []
    for pt in frontier:
        while len(chain) >= 2:
            (x1, y1), (x2, y2) = chain[-2], chain[-1]
            # keep the chain convex: drop middle point if not below the line
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                chain.pop()
            else:
                break
        chain.append(pt)
    segments = []
    for a, b in zip(chain, chain[1:]):
        slope = Fraction(b[1] - a[1], b[0] - a[0])
        segments.append((slope, (a, b)))
    return NewtonPolygon(segments)
