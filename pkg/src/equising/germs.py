"""Hypersurface germs: multiplicity, smoothness, arcs, Whitney arc tests.

A germ is a defining polynomial together with a rational base point.  A
germ whose polynomial does not vanish at the base point is the *empty*
germ (the zero set has no points near the base point); it is legal and
carries dimensionality type -1 downstream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Sequence

from equising.polynomials import Poly, PolyError, parse


class GermError(ValueError):
    pass


def _point(values) -> tuple:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class Germ:
    """A hypersurface germ (V, x): V = {f = 0} near the rational point x."""

    f: Poly
    point: tuple

    def __post_init__(self):
        if self.f.is_zero():
            raise GermError("germ polynomial must be nonzero")
        object.__setattr__(self, "point", _point(self.point))
        if len(self.point) != len(self.f.variables):
            raise GermError("base point has wrong dimension")

    @property
    def ambient_dim(self) -> int:
        return len(self.f.variables)

    @property
    def is_empty(self) -> bool:
        """True when the base point is off the hypersurface."""
        return self.f.eval(self.point) != 0

    @property
    def at_origin(self) -> bool:
        return all(c == 0 for c in self.point)

    def translate_to_origin(self) -> "Germ":
        """Move the base point to the origin: f(x) -> f(x + point)."""
        if self.at_origin:
            return self
        return Germ(self.f.shift(self.point), (0,) * self.ambient_dim)

    def multiplicity(self) -> int:
        """Order of vanishing at the base point.  By convention 0 when the
        base point is off the hypersurface (empty germ)."""
        if self.is_empty:
            return 0
        return self.translate_to_origin().f.order()

    def is_smooth(self) -> bool:
        """Smoothness at the base point (f assumed squarefree): the gradient
        does not vanish, equivalently multiplicity 1."""
        if self.is_empty:
            raise GermError("base point is off the hypersurface")
        return self.multiplicity() == 1


@dataclass(frozen=True)
class LinearChange:
    """An invertible linear change of coordinates, stored as the matrix M
    with old_i = sum_j M[i][j] * new_j."""

    variables: tuple
    matrix: tuple  # rows of Fractions

    def bindings(self):
        ring = self.variables
        out = {}
        for i, v in enumerate(ring):
            img = Poly.zero(ring)
            for j, w in enumerate(ring):
                c = self.matrix[i][j]
                if c:
                    img = img + Poly.constant(c, ring) * Poly.variable(w, ring)
            out[v] = img
        return out

    def apply(self, p: Poly) -> Poly:
        return p.substitute(self.bindings())

    @property
    def is_identity(self) -> bool:
        n = len(self.variables)
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )

    @classmethod
    def identity(cls, variables):
        n = len(variables)
        rows = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
        )
        return cls(tuple(variables), rows)


def _has_pure_power(f: Poly, var, m: int) -> bool:
    i = f._index(var)
    for e, _ in f.terms.items():
        if e[i] == m and sum(e) == m:
            return True
    return False


def regularize(germ: Germ, main_var, seed: int = 0, budget: int = 32):
    """Make f regular of order = multiplicity in ``main_var``.

    Applies a seeded random small-integer shear x_j -> x_j + a_j * main_var
    (identity tried first) until f contains the pure term main_var^m with
    m = multiplicity(germ).  Returns (new germ, LinearChange applied).
    """
    g = germ.translate_to_origin()
    f = g.f
    ring = f.variables
    if main_var not in ring:
        raise GermError("unknown main variable %r" % main_var)
    m = g.multiplicity()
    if m == 0:
        raise GermError("cannot regularize an empty germ")
    if _has_pure_power(f, main_var, m):
        return g, LinearChange.identity(ring)
    rng = random.Random(seed)
    n = len(ring)
    main_idx = ring.index(main_var)
    for _ in range(budget):
        coeffs = [rng.randint(-9, 9) for _ in range(n)]
        rows = []
        for i in range(n):
            row = [Fraction(1 if i == j else 0) for j in range(n)]
            if i != main_idx:
                row[main_idx] = Fraction(coeffs[i])
            rows.append(tuple(row))
        change = LinearChange(ring, tuple(rows))
        f2 = change.apply(f)
        if _has_pure_power(f2, main_var, m):
            return Germ(f2, g.point), change
    raise GermError("regularization retry budget exhausted for %r" % main_var)


# -- arcs ---------------------------------------------------------------------

ARC_PARAM = "t"


@dataclass(frozen=True)
class Arc:
    """A polynomial arc t -> (c_1(t), ..., c_n(t)).

    Fractional-power arcs are represented by clearing denominators through
    the substitution t -> t^ramification; the recorded ramification keeps
    track of the reparametrization.
    """

    components: tuple
    ramification: int = 1

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise GermError("arc needs at least one component")
        for c in comps:
            if not isinstance(c, Poly) or c.variables != (ARC_PARAM,):
                raise GermError("arc components must be univariate polynomials in %r" % ARC_PARAM)
        if self.ramification < 1:
            raise GermError("ramification must be >= 1")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_strings(cls, exprs: Sequence[str], ramification: int = 1) -> "Arc":
        return cls(tuple(parse(e, [ARC_PARAM]) for e in exprs), ramification)

    def __call__(self, t0) -> tuple:
        t0 = Fraction(t0)
        return tuple(c.eval((t0,)) for c in self.components)

    def start(self) -> tuple:
        return self(0)


def parse_arc(text: str) -> Arc:
    """Parse 'expr, expr, ... [, ram=k]' into an Arc."""
    parts = [p.strip() for p in text.split(",")]
    ram = 1
    if parts and parts[-1].startswith("ram="):
        ram = int(parts[-1][4:])
        parts = parts[:-1]
    return Arc.from_strings(parts, ram)


@dataclass(frozen=True)
class WhitneyVerdict:
    """Result of an arc-based Whitney test.

    ``holds`` is true exactly when the limiting secant direction lies in
    the limiting tangent plane, i.e. is orthogonal to the limiting normal.
    """

    limit_tangent_normal: tuple
    limit_secant_direction: tuple
    holds: bool


def _series_limit_direction(vector, what: str) -> tuple:
    """Projectivized lowest-order coefficient vector of a tuple of
    univariate polynomials in t."""
    orders = [c.order() for c in vector]
    finite = [o for o in orders if o >= 0]
    if not finite:
        raise GermError("limit of %s does not exist: all components vanish" % what)
    m = min(finite)
    t_idx = 0
    coeffs = []
    for c in vector:
        val = Fraction(0)
        for e, coef in c.terms.items():
            if e[t_idx] == m:
                val = coef
        coeffs.append(val)
    return _projectivize(coeffs)


def _projectivize(coeffs) -> tuple:
    """Scale to a primitive integer vector whose first nonzero entry is
    positive: the deterministic representative of the direction."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    if g == 0:
        raise GermError("zero vector has no direction")
    ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(Fraction(v) for v in ints)


def whitney_arc_test(germ: Germ, y_arc: Arc, z_arc: Arc, order: int = 16) -> WhitneyVerdict:
    """Arc-based Whitney condition test at germ.point.

    ``z_arc`` must lie on V = {f = 0} (checked as a series to the given
    truncation order) and both arcs must pass through the base point at
    t = 0.  Computes the limits of the tangent-plane normal along z and of
    the secant direction z - y, and reports whether the limit plane
    contains the limit line.

    This is a necessary-condition checker on user-supplied arcs, not a
    decision procedure for the full Whitney condition.
    """
    f = germ.f
    n = germ.ambient_dim
    if len(y_arc.components) != n or len(z_arc.components) != n:
        raise GermError("arc dimension does not match the ambient space")
    if y_arc.start() != germ.point or z_arc.start() != germ.point:
        raise GermError("arcs must pass through the base point at t=0")
    ring_t = (ARC_PARAM,)
    z_bind = {v: c for v, c in zip(f.variables, z_arc.components)}
    on_v = f.substitute(z_bind)
    if not on_v.is_zero() and on_v.order() <= order:
        raise GermError(
            "z arc is not on the hypersurface to order %d (f(z(t)) has order %d)"
            % (order, on_v.order())
        )
    grad = [d.substitute(z_bind) for d in f.gradient()]
    secant = [
        zc - yc for zc, yc in zip(z_arc.components, y_arc.components)
    ]
    normal = _series_limit_direction(grad, "the tangent normals")
    direction = _series_limit_direction(secant, "the secant lines")
    dot = sum(a * b for a, b in zip(normal, direction))
    return WhitneyVerdict(normal, direction, dot == 0)


def equimultiplicity_scan(f: Poly, curve: Arc, samples: Sequence) -> list:
    """Multiplicity of the germ of {f=0} at curve(t) for each sample t.

    Every sampled point must lie on the hypersurface.
    """
    out = []
    for t0 in samples:
        p = curve(Fraction(t0))
        if f.eval(p) != 0:
            raise GermError("sample point %r is off the hypersurface" % (p,))
        out.append((p, Germ(f, p).multiplicity()))
    return out
