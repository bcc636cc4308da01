"""Embedded resolution of plane-curve germs by iterated point blowups.

A ResolutionScene is a collection of affine charts over the germ at the
origin.  Each chart carries exact local equations for every divisor
component (the strict transform and the exceptional curves born so far)
together with their multiplicities in the total transform, plus the
composed substitution back to the original coordinates, so the pullback
identity  prod eq_i^{m_i} = f(original coords)  is checkable exactly in
every chart.

Blowup centers must be rational points; germs whose infinitely near
points leave the rationals are rejected rather than approximated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from equising.polynomials import Poly, PolyError, gcd, squarefree_part
from equising.puiseux import (
    PuiseuxError,
    characteristic_data,
    multiplicity_sequence_from_char,
    puiseux_expansions,
)


class ResolutionError(ValueError):
    pass


class NonRationalPoint(ResolutionError):
    """A required point (blowup center or offender) is not rational."""


_CHART_RING = ("x", "z")


def _pt(p):
    return (Fraction(p[0]), Fraction(p[1]))


# -- exact point solving --------------------------------------------------------

def _univariate_in(p: Poly, var):
    """Coefficient list of p as a univariate polynomial in var; requires the
    other variable to be absent."""
    other = [v for v in p.variables if v != var]
    for v in other:
        if p.involves(v):
            raise ResolutionError("not univariate in %s" % var)
    return [c.constant_value() for c in p.coefficients_in(var)]


def _rational_roots_checked(coeffs):
    """All roots of a Q-coefficient list; raises NonRationalPoint unless the
    squarefree part splits into rational linear factors."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ResolutionError("zero polynomial has every root")
    if len(cs) == 1:
        return []
    # squarefree reduction via gcd with the derivative
    der = [cs[i] * i for i in range(1, len(cs))]
    g = _univ_gcd(cs, der)
    sf = _univ_div(cs, g)
    roots = []
    poly = list(sf)
    # strip root 0
    while poly[0] == 0:
        roots.append(Fraction(0))
        poly = poly[1:]
        break
    deg = len(poly) - 1
    found = _try_rational_roots(poly)
    if len(found) != deg:
        raise NonRationalPoint(
            "a required point is not rational (factor of degree %d left)" % (deg - len(found))
        )
    return sorted(set(roots + found))


def _try_rational_roots(poly):
    import math as _m

    den = 1
    for c in poly:
        den = den * c.denominator // _m.gcd(den, c.denominator)
    ints = [int(c * den) for c in poly]
    g = 0
    for v in ints:
        g = _m.gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]

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

    if not ints or ints[0] == 0:
        # roots at zero already stripped by caller
        return []
    found = []
    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0 and cand not in found:
                    found.append(cand)
    return found


def _univ_gcd(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while any(c != 0 for c in b):
        _, r = _univ_divmod(a, b)
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [c / lead for c in a]


def _univ_divmod(num, den):
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    while num and num[-1] == 0:
        num.pop()
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return q, num[: len(den) - 1]


def _univ_div(num, den):
    q, r = _univ_divmod(num, den)
    if any(c != 0 for c in r):
        raise ResolutionError("inexact univariate division")
    return q


def common_points(p: Poly, q: Poly):
    """Rational common zeros of two coprime bivariate polynomials; raises
    NonRationalPoint if a non-rational solution may exist."""
    from equising.polynomials import resultant

    xv, zv = p.variables
    if p.is_constant() or q.is_constant():
        return []
    if not gcd(p, q).is_constant():
        raise ResolutionError("components share a factor")
    pz, qz = p.involves(zv), q.involves(zv)
    points = []
    if not pz and not qz:
        return []  # two curves of vertical lines cannot be coprime and meet
    if not pz or not qz:
        line_poly, other = (p, q) if not pz else (q, p)
        for a in _rational_roots_checked(_univariate_in(line_poly, xv)):
            fiber = other.substitute(
                {xv: Poly.constant(a, p.variables)}
            )
            if fiber.is_zero():
                raise ResolutionError("components share a vertical line")
            if not fiber.involves(zv):
                continue
            for b in _rational_roots_checked(_univariate_in(fiber, zv)):
                points.append((a, b))
        return sorted(set(points))
    r = resultant(p, q, zv)
    if r.is_zero():
        raise ResolutionError("vanishing resultant for coprime components")
    if r.is_constant():
        return []
    for a in _rational_roots_checked(_univariate_in(r, xv)):
        pa = p.substitute({xv: Poly.constant(a, p.variables)})
        qa = q.substitute({xv: Poly.constant(a, p.variables)})
        # one side may contain the whole line x = a; the other side's zeros
        # on the line are then the (finite) common points there
        if pa.is_zero() and qa.is_zero():
            raise ResolutionError("components share a vertical line")
        if pa.is_zero() or qa.is_zero():
            other = qa if pa.is_zero() else pa
            if other.involves(zv):
                for b in _rational_roots_checked(_univariate_in(other, zv)):
                    points.append((a, b))
            continue
        if not pa.involves(zv) or not qa.involves(zv):
            const_side = pa if not pa.involves(zv) else qa
            if const_side.constant_value() != 0:
                continue
            uni = pa if pa.involves(zv) else qa
            for b in _rational_roots_checked(_univariate_in(uni, zv)):
                if p.eval((a, b)) == 0 and q.eval((a, b)) == 0:
                    points.append((a, b))
            continue
        ga = _univ_gcd(_univariate_in(pa, zv), _univariate_in(qa, zv))
        if len(ga) <= 1:
            continue
        for b in _rational_roots_checked(ga):
            points.append((a, b))
    return sorted(set(points))


def _roots_on_axis(p: Poly, axis_var, moving_var):
    """Rational points of {p = 0} on the line {axis_var = 0}."""
    zero = Poly.zero(p.variables)
    fiber = p.substitute({axis_var: zero})
    if fiber.is_zero():
        raise ResolutionError("curve contains the axis %s = 0" % axis_var)
    if not fiber.involves(moving_var):
        return []
    xv, zv = p.variables
    out = []
    for b in _rational_roots_checked(_univariate_in(fiber, moving_var)):
        out.append((Fraction(0), b) if axis_var == xv else (b, Fraction(0)))
    return out


def singular_points(p: Poly):
    """Rational singular points of the curve p = 0 (p squarefree).

    Shared monomial factors of the two partial derivatives (lines through
    the origin in the gradient ideal) are handled by restricting to the
    coordinate axes; any other shared positive-dimensional locus is
    rejected loudly.
    """
    from equising.polynomials import _split_monomial

    xv, zv = p.variables
    if p.is_constant() or p.total_degree() <= 1:
        return []
    px = p.derivative(xv)
    pz = p.derivative(zv)
    if px.is_zero() and pz.is_zero():
        raise ResolutionError("zero gradient field: non-reduced component")
    for d in (px, pz):
        if d.is_constant() and not d.is_zero():
            return []
    if px.is_zero() or pz.is_zero():
        # p effectively univariate and squarefree: no singular points
        return []
    (ax, az), px0 = _split_monomial(px)
    (bx, bz), pz0 = _split_monomial(pz)
    cands = set()
    if not px0.is_constant() and not pz0.is_constant():
        g = gcd(px0, pz0)
        if not g.is_constant():
            raise ResolutionError("gradient components share a curve")
        cands.update(common_points(px0, pz0))
    # axis pieces: where a monomial factor of one derivative vanishes,
    # the singular points on that axis are the common univariate roots of
    # the restrictions of p and both derivatives
    for var, other_var, has in (((xv, zv, ax > 0 or bx > 0)), ((zv, xv, az > 0 or bz > 0))):
        if not has:
            continue
        zero = Poly.zero(p.variables)
        fibers = []
        for q in (p, px, pz):
            qf = q.substitute({var: zero})
            if not qf.is_zero():
                if not qf.involves(other_var):
                    if qf.constant_value() != 0:
                        fibers = None
                        break
                    continue
                fibers.append(_univariate_in(qf, other_var))
        if fibers is None or not fibers:
            continue
        g = fibers[0]
        for h in fibers[1:]:
            g = _univ_gcd(g, h)
        if len(g) <= 1:
            continue
        for b in _rational_roots_checked(g):
            pt = (Fraction(0), b) if var == xv else (b, Fraction(0))
            cands.add(pt)
    return sorted(pt for pt in cands if p.eval(pt) == 0)


# -- charts and scenes -----------------------------------------------------------

@dataclass
class Chart:
    id: int
    kind: str  # "root" | "A" | "B"
    parent: Optional[int]
    sibling: Optional[int]
    center: Optional[tuple]  # blowup center in parent coordinates
    components: dict  # label -> (eq Poly in (x, z), multiplicity int)
    map_x: Poly  # original X in chart coordinates
    map_z: Poly  # original Z in chart coordinates
    consumed: list = field(default_factory=list)  # centers blown up here
    exceptional_var: Optional[str] = None  # coordinate cutting the newest E here

    def labels_at(self, pt):
        return [
            label
            for label, (eq, _) in sorted(self.components.items())
            if not eq.is_constant() and eq.eval(pt) == 0
        ]

    def total_transform(self) -> Poly:
        total = Poly.one(_CHART_RING)
        for label, (eq, mult) in sorted(self.components.items()):
            total = total * eq ** mult
        return total


@dataclass
class SceneHistoryEntry:
    step: int
    chart: int
    point: tuple
    component_multiplicities: dict
    strict_multiplicity: int


@dataclass
class ResolutionScene:
    f: Poly
    charts: dict
    component_kinds: dict  # label -> "strict" | "exceptional"
    birth_step: dict  # exceptional label -> step
    self_intersections: dict  # exceptional label -> int
    history: list
    next_chart_id: int
    lc_scalar: Fraction = Fraction(1)

    @classmethod
    def initial(cls, f: Poly, factors=None) -> "ResolutionScene":
        """Scene of the germ {f = 0} at the origin of the (x, z)-plane.

        ``factors`` may list known coprime factors of f (each squarefree);
        by default the whole f is one strict component labelled C.
        """
        if len(f.variables) != 2:
            raise ResolutionError("resolution needs a bivariate polynomial")
        fx = f.rename_variables(_CHART_RING) if f.variables != _CHART_RING else f
        if fx.eval((0, 0)) != 0:
            raise ResolutionError("the germ must pass through the origin")
        if squarefree_part(fx).normalized() != fx.normalized():
            raise ResolutionError("f must be squarefree")
        comps = {}
        scalar = Fraction(1)
        if factors is None:
            comps["C"] = (fx, 1)
        else:
            prod = Poly.one(_CHART_RING)
            for i, g in enumerate(factors):
                gx = g.rename_variables(_CHART_RING) if g.variables != _CHART_RING else g
                label = "C%d" % (i + 1) if len(factors) > 1 else "C"
                comps[label] = (gx, 1)
                prod = prod * gx
            from equising.polynomials import exact_divide

            ratio = exact_divide(fx, prod)
            if not ratio.is_constant():
                raise ResolutionError("factors do not multiply to f")
            scalar = ratio.constant_value()
        root = Chart(
            id=0,
            kind="root",
            parent=None,
            sibling=None,
            center=None,
            components=comps,
            map_x=Poly.variable("x", _CHART_RING),
            map_z=Poly.variable("z", _CHART_RING),
        )
        return cls(
            f=fx,
            charts={0: root},
            component_kinds={label: "strict" for label in comps},
            birth_step={},
            self_intersections={},
            history=[],
            next_chart_id=1,
            lc_scalar=scalar,
        )

    # -- point identity ----------------------------------------------------

    def canonical_point(self, chart_id: int, pt):
        """Canonical (chart, point) address of a surface point.

        Points off the newest exceptional curve belong to the parent chart;
        on it, the A-chart owns everything except the B-origin.
        """
        pt = _pt(pt)
        chart = self.charts[chart_id]
        if chart.kind == "root":
            return (chart_id, pt)
        a, b = chart.center
        x, z = pt
        if chart.kind == "A":
            if x != 0:
                return self.canonical_point(chart.parent, (a + x, b + x * z))
            return (chart_id, pt)
        if z != 0:
            return self.canonical_point(chart.parent, (a + x * z, b + z))
        if x != 0:
            return (chart.sibling, (Fraction(0), 1 / x))
        return (chart_id, pt)

    def consumed_points(self):
        return {
            (cid, _pt(p)) for cid, chart in self.charts.items() for p in chart.consumed
        }

    # -- blowup -------------------------------------------------------------

    def blowup_point(self, chart_id: int, center) -> "ResolutionScene":
        """Blow up a rational point of the total transform; returns the new
        scene with two new charts and a new exceptional component."""
        center = _pt(center)
        chart = self.charts[chart_id]
        if not chart.labels_at(center):
            raise ResolutionError("center %r is off the divisor" % (center,))
        if center in [_pt(c) for c in chart.consumed]:
            raise ResolutionError("center %r was already blown up" % (center,))
        step = len(self.history) + 1
        new_label = "E%d" % (len(self.birth_step) + 1)
        a, b = center
        x = Poly.variable("x", _CHART_RING)
        z = Poly.variable("z", _CHART_RING)
        ca = Poly.constant(a, _CHART_RING)
        cb = Poly.constant(b, _CHART_RING)
        subs_a = {"x": ca + x, "z": cb + x * z}
        subs_b = {"x": ca + x * z, "z": cb + z}

        mults = {}
        comps_a = {}
        comps_b = {}
        e_mult = 0
        strict_mult = 0
        for label, (eq, mult) in sorted(chart.components.items()):
            mu = Fraction(0)
            shifted = eq.shift(center)
            mu = shifted.order() if shifted.eval((0, 0)) == 0 else 0
            if mu < 0:
                mu = 0
            mults[label] = mu
            e_mult += mult * mu
            if self.component_kinds[label] == "strict":
                strict_mult += mu
            eq_a = eq.substitute(subs_a)
            eq_b = eq.substitute(subs_b)
            sa = _divide_power(eq_a, "x", mu)
            sb = _divide_power(eq_b, "z", mu)
            if not sa.is_constant():
                comps_a[label] = (sa, mult)
            if not sb.is_constant():
                comps_b[label] = (sb, mult)
        comps_a[new_label] = (x, e_mult)
        comps_b[new_label] = (z, e_mult)

        id_a = self.next_chart_id
        id_b = self.next_chart_id + 1
        chart_a = Chart(
            id=id_a,
            kind="A",
            parent=chart_id,
            sibling=id_b,
            center=center,
            components=comps_a,
            map_x=chart.map_x.substitute(subs_a),
            map_z=chart.map_z.substitute(subs_a),
            exceptional_var="x",
        )
        chart_b = Chart(
            id=id_b,
            kind="B",
            parent=chart_id,
            sibling=id_a,
            center=center,
            components=comps_b,
            map_x=chart.map_x.substitute(subs_b),
            map_z=chart.map_z.substitute(subs_b),
            exceptional_var="z",
        )
        charts = dict(self.charts)
        charts[chart_id] = Chart(
            id=chart.id,
            kind=chart.kind,
            parent=chart.parent,
            sibling=chart.sibling,
            center=chart.center,
            components=chart.components,
            map_x=chart.map_x,
            map_z=chart.map_z,
            consumed=chart.consumed + [center],
            exceptional_var=chart.exceptional_var,
        )
        charts[id_a] = chart_a
        charts[id_b] = chart_b

        self_ints = dict(self.self_intersections)
        for label, kind in self.component_kinds.items():
            if kind == "exceptional" and label in chart.components:
                eq, _ = chart.components[label]
                if not eq.is_constant() and eq.eval(center) == 0:
                    self_ints[label] -= 1
        self_ints[new_label] = -1

        kinds = dict(self.component_kinds)
        kinds[new_label] = "exceptional"
        births = dict(self.birth_step)
        births[new_label] = step

        history = self.history + [
            SceneHistoryEntry(
                step=step,
                chart=chart_id,
                point=center,
                component_multiplicities=mults,
                strict_multiplicity=strict_mult,
            )
        ]
        return ResolutionScene(
            f=self.f,
            charts=charts,
            component_kinds=kinds,
            birth_step=births,
            self_intersections=self_ints,
            history=history,
            next_chart_id=id_b + 1,
            lc_scalar=self.lc_scalar,
        )

    # -- invariants -----------------------------------------------------------

    def verify_pullback(self) -> bool:
        """Total transform equals the pullback of f in every chart."""
        for chart in self.charts.values():
            total = chart.total_transform() * Poly.constant(self.lc_scalar, _CHART_RING)
            pulled = self.f.substitute({"x": chart.map_x, "z": chart.map_z})
            if total != pulled:
                return False
        return True

    # -- offender detection ------------------------------------------------------

    def _chart_candidates(self, chart: Chart):
        comps = [
            (label, eq)
            for label, (eq, _) in sorted(chart.components.items())
            if not eq.is_constant()
        ]
        pts = set()
        if chart.kind == "root":
            pts.add((Fraction(0), Fraction(0)))
            for label, eq in comps:
                pts.update(singular_points(eq))
            for i in range(len(comps)):
                for j in range(i + 1, len(comps)):
                    pts.update(common_points(comps[i][1], comps[j][1]))
            return pts
        # non-root charts: only points on an exceptional curve are new
        exc = [
            (label, eq)
            for label, eq in comps
            if self.component_kinds[label] == "exceptional"
        ]
        for elabel, eeq in exc:
            for label, eq in comps:
                if label == elabel:
                    continue
                pts.update(common_points(eeq, eq))
        for label, eq in comps:
            if self.component_kinds[label] == "strict":
                for pt in singular_points(eq):
                    if any(eeq.eval(pt) == 0 for _, eeq in exc):
                        pts.add(pt)
        return pts

    def _offense_at(self, chart: Chart, pt) -> bool:
        labels = chart.labels_at(pt)
        if len(labels) >= 3:
            return True
        grads = []
        for label in labels:
            eq, _ = chart.components[label]
            g = [d.eval(pt) for d in eq.gradient()]
            if all(v == 0 for v in g):
                return True
            grads.append(g)
        if len(labels) == 2:
            det = grads[0][0] * grads[1][1] - grads[0][1] * grads[1][0]
            if det == 0:
                return True
        return False

    def offenders(self):
        """Canonical list of points where normal crossings fails.

        Scope is the germ: the origin of the base chart plus every point of
        the exceptional locus.
        """
        consumed = self.consumed_points()
        seen = {}
        for cid, chart in sorted(self.charts.items()):
            for pt in self._chart_candidates(chart):
                addr = self.canonical_point(cid, pt)
                if addr in consumed or addr in seen:
                    continue
                achart = self.charts[addr[0]]
                if self._offense_at(achart, addr[1]):
                    badness = 0
                    for label, (eq, _) in achart.components.items():
                        if eq.is_constant():
                            continue
                        shifted = eq.shift(addr[1])
                        if shifted.eval((0, 0)) == 0:
                            badness += shifted.order()
                    seen[addr] = badness
        return [
            (addr[0], addr[1], bad)
            for addr, bad in sorted(
                seen.items(), key=lambda kv: (-kv[1], kv[0][0], kv[0][1])
            )
        ]

    def is_normal_crossings(self):
        offs = self.offenders()
        return (len(offs) == 0, [(cid, pt) for cid, pt, _ in offs])

    # -- intersections and the dual graph --------------------------------------

    def component_intersections(self):
        """Map frozenset({label1, label2}) -> set of canonical points."""
        consumed = self.consumed_points()
        out = {}
        for cid, chart in sorted(self.charts.items()):
            comps = [
                (label, eq)
                for label, (eq, _) in sorted(chart.components.items())
                if not eq.is_constant()
            ]
            for i in range(len(comps)):
                for j in range(i + 1, len(comps)):
                    li, ei = comps[i]
                    lj, ej = comps[j]
                    for pt in common_points(ei, ej):
                        addr = self.canonical_point(cid, pt)
                        if addr in consumed:
                            continue
                        achart = self.charts[addr[0]]
                        if li in achart.labels_at(addr[1]) and lj in achart.labels_at(addr[1]):
                            out.setdefault(frozenset((li, lj)), set()).add(addr)
        return out


def _divide_power(p: Poly, var, k) -> Poly:
    if k == 0:
        return p
    i = p._index(var)
    if any(e[i] < k for e in p.terms):
        raise ResolutionError("pullback not divisible by %s^%d" % (var, k))
    return Poly(p.variables, {tuple(
        ee - k if pos == i else ee for pos, ee in enumerate(e)
    ): c for e, c in p.terms.items()})


# -- dual graph --------------------------------------------------------------------

@dataclass
class DualGraph:
    """Vertices are divisor components with self-intersection labels; edges
    carry intersection counts.  The strict transform's self-intersection is
    0 by convention (it is not compact in the germ picture)."""

    vertices: list  # (label, self_intersection)
    edges: dict  # frozenset({l1, l2}) -> multiplicity

    def matrix(self):
        order = [label for label, _ in self.vertices]
        idx = {label: i for i, label in enumerate(order)}
        n = len(order)
        m = [[0] * n for _ in range(n)]
        for label, s in self.vertices:
            m[idx[label]][idx[label]] = s
        for pair, mult in self.edges.items():
            l1, l2 = sorted(pair)
            m[idx[l1]][idx[l2]] = mult
            m[idx[l2]][idx[l1]] = mult
        return order, m

    def exceptional_block(self):
        order, m = self.matrix()
        keep = [i for i, label in enumerate(order) if label.startswith("E")]
        return [label for i, label in enumerate(order) if i in keep], [
            [m[i][j] for j in keep] for i in keep
        ]

    def to_dot(self) -> str:
        lines = ["graph dual {"]
        for label, s in self.vertices:
            lines.append('  "%s" [label="%s (%d)"];' % (label, label, s))
        for pair, mult in sorted(self.edges.items(), key=lambda kv: sorted(kv[0])):
            l1, l2 = sorted(pair)
            attr = ' [label="%d"]' % mult if mult > 1 else ""
            lines.append('  "%s" -- "%s"%s;' % (l1, l2, attr))
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_graph(scene: ResolutionScene) -> DualGraph:
    strict = sorted(l for l, k in scene.component_kinds.items() if k == "strict")
    exc = sorted(
        (l for l, k in scene.component_kinds.items() if k == "exceptional"),
        key=lambda l: scene.birth_step[l],
    )
    vertices = [(l, 0) for l in strict] + [
        (l, scene.self_intersections[l]) for l in exc
    ]
    edges = {
        pair: len(pts) for pair, pts in scene.component_intersections().items()
    }
    return DualGraph(vertices=vertices, edges=edges)


def is_negative_definite(matrix) -> bool:
    """Exact Sylvester criterion for -M positive definite: leading principal
    minors of M alternate in sign starting negative."""
    n = len(matrix)
    from fractions import Fraction as F

    for k in range(1, n + 1):
        sub = [[F(matrix[i][j]) for j in range(k)] for i in range(k)]
        det = _det_fraction(sub)
        if det == 0 or (det > 0) != (k % 2 == 0):
            return False
    return True


def _det_fraction(m):
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


# -- the resolution loop --------------------------------------------------------------

def embedded_resolve(f: Poly, max_steps: int = 64, factors=None):
    """Resolve the germ {f = 0} at the origin to normal crossings of the
    total transform by blowing up the worst offending point first
    (highest local multiplicity of the reduced total transform, ties by
    chart order).  Returns (scene, dual graph)."""
    scene = ResolutionScene.initial(f, factors=factors)
    for _ in range(max_steps):
        offs = scene.offenders()
        if not offs:
            return scene, dual_graph(scene)
        cid, pt, _bad = offs[0]
        scene = scene.blowup_point(cid, pt)
    raise ResolutionError("blowup budget (%d) exceeded" % max_steps)


def contract_minimal(graph: DualGraph) -> DualGraph:
    """Contract (-1) exceptional curves meeting at most two other
    components at single points on distinct components; repeats until no
    such curve remains.  Graph-level post-pass only."""
    vertices = dict(graph.vertices)
    edges = {pair: m for pair, m in graph.edges.items()}
    changed = True
    while changed:
        changed = False
        for label, s in sorted(vertices.items()):
            if not label.startswith("E") or s != -1:
                continue
            incident = [(pair, m) for pair, m in edges.items() if label in pair]
            total_pts = sum(m for _, m in incident)
            if total_pts > 2 or any(m > 1 for _, m in incident):
                continue
            neighbors = [next(iter(pair - {label})) for pair, _ in incident]
            if len(set(neighbors)) != len(neighbors):
                continue
            # contract: neighbors gain +1 self-intersection, and the two
            # neighbors (if two) now meet each other
            del vertices[label]
            for pair, _ in incident:
                del edges[pair]
            for nb in neighbors:
                if nb in vertices:
                    vertices[nb] = vertices[nb] + (1 if nb.startswith("E") else 0)
            if len(neighbors) == 2:
                key = frozenset(neighbors)
                edges[key] = edges.get(key, 0) + 1
            changed = True
            break
    ordered = [(l, s) for l, s in graph.vertices if l in vertices]
    ordered = [(l, vertices[l]) for l, _ in ordered]
    return DualGraph(vertices=ordered, edges=edges)


# -- multiplicity sequences: the two independent paths ---------------------------------

def multiplicity_sequence_from_blowups(f: Poly, max_steps: int = 64):
    """Multiplicities of the strict transform at the successive blowup
    centers of the embedded resolution (centers off the strict transform
    are skipped)."""
    scene, _ = embedded_resolve(f, max_steps=max_steps)
    return tuple(
        h.strict_multiplicity for h in scene.history if h.strict_multiplicity >= 1
    )


def predicted_multiplicity_sequence(f: Poly, x_var=None, z_var=None):
    """Multiplicity sequence of the germ predicted from characteristic
    exponents (plus inter-branch contact for two smooth branches).

    Supported shapes: a single branch (classical Euclidean expansion of
    the Puiseux characteristic), or two smooth branches with integer
    contact order c (sequence (2,)*c).  Anything else raises.
    """
    branches, chardata = characteristic_data(f, x_var=x_var, z_var=z_var)
    if len(branches) == 1:
        return chardata[0].mult_sequence
    if len(branches) == 2 and all(not cd.char_exponents for cd in chardata):
        b1, b2 = branches
        if b1.ramification != 1 or b2.ramification != 1:
            raise PuiseuxError("unsupported branch configuration")
        contact = None
        for c1 in b1.conjugates():
            for c2 in b2.conjugates():
                exps = set(c1.support()) | set(c2.support())
                diff_order = None
                for e in sorted(exps):
                    if c1.coefficient(e) != c2.coefficient(e):
                        diff_order = e
                        break
                if diff_order is None:
                    raise PuiseuxError("branches agree to truncation")
                contact = diff_order if contact is None or diff_order > contact else contact
        if contact.denominator != 1 or contact < 1:
            raise PuiseuxError("unsupported contact order %s" % contact)
        return (2,) * int(contact)
    raise PuiseuxError(
        "characteristic-derived sequence implemented for one branch or two smooth branches"
    )
