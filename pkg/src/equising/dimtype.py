"""Zariski dimensionality type via discriminants of sampled projections.

The recursion: dt = -1 on empty germs, 0 on smooth germs, and otherwise
1 + dt of the discriminant germ of a generic linear projection to one
dimension lower.  "Generic" is approximated by majority vote over several
seeded integer projections; disagreement is reported, never hidden.

Discriminant germs are always reduced to their squarefree part, so the
node and the cusp both produce the smooth discriminant germ {u=0} and get
dimensionality type 1.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from equising.germs import Germ, GermError
from equising.polynomials import (
    Poly,
    PolyError,
    discriminant,
    gcd,
    squarefree_part,
)


class DtError(ValueError):
    pass


def _matrix_rank(rows) -> int:
    """Exact rank of a matrix of Fractions by Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= factor * m[row][c]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def _invert_matrix(rows):
    """Exact inverse of a square Fraction matrix."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise DtError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class LinearMap:
    """A rank-d linear projection C^(d+1) -> C^d given by integer rows."""

    matrix: tuple  # d rows of d+1 Fractions

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        d = len(rows)
        if d < 1 or any(len(r) != d + 1 for r in rows):
            raise DtError("projection matrix must be d x (d+1)")
        if _matrix_rank(rows) != d:
            raise DtError("projection matrix must have full rank")

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def to_jsonable(self):
        return [[int(x) if x.denominator == 1 else str(x) for x in row] for row in self.matrix]


def sample_projection(d: int, seed: int) -> LinearMap:
    """Deterministic-in-seed random projection with small integer entries."""
    if d < 1:
        raise DtError("target dimension must be >= 1")
    rng = random.Random(seed)
    while True:
        rows = tuple(
            tuple(Fraction(rng.randint(-9, 9)) for _ in range(d + 1)) for _ in range(d)
        )
        if _matrix_rank(rows) == d:
            return LinearMap(rows)


def _fresh_ring(d: int):
    return tuple("u%d" % (i + 1) for i in range(d)) + ("z0",)


def _change_of_coordinates(proj: LinearMap):
    """Extend proj to an invertible square matrix by appending a unit row."""
    d = proj.target_dim
    for k in range(d + 1):
        row = tuple(Fraction(1 if j == k else 0) for j in range(d + 1))
        rows = proj.matrix + (row,)
        if _matrix_rank(rows) == d + 1:
            return rows
    raise DtError("could not complete the projection to a coordinate change")


def discriminant_germ(germ: Germ, proj: LinearMap) -> Germ:
    """The discriminant germ of the projection of (V, 0) along proj's kernel.

    Rewrites f in coordinates (u_1, ..., u_d, z0) where u = proj(x), checks
    that the kernel direction is a valid Weierstrass direction (no degree
    drop at 0, kernel not in the tangent cone, simple far sheets over 0),
    then returns the squarefree zero germ of the z0-discriminant at the
    origin of C^d.  Raises DtError on a degenerate projection.
    """
    g = germ.translate_to_origin()
    if g.is_empty:
        raise DtError("discriminant germ of an empty germ")
    f = g.f
    d = proj.target_dim
    if d + 1 != g.ambient_dim:
        raise DtError("projection dimension does not match the germ")
    m = g.multiplicity()
    if m < 2:
        raise DtError("discriminant germ requires a singular germ")
    square = _change_of_coordinates(proj)
    inverse = _invert_matrix(square)
    new_ring = _fresh_ring(d)
    new_vars = [Poly.variable(v, new_ring) for v in new_ring]
    bindings = {}
    for i, old_name in enumerate(f.variables):
        img = Poly.zero(new_ring)
        for j in range(d + 1):
            c = inverse[i][j]
            if c:
                img = img + Poly.constant(c, new_ring) * new_vars[j]
        bindings[old_name] = img
    f_new = f.substitute(bindings)
    zvar = new_ring[-1]

    # Weierstrass-direction checks; all depend only on the kernel of proj.
    restriction = f_new.substitute(
        {u: Poly.zero(new_ring) for u in new_ring[:-1]}
    )
    if restriction.is_zero():
        raise DtError("kernel direction lies inside the hypersurface")
    dz = f_new.degree_in(zvar)
    if restriction.degree_in(zvar) != dz:
        raise DtError("projection degenerate: z-degree drops over the origin")
    r_coeffs = restriction.coefficients_in(zvar)
    ordz = next(i for i, c in enumerate(r_coeffs) if not c.is_zero())
    if ordz != m:
        raise DtError("projection degenerate: kernel direction in the tangent cone")
    cofactor = Poly.from_coefficients(r_coeffs[m:], zvar)
    if cofactor.degree_in(zvar) >= 1:
        if not gcd(cofactor, cofactor.derivative(zvar)).is_constant():
            raise DtError("projection degenerate: repeated far sheet over the origin")

    disc = discriminant(f_new, zvar).drop_variable(zvar)
    if disc.is_zero():
        raise DtError("identically zero discriminant: non-reduced input germ")
    delta = squarefree_part(disc)
    return Germ(delta, (0,) * d)


@dataclass
class DtReport:
    """Outcome of the dimensionality-type recursion at one germ.

    value: -1 for empty, 0 for smooth, else 1 + majority sub-value.
    per_projection: (seed, projection, sub-value) for each sampled map.
    agreed: all sampled projections produced the same value.
    depth_trace: the nested reports, one per projection.
    """

    value: int
    agreed: bool = True
    per_projection: list = field(default_factory=list)
    depth_trace: list = field(default_factory=list)

    def to_jsonable(self):
        return {
            "value": self.value,
            "agreed": self.agreed,
            "projections": [
                {
                    "seed": seed,
                    "matrix": proj.to_jsonable() if proj is not None else None,
                    "value": val,
                }
                for seed, proj, val in self.per_projection
            ],
            "trace": [t.to_jsonable() for t in self.depth_trace],
        }


_PROJECTION_RETRIES = 32


def dimensionality_type(
    germ: Germ, samples: int = 5, seed: int = 42, budget: int | None = None
) -> DtReport:
    """Estimate dt(V, x) by the discriminant recursion over sampled
    projections.

    The input polynomial is reduced to its squarefree part before the
    recursion starts; discriminant germs are squarefree by construction,
    so a non-reduced germ at positive depth is an internal error.
    """
    if samples < 1:
        raise DtError("need at least one sample")
    g = germ.translate_to_origin()
    if g.is_empty:
        return DtReport(value=-1)
    reduced = squarefree_part(g.f)
    g = Germ(reduced, g.point)
    if budget is None:
        budget = g.ambient_dim + 1
    return _dt_recurse(g, samples, seed, 0, budget)


def _dt_recurse(g: Germ, samples: int, seed: int, depth: int, budget: int) -> DtReport:
    if depth > budget:
        raise DtError("recursion depth budget exceeded")
    if g.is_empty:
        return DtReport(value=-1)
    if g.is_smooth():
        return DtReport(value=0)
    d = g.ambient_dim - 1
    per = []
    traces = []
    for k in range(samples):
        base = seed * 1_000_003 + depth * 8191 + k * 127
        delta = None
        proj = None
        used_seed = None
        for attempt in range(_PROJECTION_RETRIES):
            cand_seed = base + attempt * 7_919
            cand = sample_projection(d, cand_seed)
            try:
                delta = discriminant_germ(g, cand)
                proj = cand
                used_seed = cand_seed
                break
            except DtError:
                continue
        if delta is None:
            raise DtError("all sampled projections degenerate at depth %d" % depth)
        sub = _dt_recurse(delta, samples, used_seed + 1, depth + 1, budget)
        per.append((used_seed, proj, 1 + sub.value))
        traces.append(sub)
    values = [v for _, _, v in per]
    counts = Counter(values)
    top = max(counts.values())
    majority = min(v for v, c in counts.items() if c == top)
    return DtReport(
        value=majority,
        agreed=len(counts) == 1,
        per_projection=per,
        depth_trace=traces,
    )


def dt_scan(
    f: Poly,
    points,
    samples: int = 5,
    seed: int = 42,
    specializations=None,
):
    """Per-point dt reports; every point must lie on {f = 0}.

    ``specializations`` is an optional list of index pairs (i_special,
    i_generic) declaring that point i_special is a specialization of point
    i_generic; any sampled violation of upper-semicontinuity
    (dt(special) < dt(generic)) is flagged in the returned violation list.
    """
    reports = []
    for p in points:
        pt = tuple(Fraction(x) for x in p)
        if f.eval(pt) != 0:
            raise DtError("point %r is off the hypersurface" % (pt,))
        reports.append((pt, dimensionality_type(Germ(f, pt), samples=samples, seed=seed)))
    violations = []
    for i, j in specializations or []:
        if reports[i][1].value < reports[j][1].value:
            violations.append((i, j, reports[i][1].value, reports[j][1].value))
    return reports, violations
