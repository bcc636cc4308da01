"""Combinatorial engine for stratifying conditions and coarsest
stratifications.

A variety enters as a finite poset of named irreducible closed sets with
dimension labels, a table of singular loci, and an oracle table giving
the failure components of a local condition on nested pairs.  Points of
the model are the nodes themselves (each node stands for the generic
point of its closed set); a closed set is a down-closed node set, and a
node x lies in the closed set W exactly when x <= W.

The engine builds the inductive filtration producing the coarsest
C-stratification, checks the three filtration axioms, decides refinement,
and can exhaustively enumerate all valid C-stratifications on small
posets to certify coarseness.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional


class StrataError(ValueError):
    pass


@dataclass(frozen=True)
class StratPoset:
    """Finite poset of irreducible closed sets with dimensions and
    singular loci.  ``order`` lists (sub, super) pairs; reflexivity and
    transitivity are completed automatically."""

    dims: dict  # name -> int
    order: frozenset  # (sub, super) pairs, transitively closed, reflexive
    sing: dict  # name -> tuple of names

    @classmethod
    def build(cls, dims, order_pairs, sing) -> "StratPoset":
        names = set(dims)
        rel = {(a, a) for a in names}
        for a, b in order_pairs:
            if a not in names or b not in names:
                raise StrataError("order pair (%s, %s) uses unknown node" % (a, b))
            rel.add((a, b))
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise StrataError("order is not antisymmetric: %s, %s" % (a, b))
            if a != b and dims[a] >= dims[b]:
                raise StrataError(
                    "containment must strictly increase dimension: %s in %s" % (a, b)
                )
        sing = {k: tuple(v) for k, v in sing.items()}
        for w, comps in sing.items():
            for s in comps:
                if s == w or (s, w) not in rel:
                    raise StrataError(
                        "singular component %s must be a proper subset of %s" % (s, w)
                    )
        for name in names:
            sing.setdefault(name, ())
        return cls(dims=dict(dims), order=frozenset(rel), sing=sing)

    # -- order utilities -----------------------------------------------------

    def leq(self, a, b) -> bool:
        return (a, b) in self.order

    def nodes(self):
        return sorted(self.dims)

    def down(self, w) -> frozenset:
        """Points of the closed set W."""
        return frozenset(x for x in self.dims if self.leq(x, w))

    def down_set(self, ws) -> frozenset:
        out = set()
        for w in ws:
            out |= self.down(w)
        return frozenset(out)

    def maximal(self, nodes):
        nodes = set(nodes)
        return tuple(
            sorted(
                n
                for n in nodes
                if not any(m != n and self.leq(n, m) for m in nodes)
            )
        )

    def top_components(self):
        """Components of the modelled variety: the maximal nodes."""
        return self.maximal(self.dims)

    def intersection_components(self, a, b):
        """Components of the closed intersection of two nodes' sets."""
        common = self.down(a) & self.down(b)
        return self.maximal(common)

    def sing_of_union(self, comps):
        """Components of Sing of a union of irreducible closed sets: the
        per-component singular loci plus all pairwise intersections."""
        pieces = set()
        for w in comps:
            pieces.update(self.sing[w])
        for a, b in itertools.combinations(sorted(comps), 2):
            pieces.update(self.intersection_components(a, b))
        return self.maximal(pieces)


@dataclass(frozen=True)
class ConditionOracle:
    """Failure table of a stratifying condition.

    ``table`` maps nested pairs (W_super, W_sub) to the components of the
    condition's failure locus beyond Sing(W_sub); the engine always adds
    Sing(W_sub) itself (points must be smooth), and computes the forced
    value Sing(W) + (W' int W) for non-nested pairs.  ``good`` is the
    user-asserted goodness flag.
    """

    table: dict  # (wsuper, wsub) -> tuple of nodes
    good: bool = False

    @classmethod
    def build(cls, poset: StratPoset, table, good=False) -> "ConditionOracle":
        clean = {}
        for (wp, w), comps in table.items():
            if not poset.leq(w, wp):
                raise StrataError(
                    "oracle key (%s, %s) is not a nested pair" % (wp, w)
                )
            for c in comps:
                if c == w or not poset.leq(c, w):
                    raise StrataError(
                        "failure component %s is not a proper subset of %s" % (c, w)
                    )
            clean[(wp, w)] = tuple(sorted(comps))
        return cls(table=clean, good=good)


def empty_condition() -> ConditionOracle:
    """The empty condition: every stratification is a C-stratification."""
    return ConditionOracle(table={}, good=True)


def conjunction(poset: StratPoset, *oracles) -> ConditionOracle:
    """Logical 'and' of conditions: failure tables union pointwise; the
    conjunction of good conditions is good."""
    table = {}
    for o in oracles:
        for key, comps in o.table.items():
            table[key] = tuple(sorted(set(table.get(key, ())) | set(comps)))
    table = {k: poset.maximal(v) for k, v in table.items()}
    return ConditionOracle(table=table, good=all(o.good for o in oracles))


def failure_components(poset: StratPoset, oracle: ConditionOracle, wp, w):
    """Components of the failure locus of the condition on the pair
    (W' = wp, W = w)."""
    if poset.leq(w, wp):
        extra = oracle.table.get((wp, w), ())
        return poset.maximal(set(poset.sing[w]) | set(extra))
    return poset.maximal(
        set(poset.sing[w]) | set(poset.intersection_components(wp, w))
    )


def implies(poset: StratPoset, stronger: ConditionOracle, weaker: ConditionOracle) -> bool:
    """C1 => C2 as table containment: on every nested pair, the weaker
    condition's failure table is contained in the stronger one's.

    Compares the condition tables themselves (without the Sing locus both
    sides always carry): the smoothness requirement is shared, so this is
    the faithful rendering of pointwise condition implication.
    """
    for wp in poset.nodes():
        for w in poset.nodes():
            if not poset.leq(w, wp):
                continue
            f_strong = poset.down_set(stronger.table.get((wp, w), ()))
            f_weak = poset.down_set(weaker.table.get((wp, w), ()))
            if not f_weak <= f_strong:
                return False
    return True


# -- filtrations -------------------------------------------------------------------

@dataclass
class Filtration:
    """Levels V_0 >= V_1 >= ... as component antichains; strata are pairs
    (component, level) standing for component minus the next level."""

    levels: list  # list of tuples of node names

    def strata(self):
        out = []
        for i, level in enumerate(self.levels):
            for w in level:
                out.append((w, i))
        return out

    def stratum_points(self, poset: StratPoset, w, i):
        pts = set(poset.down(w))
        if i + 1 < len(self.levels):
            pts -= poset.down_set(self.levels[i + 1])
        return frozenset(pts)

    def all_points(self, poset):
        return poset.down_set(self.levels[0])


def build_filtration(poset: StratPoset, oracle: ConditionOracle) -> Filtration:
    """The inductive filtration: V_{i+1} collects every node inside V_i
    that is a component of Sing(V_j) (j <= i) or of a failure locus of a
    pair of components from levels j <= k <= i, and is not itself a
    component of V_i."""
    levels = [poset.top_components()]
    while True:
        i = len(levels) - 1
        candidates = set()
        for j in range(i + 1):
            candidates.update(poset.sing_of_union(levels[j]))
        for j in range(i + 1):
            for k in range(j, i + 1):
                for wp in levels[j]:
                    for w in levels[k]:
                        candidates.update(failure_components(poset, oracle, wp, w))
        vi_pts = poset.down_set(levels[i])
        keep = {
            c
            for c in candidates
            if c not in levels[i] and poset.down(c) <= vi_pts
        }
        nxt = poset.maximal(keep)
        if not nxt:
            return Filtration(levels=levels)
        levels.append(nxt)
        if len(levels) > len(poset.dims) + 1:
            raise StrataError("filtration failed to terminate")


@dataclass
class FiltrationReport:
    condition1: bool
    condition2: bool
    condition3: bool
    witnesses: list = field(default_factory=list)

    @property
    def ok(self):
        return self.condition1 and self.condition2 and self.condition3


def check_filtration(poset: StratPoset, filt: Filtration) -> FiltrationReport:
    """Check the three filtration axioms; witnesses name the violations."""
    levels = filt.levels
    c1 = c2 = c3 = True
    witnesses = []
    for i, level in enumerate(levels):
        nxt = poset.down_set(levels[i + 1]) if i + 1 < len(levels) else frozenset()
        sing = poset.sing_of_union(level)
        for s in sing:
            if not poset.down(s) <= nxt:
                c1 = False
                witnesses.append(("(1)", "Sing component %s of V_%d not in V_%d" % (s, i, i + 1)))
        for w in level:
            if poset.down(w) <= nxt:
                c1 = False
                witnesses.append(("(1)", "component %s of V_%d contained in V_%d" % (w, i, i + 1)))
    for i, level in enumerate(levels):
        nxt = poset.down_set(levels[i + 1]) if i + 1 < len(levels) else frozenset()
        for j, other in enumerate(levels):
            for w in level:
                for wp in other:
                    if not poset.leq(w, wp):
                        inter = poset.down(w) & poset.down(wp)
                        if not inter <= nxt:
                            c2 = False
                            witnesses.append(
                                ("(2)", "%s int %s not in V_%d" % (w, wp, i + 1))
                            )
                    sing_pts = poset.down_set(poset.sing[wp])
                    if not poset.down(w) <= sing_pts:
                        inter = poset.down(w) & sing_pts
                        if not inter <= nxt:
                            c2 = False
                            witnesses.append(
                                ("(2)", "%s int Sing(%s) not in V_%d" % (w, wp, i + 1))
                            )
    prev = None
    for i, level in enumerate(levels):
        if not level:
            continue
        dims = {poset.dims[w] for w in level}
        if len(dims) != 1:
            c3 = False
            witnesses.append(("(3)", "level %d has mixed dimensions %s" % (i, sorted(dims))))
            continue
        d = dims.pop()
        if prev is not None and d >= prev:
            c3 = False
            witnesses.append(("(3)", "level %d dimension does not drop" % i))
        prev = d
    return FiltrationReport(c1, c2, c3, witnesses)


def refines(poset: StratPoset, f1: Filtration, f2: Filtration) -> bool:
    """Every f1-stratum is contained in some f2-stratum (point semantics)."""
    if f1.all_points(poset) != f2.all_points(poset):
        raise StrataError("filtrations live on different spaces")
    s2 = [
        f2.stratum_points(poset, w, i)
        for w, i in f2.strata()
    ]
    for w, i in f1.strata():
        pts = f1.stratum_points(poset, w, i)
        if not pts:
            continue
        if not any(pts <= other for other in s2):
            return False
    return True


# -- partitions ---------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Named partition of the model's points into locally closed parts."""

    parts: dict  # name -> frozenset of nodes

    @classmethod
    def build(cls, poset: StratPoset, parts) -> "Partition":
        clean = {name: frozenset(p) for name, p in parts.items()}
        everything = set(poset.nodes())
        seen = set()
        for name, p in clean.items():
            if not p:
                raise StrataError("empty part %r" % name)
            if p & seen:
                raise StrataError("parts are not disjoint at %r" % name)
            seen |= p
            closure = poset.down_set(p)
            boundary = closure - p
            if poset.down_set(boundary) != boundary:
                raise StrataError("part %r is not locally closed" % name)
        if seen != everything:
            raise StrataError("parts do not cover the space")
        return cls(parts=clean)

    def part_of(self, x):
        for name, p in self.parts.items():
            if x in p:
                return name
        raise StrataError("point %r in no part" % x)


def partition_condition(poset: StratPoset, partition: Partition) -> ConditionOracle:
    """The stratifying condition C_P: the failure locus on a nested pair
    (W', W) is (W - P) + Sing(W) where P is the unique part dense in W
    (the part of W's generic point)."""
    table = {}
    for w in poset.nodes():
        dense = partition.part_of(w)
        dense_pts = partition.parts[dense]
        bad = poset.down(w) - dense_pts
        comps = poset.maximal(bad)
        if comps:
            for wp in poset.nodes():
                if poset.leq(w, wp):
                    table[(wp, w)] = comps
    return ConditionOracle.build(poset, table, good=True)


def filtration_respects_condition(
    poset: StratPoset, oracle: ConditionOracle, filt: Filtration
) -> Optional[tuple]:
    """None if filt is a C-stratification; otherwise the offending pair.

    The requirement: for strata closures W (level k) and W' (level j <= k)
    with W inside W', the failure locus of (W', W) is a union of strata.
    """
    levels = filt.levels
    strata_pts = [
        filt.stratum_points(poset, w, i) for w, i in filt.strata()
    ]
    for j, lj in enumerate(levels):
        for k in range(j, len(levels)):
            for wp in lj:
                for w in levels[k]:
                    if not poset.leq(w, wp):
                        continue
                    fail = poset.down_set(failure_components(poset, oracle, wp, w))
                    for pts in strata_pts:
                        if pts & fail and not pts <= fail:
                            return (wp, w)
    return None


def is_c_stratification(poset, oracle, filt) -> bool:
    if not check_filtration(poset, filt).ok:
        return False
    return filtration_respects_condition(poset, oracle, filt) is None


# -- enumeration and coarseness ------------------------------------------------------

def _antichains(poset: StratPoset, pool):
    pool = sorted(pool)
    for r in range(len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            if all(
                not poset.leq(a, b) and not poset.leq(b, a)
                for a, b in itertools.combinations(combo, 2)
            ):
                yield combo


def enumerate_stratifications(poset: StratPoset, oracle: Optional[ConditionOracle] = None):
    """All valid filtrations (C-stratifications when an oracle is given)
    of the full space.  Exponential; intended for posets with few nodes."""
    top = poset.top_components()
    results = []

    def extend(levels):
        i = len(levels) - 1
        vi_pts = poset.down_set(levels[i])
        # candidate next levels: antichains of nodes strictly inside V_i
        pool = [
            n
            for n in poset.nodes()
            if poset.down(n) <= vi_pts and n not in levels[i]
        ]
        for cand in _antichains(poset, pool):
            if not cand:
                filt = Filtration(levels=list(levels))
                if check_filtration(poset, filt).ok and (
                    oracle is None
                    or filtration_respects_condition(poset, oracle, filt) is None
                ):
                    results.append(filt)
                continue
            extend(levels + [cand])

    extend([top])
    return results


@dataclass
class CoarsestReport:
    candidate_valid: bool
    candidate_refines: bool
    enumerated: Optional[int] = None
    all_refine: Optional[bool] = None
    offending_pair: Optional[tuple] = None


def verify_coarsest(
    poset: StratPoset,
    oracle: ConditionOracle,
    candidate: Optional[Filtration] = None,
    enumerate_all: bool = False,
) -> CoarsestReport:
    """Check that the built filtration is the coarsest C-stratification.

    With a candidate: verify it is a valid C-stratification and refines
    the built one.  With enumerate_all: enumerate every C-stratification
    and confirm each refines the built one.
    """
    built = build_filtration(poset, oracle)
    cand_valid = True
    cand_refines = True
    offending = None
    if candidate is not None:
        ok = check_filtration(poset, candidate).ok
        offending = filtration_respects_condition(poset, oracle, candidate)
        cand_valid = ok and offending is None
        cand_refines = cand_valid and refines(poset, candidate, built)
    enumerated = None
    all_refine = None
    if enumerate_all:
        strats = enumerate_stratifications(poset, oracle)
        enumerated = len(strats)
        all_refine = all(refines(poset, s, built) for s in strats)
    return CoarsestReport(
        candidate_valid=cand_valid,
        candidate_refines=cand_refines,
        enumerated=enumerated,
        all_refine=all_refine,
        offending_pair=offending,
    )


def partition_refines(poset: StratPoset, p1: Partition, p2: Partition) -> bool:
    """Germwise refinement: at every point x, the germ of the p1-part of x
    is contained in the germ of the p2-part of x.

    In the finite model the germ of a set at x is its trace on the minimal
    neighborhood up(x).  Connectivity of parts is not modelled here, so a
    part that is a disjoint union of locally-identical pieces refines the
    split-up partition germwise even though the global set containment
    fails; germwise refinement is the notion that matches condition
    implication.
    """
    for x in poset.nodes():
        up = frozenset(y for y in poset.nodes() if poset.leq(x, y))
        a = p1.parts[p1.part_of(x)] & up
        b = p2.parts[p2.part_of(x)] & up
        if not a <= b:
            return False
    return True


def partition_refines_globally(poset: StratPoset, p1: Partition, p2: Partition) -> bool:
    """Plain set-containment refinement: every p1-part inside a p2-part."""
    for a in p1.parts.values():
        if not any(a <= b for b in p2.parts.values()):
            return False
    return True


# -- JSON front end -------------------------------------------------------------------

def poset_from_json(data):
    """Load (poset, oracle) from the documented JSON shape:

    {"nodes": [{"name": ..., "dim": ...}], "order": [[sub, super], ...],
     "sing": {node: [nodes]}, "failure": {"W'|W": [nodes]}, "good": bool}
    """
    if isinstance(data, str):
        data = json.loads(data)
    dims = {n["name"]: int(n["dim"]) for n in data["nodes"]}
    order = [(a, b) for a, b in data.get("order", [])]
    sing = {k: tuple(v) for k, v in data.get("sing", {}).items()}
    poset = StratPoset.build(dims, order, sing)
    table = {}
    for key, comps in data.get("failure", {}).items():
        wp, w = key.split("|")
        table[(wp, w)] = tuple(comps)
    oracle = ConditionOracle.build(poset, table, good=bool(data.get("good", False)))
    return poset, oracle


def tent_instance():
    """The bottomless-tent example: surface V with ridge lines E, F
    crossing at the vertex O."""
    poset = StratPoset.build(
        dims={"V": 2, "E": 1, "F": 1, "O": 0},
        order_pairs=[("E", "V"), ("F", "V"), ("O", "E"), ("O", "F")],
        sing={"V": ("E", "F")},
    )
    return poset, empty_condition()
