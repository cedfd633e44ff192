"""Points of P^1, cross-ratios, and cross-ratio coordinates on marked trees.

The cross-ratio CR(p1, p2, p3, p4) is the position of p4 after the Mobius
map sending p1, p2, p3 to infinity, 0, 1:

    CR = (p4 - p2)(p3 - p1) / ((p4 - p1)(p3 - p2)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactnum import MPoly, RFunc, is_zero
from ..treecover.trees import MarkedTree, leg_key, stabilize


class _Infinity:
    """The point at infinity of P^1 (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(p) -> bool:
    return p is INF


class CoincidentPoints(ValueError):
    """Cross-ratio of a configuration with colliding points."""


def cr_pair(p1, p2, p3, p4):
    """Numerator and denominator of the cross-ratio, with infinite points dropped.

    Works over any commutative ring, including truncated power series.
    """
    pts = (p1, p2, p3, p4)
    if sum(1 for p in pts if is_inf(p)) > 1:
        raise CoincidentPoints("two points at infinity")

    def diff(a, b):
        if is_inf(pts[a]) or is_inf(pts[b]):
            return None
        return pts[a] - pts[b]

    def prod2(x, y):
        if x is None:
            return y if y is not None else 1
        if y is None:
            return x
        return x * y

    num = prod2(diff(3, 1), diff(2, 0))
    den = prod2(diff(3, 0), diff(2, 1))
    return num, den


def cross_ratio_values(p1, p2, p3, p4, strict: bool = True):
    """The cross-ratio of four points of P^1 (scalars or INF)."""
    if strict:
        pts = [p for p in (p1, p2, p3, p4)]
        for i in range(4):
            for j in range(i + 1, 4):
                a, b = pts[i], pts[j]
                if (is_inf(a) and is_inf(b)) or (not is_inf(a) and not is_inf(b) and is_zero(a - b)):
                    raise CoincidentPoints(f"points {i + 1} and {j + 1} coincide")
    num, den = cr_pair(p1, p2, p3, p4)
    if is_zero(den):
        if is_zero(num):
            raise CoincidentPoints("cross-ratio is 0/0")
        return INF
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


@dataclass
class Configuration:
    """Labelled points on P^1; ``strict`` forbids coincidences."""

    positions: dict
    strict: bool = True

    def __post_init__(self):
        self.positions = {str(k): v for k, v in self.positions.items()}
        if self.strict:
            labels = list(self.positions)
            for i in range(len(labels)):
                for j in range(i + 1, len(labels)):
                    a, b = self.positions[labels[i]], self.positions[labels[j]]
                    if (is_inf(a) and is_inf(b)) or (not is_inf(a) and not is_inf(b) and is_zero(a - b)):
                        raise CoincidentPoints(f"{labels[i]} and {labels[j]} coincide")

    @property
    def labels(self) -> list:
        return sorted(self.positions, key=leg_key)


def cross_ratio(c: Configuration, i1, i2, i3, i4):
    p = c.positions
    return cross_ratio_values(p[str(i1)], p[str(i2)], p[str(i3)], p[str(i4)], strict=c.strict)


def apply_moebius(m, z):
    """Image of z (scalar or INF) under the 2x2 matrix m = ((a, b), (c, e))."""
    (a, b), (c, e) = m
    if is_inf(z):
        if is_zero(c):
            return INF
        return a / c
    num = a * z + b
    den = c * z + e
    if is_zero(den):
        return INF
    return num / den


# -- symbolic rewriting ---------------------------------------------------


def cr_rewrite(target, labels=None) -> RFunc:
    """Write CR(target) as a rational function of the basis y_i = CR(l1, l2, l3, i).

    ``labels`` lists the marks; the first three are the basis frame (sent to
    infinity, 0, 1), and there is one variable y_i for each further mark.
    """
    target = [str(x) for x in target]
    if labels is None:
        labels = sorted(set(target) | {"1", "2", "3"}, key=leg_key)
    labels = [str(x) for x in labels]
    frame = labels[:3]
    others = labels[3:]
    names = [f"y{x}" for x in others]
    nv = max(len(names), 1)
    names = names or ["y"]
    gens = MPoly.gens(names) if others else [MPoly.var(0, 1, names)]
    pos = {frame[0]: INF, frame[1]: MPoly.const(Fraction(0), nv, names), frame[2]: MPoly.const(Fraction(1), nv, names)}
    for k, x in enumerate(others):
        pos[x] = gens[k]
    num, den = cr_pair(*(pos[x] for x in target))
    num = num if isinstance(num, MPoly) else MPoly.const(Fraction(num), nv, names)
    den = den if isinstance(den, MPoly) else MPoly.const(Fraction(den), nv, names)
    return RFunc(num, den)


def check_rewrite(target, labels=None, trials: int = 5, seed: int = 0) -> bool:
    """Numerically confirm cr_rewrite on random configurations."""
    target = [str(x) for x in target]
    if labels is None:
        labels = sorted(set(target) | {"1", "2", "3"}, key=leg_key)
    labels = [str(x) for x in labels]
    f = cr_rewrite(target, labels)
    rng = random.Random(seed)
    for _ in range(trials):
        pts = {x: complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for x in labels}
        ys = [cross_ratio_values(*(pts[x] for x in labels[:3]), pts[x]) for x in labels[3:]] or [0j]
        direct = cross_ratio_values(*(pts[x] for x in target))
        num = complex(f.num.eval(ys))
        den = complex(f.den.eval(ys))
        if abs(num / den - direct) > 1e-9 * max(1.0, abs(direct)):
            return False
    return True


# -- boundary values on trees -----------------------------------------------


@dataclass(frozen=True)
class InteriorSymbol:
    """Marker for a cross-ratio that is a genuine coordinate on the stratum."""

    legs: tuple


def boundary_cross_ratio(t: MarkedTree, i1, i2, i3, i4):
    """Forced value of CR(i1..i4) on the stratum of t, or InteriorSymbol.

    Stabilizing to the four legs leaves one vertex (a coordinate) or one
    edge; the split i1 i4 | i2 i3 gives infinity, i2 i4 | i1 i3 gives 0 and
    i3 i4 | i1 i2 gives 1.
    """
    legs = [str(x) for x in (i1, i2, i3, i4)]
    s = stabilize(t, legs)
    if not s.edges:
        return InteriorSymbol(tuple(legs))
    (e,) = s.edges
    side = s.split(e)
    other = frozenset(legs) - side
    for block in (side, other):
        if legs[3] in block:
            partner = next(x for x in block if x != legs[3])
    if partner == legs[0]:
        return INF
    if partner == legs[1]:
        return Fraction(0)
    return Fraction(1)


def _flag_representative(t: MarkedTree, v, flag) -> str:
    """Smallest leg reachable from v through the flag (a leg label or a neighbour)."""
    kind, x = flag
    if kind == "leg":
        return x
    side = t.side_of(frozenset((v, x)), x)
    return min((leg for leg, w in t.mk if w in side), key=leg_key)


def vertex_flags(t: MarkedTree, v) -> list:
    """Flags at v as ("leg", label) or ("edge", neighbour), ordered by representative."""
    flags = [("leg", leg) for leg in t.legs_at(v)] + [("edge", w) for w in t.adjacency()[v]]
    return sorted(flags, key=lambda f: leg_key(_flag_representative(t, v, f)))


@dataclass(frozen=True)
class NodeParamChoice:
    """For each edge of a tree, the four legs (i1, i2, i3, i4) defining its smoothing cross-ratio."""

    tuples: dict = field(default_factory=dict)


def node_param_tuple(t: MarkedTree, edge: frozenset) -> tuple:
    """Legs i1, i3 from two different non-edge flags at one end, i2, i4 at the other.

    Then CR(i1, i2, i3, i4) vanishes exactly on the divisor of the edge.
    """
    v1, v2 = sorted(edge, key=lambda v: min((_flag_representative(t, v, f) for f in vertex_flags(t, v)), key=leg_key))
    f1 = [f for f in vertex_flags(t, v1) if f != ("edge", v2)][:2]
    f2 = [f for f in vertex_flags(t, v2) if f != ("edge", v1)][:2]
    if len(f1) < 2 or len(f2) < 2:
        raise ValueError("an end of the edge has fewer than two other flags; stabilize the tree first")
    i1, i3 = (_flag_representative(t, v1, f) for f in f1)
    i2, i4 = (_flag_representative(t, v2, f) for f in f2)
    return (i1, i2, i3, i4)


def node_param_choice(t: MarkedTree) -> NodeParamChoice:
    return NodeParamChoice({e: node_param_tuple(t, e) for e in t.edges})


def check_node_param(t: MarkedTree, edge: frozenset, tup) -> bool:
    """The four separation conditions for a smoothing 4-tuple."""
    u, v = tuple(edge)
    for a, b, end, far in ((tup[0], tup[2], u, v), (tup[1], tup[3], v, u)):
        ok = False
        for x, y in ((end, far), (far, end)):
            side = t.side_of(edge, x)
            if t.vertex_of(a) in side and t.vertex_of(b) in side:
                # different components of the tree minus x
                if _component_key(t, x, a) != _component_key(t, x, b):
                    ok = True
        if not ok:
            return False
    sides = [t.side_of(edge, w) for w in edge]
    a_side = next(i for i, s in enumerate(sides) if t.vertex_of(tup[0]) in s)
    b_side = next(i for i, s in enumerate(sides) if t.vertex_of(tup[1]) in s)
    return a_side != b_side


def _component_key(t: MarkedTree, v, leg):
    w = t.vertex_of(leg)
    if w == v:
        return ("leg", leg)
    path = t.path(v, w)
    return ("edge", path[1])


def vertex_coordinate_tuples(t: MarkedTree) -> list:
    """Cross-ratio coordinates CR(r1, r2, r3, r) for every vertex of valence >= 4."""
    out = []
    for v in sorted(t.vertices, key=str):
        flags = vertex_flags(t, v)
        if len(flags) < 4:
            continue
        reps = [_flag_representative(t, v, f) for f in flags]
        for r in reps[3:]:
            out.append((reps[0], reps[1], reps[2], r))
    return out


def local_coordinate_tuples(t: MarkedTree) -> list:
    """Smoothing tuples for the edges followed by vertex coordinates: n - 3 tuples in all."""
    edges = sorted(t.edges, key=lambda e: sorted(map(str, e)))
    return [node_param_tuple(t, e) for e in edges] + vertex_coordinate_tuples(t)
