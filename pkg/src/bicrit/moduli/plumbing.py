"""Plumbing families: one-parameter smoothings of nodal trees of P^1.

A family is rooted at the vertex carrying the point at infinity.  Each
vertex has an affine chart whose parent node sits at infinity; a flag at
chart coordinate u on a vertex reached from the root through nodes at
c_1, ..., c_k with parameters t_1, ..., t_k lands at

    c_1 + t_1 (c_2 + t_2 (... + t_k u)).

Coordinates and parameters may live in any commutative ring: numbers,
MPolys, or truncated power series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exactnum import OrderExceedsTruncation, TruncSeries, is_zero
from ..treecover.trees import MarkedTree
from .points import INF, Configuration, cr_pair, is_inf


class NodeAtInfinity(ValueError):
    """A child node was placed at infinity in its parent chart."""


@dataclass
class PlumbingFamily:
    """Rooted tree with per-vertex charts and per-edge smoothing parameters.

    charts[v] maps leg labels to coordinates and ("node", w) to the
    position of the node towards the child w.  params maps each edge
    (a frozenset) to its parameter.  Legs missing from the tree's mk may
    be added through ``extra`` as {label: vertex}; their coordinates then
    live in charts as well.
    """

    tree: MarkedTree
    root: object
    charts: dict
    params: dict
    extra: dict = field(default_factory=dict)

    def children(self) -> dict:
        adj = self.tree.adjacency()
        kids = {}
        order = [self.root]
        parent = {self.root: None}
        for v in order:
            kids[v] = [w for w in adj[v] if w != parent[v]]
            for w in kids[v]:
                parent[w] = v
                order.append(w)
        return kids

    def marks(self) -> dict:
        out = dict(self.tree.mk)
        out.update(self.extra)
        return out


def plumb(f: PlumbingFamily) -> Configuration:
    """Global positions of every mark, as a family-mode configuration."""
    kids = f.children()
    # affine map chart(v) -> global, stored as (offset, scale)
    affine = {f.root: (None, None)}
    order = [f.root]
    for v in order:
        off, scale = affine[v]
        for w in kids[v]:
            c = f.charts[v].get(("node", w))
            if c is None:
                raise KeyError(f"chart of {v} has no node towards {w}")
            if is_inf(c):
                raise NodeAtInfinity(f"node {v}-{w} is at infinity in the chart of {v}")
            t = f.params[frozenset((v, w))]
            new_off = c if off is None else off + scale * c
            new_scale = t if scale is None else scale * t
            affine[w] = (new_off, new_scale)
            order.append(w)
    pos = {}
    for leg, v in f.marks().items():
        u = f.charts[v][leg]
        off, scale = affine[v]
        if off is None:
            pos[leg] = u
            continue
        if is_inf(u):
            raise NodeAtInfinity(f"leg {leg} sits on the parent node of {v}")
        pos[leg] = off + scale * u
    return Configuration(pos, strict=False)


def series_cr(c: Configuration, i1, i2, i3, i4):
    """Numerator and denominator of a cross-ratio of a plumbed family."""
    p = c.positions
    return cr_pair(p[str(i1)], p[str(i2)], p[str(i3)], p[str(i4)])


def _lead(x):
    if isinstance(x, TruncSeries):
        if not x.coeffs:
            raise OrderExceedsTruncation("series vanishes to the known order")
        return x.val, x.coeffs[0]
    return 0, x


def series_cr_limit(num, den):
    """Value of num/den as the parameter tends to 0 (INF when den vanishes faster)."""
    vn, cn = _lead(num)
    vd, cd = _lead(den)
    if vn > vd:
        return 0
    if vn < vd:
        return INF
    return cn / cd


def series_cr_order(num, den) -> int:
    """Order of vanishing in the parameter (negative for a pole)."""
    return _lead(num)[0] - _lead(den)[0]


def separating_edges(t: MarkedTree, tup) -> list:
    """Edges with i1, i3 on one side and i2, i4 on the other."""
    i1, i2, i3, i4 = (str(x) for x in tup)
    out = []
    for e in t.edges:
        u = next(iter(e))
        side = t.side_of(e, u)
        s = {x: t.vertex_of(x) in side for x in (i1, i2, i3, i4)}
        if s[i1] == s[i3] and s[i2] == s[i4] and s[i1] != s[i2]:
            out.append(e)
    return out


def uniform_series_family(t: MarkedTree, root, charts: dict, N: int = 6) -> PlumbingFamily:
    """Family with every edge parameter equal to the series t."""
    tser = TruncSeries.from_poly([0, 1], N)
    params = {e: tser for e in t.edges}
    lifted = {}
    for v, ch in charts.items():
        lifted[v] = {k: (x if is_inf(x) else _const_series(x, N)) for k, x in ch.items()}
    return PlumbingFamily(t, root, lifted, params)


def _const_series(x, N):
    if is_zero(x):
        return TruncSeries.from_poly([x], N)
    return TruncSeries.from_poly([x], N)


def default_charts(t: MarkedTree, root, seed: int = 0) -> dict:
    """Generic rational charts: root legs spread out (the smallest leg at infinity), others distinct."""
    import random
    from fractions import Fraction

    rng = random.Random(seed)
    adj = t.adjacency()
    parent = {root: None}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    charts = {}
    first = min(t.legs_at(root), default=None, key=lambda x: (x != "*", x))
    for v in order:
        used = set()
        ch = {}
        flags = [("leg", x) for x in t.legs_at(v)] + [("node", w) for w in adj[v] if w != parent[v]]
        for kind, x in flags:
            if v == root and kind == "leg" and x == first:
                ch[x] = INF
                continue
            while True:
                val = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
                if val not in used:
                    used.add(val)
                    break
            ch[x if kind == "leg" else ("node", x)] = val
        charts[v] = ch
    return charts
