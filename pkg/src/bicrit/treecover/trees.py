"""Stable marked trees: dual graphs of stable genus-0 curves.

Legs are string labels ("*", "1", "2", ...).  Vertex ids are any hashable
values; they are compared through ``str`` when an order is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable


def leg_key(label: str):
    """Sort key putting "*" first and numeric labels in numeric order."""
    if label == "*":
        return (0, 0, "")
    if label.isdigit():
        return (1, int(label), "")
    return (2, 0, label)


def _edge(u, v) -> frozenset:
    if u == v:
        raise ValueError("loops are not allowed in a tree")
    return frozenset((u, v))


@dataclass(frozen=True)
class Flag:
    """A half-edge or a leg seen from the vertex it is incident to."""

    vertex: Hashable
    edge: frozenset | None = None
    leg: str | None = None

    def __post_init__(self):
        if (self.edge is None) == (self.leg is None):
            raise ValueError("a flag is either an edge or a leg")
        if self.edge is not None and self.vertex not in self.edge:
            raise ValueError("flag vertex must be an endpoint of its edge")

    def far_vertex(self):
        """The other endpoint of an edge flag."""
        (other,) = self.edge - {self.vertex}
        return other


@dataclass(frozen=True)
class MarkedTree:
    """Tree with legs: vertices, edges as unordered pairs, and mk: legs -> vertices."""

    vertices: frozenset
    edges: frozenset
    mk: tuple  # sorted pairs (leg, vertex)

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable, mk: dict) -> MarkedTree:
        vs = frozenset(vertices)
        es = frozenset(_edge(u, v) for u, v in (tuple(e) for e in edges))
        pairs = tuple(sorted(((str(k), v) for k, v in mk.items()), key=lambda p: leg_key(p[0])))
        t = cls(vs, es, pairs)
        t.check()
        return t

    @classmethod
    def from_blocks(cls, blocks: dict, edges: Iterable) -> MarkedTree:
        """Build from {vertex: iterable of legs} and a list of vertex pairs."""
        mk = {leg: v for v, legs in blocks.items() for leg in legs}
        return cls.build(blocks.keys(), edges, mk)

    def check(self) -> None:
        for e in self.edges:
            if not e <= self.vertices:
                raise ValueError(f"edge {set(e)} uses an unknown vertex")
        for leg, v in self.mk:
            if v not in self.vertices:
                raise ValueError(f"leg {leg} marks an unknown vertex {v}")
        if len({leg for leg, _ in self.mk}) != len(self.mk):
            raise ValueError("duplicate leg labels")
        if not self.vertices:
            raise ValueError("a tree needs at least one vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("edge count does not match a tree")
        seen = {next(iter(self.vertices))}
        stack = list(seen)
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != self.vertices:
            raise ValueError("tree is not connected")

    # -- basic queries ---------------------------------------------------

    @property
    def legs(self) -> frozenset:
        return frozenset(leg for leg, _ in self.mk)

    def mk_map(self) -> dict:
        return dict(self.mk)

    def vertex_of(self, leg: str):
        for lab, v in self.mk:
            if lab == leg:
                return v
        raise KeyError(leg)

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort(key=str)
        return adj

    def legs_at(self, v) -> list:
        return sorted((leg for leg, w in self.mk if w == v), key=leg_key)

    def valence(self, v) -> int:
        return sum(1 for e in self.edges if v in e) + sum(1 for _, w in self.mk if w == v)

    def flags(self, v) -> list:
        out = [Flag(v, leg=leg) for leg in self.legs_at(v)]
        out += [Flag(v, edge=_edge(v, w)) for w in self.adjacency()[v]]
        return out

    def path(self, u, v) -> list:
        """Vertices on the unique path from u to v, endpoints included."""
        adj = self.adjacency()
        prev = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        out = [v]
        while out[-1] != u:
            out.append(prev[out[-1]])
        return out[::-1]

    def side_of(self, edge: frozenset, v) -> set:
        """Vertices on v's side after cutting edge."""
        adj = self.adjacency()
        (other,) = edge - {v}
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and not (x == v and y == other):
                    seen.add(y)
                    stack.append(y)
        return seen

    def split(self, edge: frozenset) -> frozenset:
        """Legs on the side of edge not containing the smallest leg."""
        u, v = tuple(edge)
        side = self.side_of(edge, u)
        legs_u = frozenset(leg for leg, w in self.mk if w in side)
        if not self.mk:
            return legs_u
        first = min(self.legs, key=leg_key)
        return self.legs - legs_u if first in legs_u else legs_u

    def splits(self) -> frozenset:
        return frozenset(self.split(e) for e in self.edges)

    def relabel_legs(self, mapping: dict) -> MarkedTree:
        return MarkedTree.build(self.vertices, [tuple(e) for e in self.edges],
                                {mapping[leg]: v for leg, v in self.mk})

    def relabel_vertices(self, mapping: dict) -> MarkedTree:
        return MarkedTree.build([mapping[v] for v in self.vertices],
                                [tuple(mapping[x] for x in e) for e in self.edges],
                                {leg: mapping[v] for leg, v in self.mk})

    def __str__(self):
        blocks = {v: self.legs_at(v) for v in self.vertices}
        vs = sorted(self.vertices, key=str)
        parts = [f"{v}{{{','.join(blocks[v])}}}" for v in vs]
        es = sorted("-".join(sorted(map(str, e))) for e in self.edges)
        return f"MarkedTree({' '.join(parts)}; {' '.join(es)})"


def is_stable(t: MarkedTree) -> bool:
    """True iff every vertex has valence (edges plus legs) at least 3."""
    return all(t.valence(v) >= 3 for v in t.vertices)


def contract_edge(t: MarkedTree, edge: frozenset, keep=None) -> MarkedTree:
    """Contract edge, merging its endpoint other than keep into keep."""
    u, v = tuple(edge)
    if keep is None:
        keep = u if str(u) <= str(v) else v
    gone = v if keep == u else u
    vs = t.vertices - {gone}
    es = []
    for e in t.edges:
        if e == edge:
            continue
        a, b = tuple(e)
        es.append((keep if a == gone else a, keep if b == gone else b))
    mk = {leg: (keep if w == gone else w) for leg, w in t.mk}
    return MarkedTree.build(vs, es, mk)


def _drop_legs(t: MarkedTree, keep) -> MarkedTree:
    return MarkedTree.build(t.vertices, [tuple(e) for e in t.edges],
                            {leg: v for leg, v in t.mk if leg in keep})


def unstable_moves(t: MarkedTree) -> list:
    """All (edge, surviving vertex) contractions available at unstable vertices."""
    moves = []
    adj = t.adjacency()
    for v in sorted(t.vertices, key=str):
        if t.valence(v) < 3:
            for w in adj[v]:
                moves.append((_edge(v, w), w))
    return moves


def stabilize(t: MarkedTree, keep: Iterable[str], order=None) -> MarkedTree:
    """Forget legs outside keep and contract edges at unstable vertices.

    ``order`` is an optional callable picking one move from the list of
    available moves; the default takes the first.  The result does not
    depend on that choice up to isomorphism.
    """
    keep = frozenset(keep)
    if len(keep) < 3:
        raise ValueError("stabilization needs at least three legs")
    missing = keep - t.legs
    if missing:
        raise ValueError(f"legs {sorted(missing)} are not on the tree")
    cur = _drop_legs(t, keep)
    while True:
        moves = unstable_moves(cur)
        if not moves:
            return cur
        if len(cur.vertices) == 1:
            raise ValueError("a single vertex cannot be stabilized")
        edge, survivor = moves[0] if order is None else order(moves)
        cur = contract_edge(cur, edge, keep=survivor)


# -- canonical form and isomorphism -------------------------------------


def canonical_form(t: MarkedTree, vertex_label=None) -> tuple:
    """Lexicographically minimal rooted encoding over all roots.

    ``vertex_label`` optionally decorates vertices with extra data that an
    isomorphism must preserve.
    """
    adj = t.adjacency()
    lab = vertex_label or (lambda v: ())

    def code(root, parent):
        legs = tuple(leg_key(x) for x in t.legs_at(root))
        kids = sorted(code(c, root) for c in adj[root] if c != parent)
        return (lab(root), legs, tuple(kids))

    return min(code(r, None) for r in t.vertices)


def are_isomorphic(t1: MarkedTree, t2: MarkedTree) -> bool:
    """True iff a tree isomorphism exists that commutes with the markings."""
    if t1.legs != t2.legs or len(t1.vertices) != len(t2.vertices):
        return False
    return canonical_form(t1) == canonical_form(t2)


# -- enumeration ---------------------------------------------------------


def _insert_leg(t: MarkedTree, new: str) -> list:
    """All stable trees whose forgetful image (forget new, stabilize) is t."""
    out = []
    fresh = max((int(v) for v in t.vertices), default=-1) + 1
    for v in sorted(t.vertices):
        mk = t.mk_map()
        mk[new] = v
        out.append(MarkedTree.build(t.vertices, [tuple(e) for e in t.edges], mk))
    for e in sorted(t.edges, key=lambda e: sorted(e)):
        a, b = sorted(e)
        es = [tuple(x) for x in t.edges if x != e] + [(a, fresh), (fresh, b)]
        mk = t.mk_map()
        mk[new] = fresh
        out.append(MarkedTree.build(t.vertices | {fresh}, es, mk))
    for leg, v in t.mk:
        es = [tuple(x) for x in t.edges] + [(v, fresh)]
        mk = t.mk_map()
        mk[leg] = fresh
        mk[new] = fresh
        out.append(MarkedTree.build(t.vertices | {fresh}, es, mk))
    return out


def _normalize_ids(t: MarkedTree) -> MarkedTree:
    """Renumber vertices 0..k-1 in a canonical order."""
    adj = t.adjacency()

    def code(root, parent):
        legs = tuple(leg_key(x) for x in t.legs_at(root))
        return (legs, tuple(sorted(code(c, root) for c in adj[root] if c != parent)))

    root = min(t.vertices, key=lambda r: code(r, None))
    order = []
    stack = [(root, None)]
    while stack:
        v, p = stack.pop(0)
        order.append(v)
        kids = sorted((c for c in adj[v] if c != p), key=lambda c: code(c, v))
        stack.extend((c, v) for c in kids)
    return t.relabel_vertices({v: i for i, v in enumerate(order)})


def enumerate_stable_trees(S: Iterable[str]) -> list:
    """All stable S-marked trees up to isomorphism.

    Grown one leg at a time: every stable tree on S + {x} arises exactly
    once from a stable tree on S by putting x on a vertex, on a new vertex
    subdividing an edge, or on a new vertex sprouted next to an old leg.
    The result is ordered by edge count, then canonical form.
    """
    labels = sorted({str(s) for s in S}, key=leg_key)
    if len(labels) < 3:
        raise ValueError("stable trees need at least three legs")
    trees = [MarkedTree.build([0], [], {leg: 0 for leg in labels[:3]})]
    for new in labels[3:]:
        nxt = {}
        for t in trees:
            for u in _insert_leg(t, new):
                nxt.setdefault(canonical_form(u), u)
        trees = list(nxt.values())
    trees = [_normalize_ids(t) for t in trees]
    trees.sort(key=lambda t: (len(t.edges), canonical_form(t)))
    return trees

