"""Plumbed source families over a boundary stratum and their leading equations.

The source curve uses the global coordinate z with a_* = infinity and
a_1 = 0, and the cover is z -> z^d throughout the family.  Vertices of
the critical path are nested scaling charts (the next path vertex at 0,
the previous one at infinity).  A branch of tau hanging off a path vertex
at chart position c lifts to d copies at zeta^m c, each an affine
plumbing of the same branch chart rotated by zeta^m.  Along a test curve
each tau edge gets the parameter lambda_e t^(w_e).

Charts are normalized as follows: at a path vertex the first flag other
than the path nodes and the critical marks sits at 1; at a branch vertex
the parent node is at infinity and the first two other flags sit at 0 and
1.  The remaining chart positions and the lambdas are the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd
from functools import reduce

from ..exactnum import MPoly, OrderExceedsTruncation, TruncSeries, root_of_unity
from ..moduli import INF, PlumbingFamily, cr_pair, local_coordinate_tuples, plumb
from ..treecover import CombinatorialType, leg_key, leg_preimage, tau_branches
from ..treecover.trees import MarkedTree, stabilize


def type_blocks(g: CombinatorialType) -> list:
    """Visible legs of each tau branch grouped by the sigma copy that carries them."""
    path, branches = tau_branches(g.tau, g.n)
    spath = set(g.critical_path())
    out = []
    for br in branches:
        groups = {}
        for a in br.legs:
            v = g.sigma.vertex_of(a)
            route = g.sigma.path(v, next(iter(spath)))
            top = next(x for x in route if any(y in spath for y in g.sigma.adjacency()[x]) and x not in spath)
            groups.setdefault(top, []).append(a)
        blocks = sorted((sorted(b, key=leg_key) for b in groups.values()), key=lambda b: leg_key(b[0]))
        out.append(blocks)
    return out


def copy_offsets(blocks_per_branch: list, d: int) -> list:
    """Every placement of blocks on copies: block 0 on copy 0, the others on distinct nonzero copies."""
    per = []
    for blocks in blocks_per_branch:
        rest = len(blocks) - 1
        per.append([(0,) + p for p in permutations(range(1, d), rest)])
    out = [[]]
    for choices in per:
        out = [o + [c] for o in out for c in choices]
    return out


def weight_vectors(k: int, max_weight: int = 3) -> list:
    """Primitive weight vectors in {1..max_weight}^k with minimum 1."""
    out = [()]
    for _ in range(k):
        out = [o + (w,) for o in out for w in range(1, max_weight + 1)]
    return [w for w in out if min(w) == 1 and reduce(gcd, w) == 1] if k else [()]


@dataclass
class LeadingSystem:
    """The on-stratum equations for one component and one weight vector."""

    gamma: CombinatorialType
    offsets: list
    weights: tuple
    names: list
    equations: list  # MPolys, one per coordinate tuple
    orders: list
    tuples: list
    family: object  # the PlumbingFamily
    config: object  # plumbed source configuration (series)
    target: dict  # target positions (series)
    chart_groups: list  # (kind, MPolys): distinct values, or distinct d-th powers for kind "power"
    denominators: list  # MPolys that must not vanish
    lambdas: list  # MPolys of the lambda unknowns
    N: int = 8
    meta: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return len(self.names)


class CoverFamilyBuilder:
    """Builds the plumbed family of one component of a stratum."""

    def __init__(self, g: CombinatorialType, offsets: list, weights: tuple, N: int = 8, blocks=None):
        self.g = g
        self.blocks = type_blocks(g) if blocks is None else blocks
        self.d = g.d
        self.n = g.n
        self.offsets = offsets
        self.weights = tuple(weights)
        self.N = N
        self.zeta = root_of_unity(self.d)
        self.path, self.branches = tau_branches(g.tau, g.n)
        self.tau_edges = sorted(g.tau.edges, key=lambda e: sorted(map(str, e)))
        if len(self.weights) != len(self.tau_edges):
            raise ValueError("one weight per tau edge is required")
        self._plan_unknowns()

    # -- unknowns ---------------------------------------------------------

    def _flag_rep(self, w, flag) -> str:
        kind, x = flag
        if kind == "leg":
            return leg_preimage(x, self.n)
        side = self.g.tau.side_of(frozenset((w, x)), x)
        return min((leg_preimage(b, self.n) for b, v in self.g.tau.mk if v in side), key=leg_key)

    def _plan_unknowns(self):
        tau = self.g.tau
        adj = tau.adjacency()
        on_path = set(self.path)
        names = []
        self.lambda_slots = {}
        anchor = next(i for i, w in enumerate(self.weights) if w == 1) if self.weights else None
        for i, e in enumerate(self.tau_edges):
            if i != anchor:
                self.lambda_slots[e] = len(names)
                names.append(f"l{i}")
        # chart plan: vertex -> list of (flag, slot) where slot is "one", "zero", or an index
        self.chart_plan = {}
        self.parent = {}
        for k, w in enumerate(self.path):
            self.parent[w] = self.path[k - 1] if k else None
        for br in self.branches:
            self.parent[br.root] = br.anchor
            stack = [br.root]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y != self.parent[x] and y not in on_path:
                        self.parent[y] = x
                        stack.append(y)
        for w in sorted(tau.vertices, key=str):
            nxt = None
            if w in on_path:
                k = self.path.index(w)
                nxt = self.path[k + 1] if k + 1 < len(self.path) else None
            flags = []
            for b in tau.legs_at(w):
                if b in ("*", "2") and w in on_path:
                    continue
                flags.append(("leg", b))
            for y in adj[w]:
                if y == self.parent[w] or y == nxt:
                    continue
                flags.append(("edge", y))
            flags.sort(key=lambda f: leg_key(self._flag_rep(w, f)))
            fixed = ["one"] if w in on_path else ["zero", "one"]
            plan = []
            for j, f in enumerate(flags):
                if j < len(fixed):
                    plan.append((f, fixed[j]))
                else:
                    plan.append((f, len(names)))
                    names.append(f"x{w}_{self._flag_rep(w, f)}")
            self.chart_plan[w] = plan
        self.names = names or ["u"]
        self.nv = len(self.names)

    # -- ring helpers -----------------------------------------------------

    def const(self, c) -> MPoly:
        return MPoly.const(c, self.nv, self.names)

    def unknown(self, slot) -> MPoly:
        if slot == "one":
            return self.const(Fraction(1))
        if slot == "zero":
            return self.const(Fraction(0))
        return MPoly.var(slot, self.nv, self.names)

    def ser(self, p) -> TruncSeries:
        if not isinstance(p, MPoly):
            p = self.const(p)
        return TruncSeries.from_poly([p], self.N)

    def edge_param(self, e) -> TruncSeries:
        w = self.weights[self.tau_edges.index(e)]
        lam = self.unknown(self.lambda_slots[e]) if e in self.lambda_slots else self.const(Fraction(1))
        zero = self.const(Fraction(0))
        return TruncSeries.from_poly([zero] * w + [lam], self.N)

    def zeta_pow(self, m: int):
        return self.zeta ** (m % self.d) if m % self.d else Fraction(1)

    # -- the family ---------------------------------------------------------

    def build(self) -> LeadingSystem:
        g, d, n = self.g, self.d, self.n
        tau = g.tau
        verts, edges, mk, extra = [], [], {}, {}
        charts = {}
        params = {}
        chart_groups = []
        # where each visible source leg of a branch lives: copy offset
        home = {}
        for br, offs, blocks in zip(self.branches, self.offsets, self.blocks):
            for off, block in zip(offs, blocks):
                for a in block:
                    home[a] = off
        for k, w in enumerate(self.path):
            v = f"p{w}"
            verts.append(v)
            ch = {}
            group = [self.const(Fraction(0))]
            nxt = self.path[k + 1] if k + 1 < len(self.path) else None
            if nxt is not None:
                ch[("node", f"p{nxt}")] = self.ser(0)
                edges.append((v, f"p{nxt}"))
                params[frozenset((v, f"p{nxt}"))] = self.edge_param(frozenset((w, nxt)))
            for b in tau.legs_at(w):
                if b == "*":
                    ch["*"] = INF
                    mk["*"] = v
                elif b == "2":
                    ch["1"] = self.ser(0)
                    mk["1"] = v
            for flag, slot in self.chart_plan[w]:
                x = self.unknown(slot)
                group.append(x)
                kind, y = flag
                if kind == "leg":
                    a = leg_preimage(y, n)
                    mk[a] = v
                    ch[a] = self.ser(x)
                    for j in range(1, d):
                        lab = f"{a}.{j}"
                        extra[lab] = v
                        ch[lab] = self.ser(x * self.zeta_pow(j))
                else:
                    for m in range(d):
                        ch[("node", f"c{y}.{m}")] = self.ser(x * self.zeta_pow(m))
            charts[v] = ch
            chart_groups.append(("power", group))
        for br in self.branches:
            for m in range(d):
                for w in br.vertices:
                    v = f"c{w}.{m}"
                    verts.append(v)
                    par = self.parent[w]
                    pv = f"p{par}" if par in self.path else f"c{par}.{m}"
                    edges.append((pv, v))
                    params[frozenset((pv, v))] = self.edge_param(frozenset((par, w)))
                    ch = {}
                    group = []
                    for flag, slot in self.chart_plan[w]:
                        x = self.unknown(slot)
                        if m == 0:
                            group.append(x)
                        xm = self.ser(x * self.zeta_pow(m))
                        kind, y = flag
                        if kind == "leg":
                            a = leg_preimage(y, n)
                            j = (m - home[a]) % d
                            lab = a if j == 0 else f"{a}.{j}"
                            if j == 0:
                                mk[a] = v
                            else:
                                extra[lab] = v
                            ch[lab] = xm
                        else:
                            ch[("node", f"c{y}.{m}")] = xm
                    charts[v] = ch
                    if m == 0:
                        chart_groups.append(("plain", group))
        sigma = MarkedTree.build(verts, edges, mk)
        fam = PlumbingFamily(sigma, f"p{self.path[0]}", charts, params, extra)
        conf = plumb(fam)
        src = conf.positions
        tgt = {"2": self.ser(0)}
        for i in range(2, n + 1):
            tgt[str(i % n + 1)] = src[str(i)] ** d
        sbar = stabilize(sigma, [str(i) for i in range(1, n + 1)])
        tuples = local_coordinate_tuples(sbar)
        equations, orders, dens = [], [], []
        for T in tuples:
            na, da = cr_pair(*(src[x] for x in T))
            nb, db = cr_pair(*(tgt[x] for x in T))
            e = na * db - nb * da
            if not e.coeffs:
                raise OrderExceedsTruncation(f"equation for {T} vanishes to order {e.val}")
            orders.append(e.val)
            equations.append(e.coeffs[0])
            for s in (da, db):
                if not s.coeffs:
                    raise OrderExceedsTruncation("denominator vanishes to the known order")
                dens.append(s.coeffs[0])
        lambdas = [self.unknown(s) for s in self.lambda_slots.values()]
        return LeadingSystem(
            gamma=g, offsets=self.offsets, weights=self.weights, names=self.names,
            equations=equations, orders=orders, tuples=tuples, family=fam, config=conf,
            target=tgt, chart_groups=chart_groups, denominators=dens, lambdas=lambdas, N=self.N,
        )


def leading_system(g: CombinatorialType, offsets: list, weights: tuple, blocks=None, N: int = 8,
                   max_N: int = 24) -> LeadingSystem:
    """Leading coefficients of the diagonal equations along the weighted test curve.

    The truncation order is raised until every equation has a known
    leading term.
    """
    if blocks is None:
        blocks = type_blocks(g)
    while True:
        b = CoverFamilyBuilder(g, offsets, weights, N, blocks)
        try:
            return b.build()
        except OrderExceedsTruncation:
            if N >= max_N:
                raise
            N *= 2


def components(g: CombinatorialType, blocks=None) -> list:
    """All copy-offset choices for the stratum of g."""
    if blocks is None:
        blocks = type_blocks(g)
    return copy_offsets(blocks, g.d)
