"""Combinatorial types of admissible covers over stable marked trees.

Source marks are labelled "*" (a_*), "1" (a_1) and "i" (a_{i,0}); target
marks are "*" (b_*) and "j" (b_j).  The cover sends a_* to b_*, a_1 to
b_2 and a_{i,0} to b_{i+1 mod n}; a_* and a_1 are the two critical
points, each of local degree d.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import prod

from .trees import (
    MarkedTree,
    are_isomorphic,
    canonical_form,
    enumerate_stable_trees,
    is_stable,
    leg_key,
    stabilize,
)

SUPPORTED_N = (4, 5)
MAX_D = 12


def source_labels(n: int) -> list:
    return ["*"] + [str(i) for i in range(1, n + 1)]


target_labels = source_labels


def leg_image(label: str, n: int) -> str:
    """Target mark under the cover: a_* -> b_*, a_1 -> b_2, a_{i,0} -> b_{i+1 mod n}."""
    if label == "*":
        return "*"
    if label == "1":
        return "2"
    return str(int(label) % n + 1)


def leg_preimage(label: str, n: int) -> str:
    """The visible source mark lying over a target mark."""
    if label == "*":
        return "*"
    if label == "2":
        return "1"
    return str((int(label) - 2) % n + 1)


def leg_degree(label: str, d: int) -> int:
    """Local degree of the cover at a source mark."""
    return d if label in ("*", "1") else 1


@dataclass
class CombinatorialType:
    """gamma = (sigma, tau, phi, deg) describing a boundary stratum."""

    sigma: MarkedTree
    tau: MarkedTree
    phi_v: dict
    phi_e: dict
    deg: dict  # sigma vertex -> int, sigma edge (frozenset) -> int
    d: int
    n: int

    def deg_leg(self, label: str) -> int:
        return leg_degree(label, self.d)

    def full_valence(self, v) -> int:
        """Valence of a sigma vertex counting the unlabelled preimage marks a_{i,k}, k >= 1."""
        edges = sum(1 for e in self.sigma.edges if v in e)
        w = self.phi_v[v]
        legs = sum(self.deg[v] // leg_degree(leg_preimage(b, self.n), self.d) for b in self.tau.legs_at(w))
        return edges + legs

    def critical_path(self) -> list:
        return self.sigma.path(self.sigma.vertex_of("*"), self.sigma.vertex_of("1"))

    def key(self) -> tuple:
        """Isomorphism invariant: canonical tau plus a sigma encoding decorated by (deg, phi)."""
        tags = tau_vertex_tags(self.tau)
        sig = canonical_form(self.sigma, vertex_label=lambda v: (self.deg[v], tags[self.phi_v[v]]))
        return (self.d, self.n, canonical_form(self.tau), sig)

    def __str__(self):
        return f"tau={self.tau} sigma={self.sigma}"


def tau_vertex_tags(tau: MarkedTree) -> dict:
    """Name each vertex of a leg-labelled stable tree by its legs and adjacent splits.

    A stable tree with labelled legs has no nontrivial automorphism, so the
    tags are distinct and independent of vertex ids.
    """
    tags = {}
    for v in tau.vertices:
        legs = tuple(leg_key(x) for x in tau.legs_at(v))
        sp = sorted(tuple(sorted(leg_key(x) for x in tau.split(e))) for e in tau.edges if v in e)
        tags[v] = (legs, tuple(sp))
    return tags


def are_isomorphic_types(g1: CombinatorialType, g2: CombinatorialType) -> bool:
    return g1.key() == g2.key()


# -- validation ------------------------------------------------------------


def validate_type(g: CombinatorialType, d: int | None = None, n: int | None = None) -> list:
    """Return the violated clauses as (number, message); empty means valid.

    Clauses: (1) phi is a surjective graph map; (2) marks are compatible and
    carry the prescribed degrees; (3) fibres over tau edges and vertices have
    total degree d; (4) the degree-d vertices are exactly the path from
    mk(a_*) to mk(a_1); (5) each degree-d vertex has exactly two degree-d
    flags; (6) sigma (with its unlabelled preimage marks) and tau are stable.
    """
    d = g.d if d is None else d
    n = g.n if n is None else n
    s, t = g.sigma, g.tau
    bad = []

    # (1) graph map, surjective on vertices and edges
    ok = set(g.phi_v) == set(s.vertices) and all(g.phi_v[v] in t.vertices for v in s.vertices)
    if ok:
        for e in s.edges:
            u, v = tuple(e)
            image = frozenset((g.phi_v[u], g.phi_v[v]))
            if g.phi_e.get(e) != image or image not in t.edges:
                ok = False
        ok = ok and set(g.phi_v.values()) == set(t.vertices) and set(g.phi_e.values()) == set(t.edges)
    if not ok:
        bad.append((1, "phi is not a surjective graph homomorphism"))
        return bad

    # (2) markings
    msgs = []
    if s.legs != frozenset(source_labels(n)):
        msgs.append("sigma legs differ from A_{n,0}")
    if t.legs != frozenset(target_labels(n)):
        msgs.append("tau legs differ from B_n")
    if not msgs:
        for a in s.legs:
            if g.phi_v[s.vertex_of(a)] != t.vertex_of(leg_image(a, n)):
                msgs.append(f"mark {a} is not over {leg_image(a, n)}")
            elif g.deg[s.vertex_of(a)] < leg_degree(a, d):
                msgs.append(f"mark {a} needs local degree {leg_degree(a, d)}")
    if msgs:
        bad.append((2, "; ".join(msgs)))

    # (3) fibre degrees
    msgs = []
    for w in t.vertices:
        tot = sum(g.deg[v] for v in s.vertices if g.phi_v[v] == w)
        if tot != d:
            msgs.append(f"vertex fibre over {w} has degree {tot}")
    for eta in t.edges:
        tot = sum(g.deg[e] for e in s.edges if g.phi_e[e] == eta)
        if tot != d:
            msgs.append(f"edge fibre over {sorted(map(str, eta))} has degree {tot}")
    if msgs:
        bad.append((3, "; ".join(msgs)))

    # (4) degree-d vertices form the critical path
    if "*" in s.legs and "1" in s.legs:
        path = set(g.critical_path())
        high = {v for v in s.vertices if g.deg[v] == d}
        if path != high:
            bad.append((4, "degree-d vertices are not the path from mk(a_*) to mk(a_1)"))

    # (5) two degree-d flags at each degree-d vertex
    msgs = []
    for v in s.vertices:
        if g.deg[v] != d:
            continue
        flags = sum(1 for a in s.legs_at(v) if leg_degree(a, d) == d)
        flags += sum(1 for e in s.edges if v in e and g.deg[e] == d)
        if flags != 2:
            msgs.append(f"vertex {v} has {flags} degree-d flags")
    if msgs:
        bad.append((5, "; ".join(msgs)))

    # (6) stability
    if not is_stable(t):
        bad.append((6, "tau is unstable"))
    elif not bad and any(g.full_valence(v) < 3 for v in s.vertices):
        bad.append((6, "sigma is unstable"))
    return bad


def is_valid_type(g: CombinatorialType) -> bool:
    return not validate_type(g)


def source_bar(g: CombinatorialType) -> MarkedTree:
    """Stabilization of sigma to a_1, a_{2,0}, ..., a_{n,0}, as an [n]-marked tree."""
    return stabilize(g.sigma, [str(i) for i in range(1, g.n + 1)])


def target_bar(g: CombinatorialType) -> MarkedTree:
    """Stabilization of tau to b_1, ..., b_n, as an [n]-marked tree."""
    return stabilize(g.tau, [str(i) for i in range(1, g.n + 1)])


def diagonal_filter(g: CombinatorialType) -> bool:
    """True iff the two [n]-marked stabilizations agree (a_1 <-> 1, a_{i,0} <-> i, b_i <-> i)."""
    return are_isomorphic(source_bar(g), target_bar(g))


# -- enumeration -----------------------------------------------------------


def set_partitions(items: list, max_blocks: int):
    """Set partitions of items into at most max_blocks blocks, blocks in first-element order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest, max_blocks):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        if len(part) < max_blocks:
            yield [[first]] + part


def falling(a: int, k: int) -> int:
    return prod(range(a - k + 1, a + 1)) if k > 0 else 1


@dataclass
class Branch:
    """A component of tau minus the critical path, hanging off path vertex ``anchor``."""

    anchor: object
    root: object
    vertices: list
    legs: list  # visible source labels over this branch


def tau_branches(tau: MarkedTree, n: int) -> tuple:
    path = tau.path(tau.vertex_of("*"), tau.vertex_of("2"))
    on_path = set(path)
    adj = tau.adjacency()
    branches = []
    for p in path:
        for r in adj[p]:
            if r in on_path:
                continue
            seen = [r]
            stack = [r]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y != p and y not in seen:
                        seen.append(y)
                        stack.append(y)
            legs = sorted((leg_preimage(b, n) for v in seen for b in tau.legs_at(v)), key=leg_key)
            branches.append(Branch(p, r, seen, legs))
    return path, branches


def build_type(tau: MarkedTree, blocks: list, d: int, n: int) -> CombinatorialType:
    """Lift tau to the cover whose branch copies carry the given leg blocks.

    ``blocks[k]`` lists the visible legs on each copy of branch k; copies
    beyond the listed blocks are bare.
    """
    path, branches = tau_branches(tau, n)
    verts, edges, mk = [], [], {}
    phi_v, deg = {}, {}
    for w in path:
        v = f"p{w}"
        verts.append(v)
        phi_v[v] = w
        deg[v] = d
        for b in tau.legs_at(w):
            mk[leg_preimage(b, n)] = v
    for a, b in zip(path, path[1:]):
        edges.append((f"p{a}", f"p{b}"))
    adj = tau.adjacency()
    for br, part in zip(branches, blocks):
        if len(part) > d:
            raise ValueError("more blocks than copies")
        home = {}
        for m, block in enumerate(part):
            for leg in block:
                home[leg] = m
        for m in range(d):
            for w in br.vertices:
                v = f"c{w}.{m}"
                verts.append(v)
                phi_v[v] = w
                deg[v] = 1
                for b in tau.legs_at(w):
                    a = leg_preimage(b, n)
                    if home.get(a) == m:
                        mk[a] = v
            edges.append((f"p{br.anchor}", f"c{br.root}.{m}"))
            inside = set(br.vertices)
            for x in br.vertices:
                for y in adj[x]:
                    if y in inside and str(x) < str(y):
                        edges.append((f"c{x}.{m}", f"c{y}.{m}"))
    sigma = MarkedTree.build(verts, edges, mk)
    phi_e = {}
    for e in sigma.edges:
        u, v = tuple(e)
        phi_e[e] = frozenset((phi_v[u], phi_v[v]))
        deg[e] = d if deg[u] == d and deg[v] == d else 1
    return CombinatorialType(sigma, tau, phi_v, phi_e, deg, d, n)


def component_count_formula(branch_blocks: list, d: int) -> int:
    """Strata represented once the unlabelled preimage marks are labelled.

    Each branch has d interchangeable copies (permuted by the deck rotation
    at its anchor); b nonempty blocks can be placed on distinct copies in
    d(d-1)...(d-b+1) ways, and the rotation identifies d of them.
    """
    return prod(falling(d - 1, len(blocks) - 1) for blocks in branch_blocks)


def component_count_bruteforce(branch_blocks: list, d: int) -> int:
    """The same count by listing copy assignments and dividing out the rotation."""
    total = 1
    for blocks in branch_blocks:
        legs = [(leg, k) for k, blk in enumerate(blocks) for leg in blk]
        count = 0
        for assign in _assignments(len(legs), d):
            ok = True
            for i in range(len(legs)):
                for j in range(i + 1, len(legs)):
                    same_block = legs[i][1] == legs[j][1]
                    if same_block != (assign[i] == assign[j]):
                        ok = False
            count += ok
        total *= count // d
    return total


def _assignments(k: int, d: int):
    if k == 0:
        yield ()
        return
    for rest in _assignments(k - 1, d):
        for m in range(d):
            yield rest + (m,)


@dataclass
class StratumRecord:
    type: CombinatorialType
    dimension: int
    component_count: int
    passes_diagonal: bool
    blocks: list = field(default_factory=list)
    name: str = ""

    def summary(self) -> dict:
        return {
            "name": self.name,
            "tau": str(self.type.tau),
            "sigma": str(self.type.sigma),
            "dimension": self.dimension,
            "component_count": self.component_count,
            "passes_diagonal": self.passes_diagonal,
        }


def stratum_dimension(tau: MarkedTree) -> int:
    """Sum of local dimensions val(w) - 3 over tau vertices.

    Both factors of the product decomposition (the Hurwitz factor over a
    critical-path vertex and M_{0,val(w)} elsewhere) have dimension val(w) - 3,
    since a bicritical cover over a vertex is fixed by its target points.
    """
    return sum(tau.valence(w) - 3 for w in tau.vertices)


def enumerate_types(d: int, n: int) -> list:
    """All valid combinatorial types with at least one node, up to isomorphism."""
    if n not in SUPPORTED_N or not (2 <= d <= MAX_D):
        raise ValueError(f"unsupported (d, n) = ({d}, {n}); need n in {SUPPORTED_N} and 2 <= d <= {MAX_D}")
    out = []
    seen = set()
    for tau in enumerate_stable_trees(target_labels(n)):
        if not tau.edges:
            continue
        _, branches = tau_branches(tau, n)
        choices = [list(set_partitions(br.legs, d)) for br in branches]
        for combo in _product(choices):
            g = build_type(tau, combo, d, n)
            problems = validate_type(g)
            if problems:
                raise AssertionError(f"constructed type failed validation: {problems}")
            k = g.key()
            if k in seen:
                continue
            seen.add(k)
            out.append(StratumRecord(
                type=g,
                dimension=stratum_dimension(tau),
                component_count=component_count_formula(combo, d),
                passes_diagonal=diagonal_filter(g),
                blocks=combo,
            ))
    return out


def _product(lists):
    if not lists:
        yield []
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield [head] + rest


# -- output ----------------------------------------------------------------


def to_dot(g: CombinatorialType, name: str = "gamma") -> str:
    """Two-row diagram: sigma above tau, phi as dashed arrows, degree-d edges bold."""
    lines = [f'digraph "{name}" {{', "  rankdir=TB;", "  node [shape=circle, label=\"\"];"]

    def node(prefix, t, v, bold):
        legs = ",".join(t.legs_at(v))
        style = ", penwidth=2" if bold else ""
        return f'    "{prefix}{v}" [xlabel="{legs}"{style}];'

    lines.append('  subgraph cluster_sigma { label="sigma";')
    for v in sorted(g.sigma.vertices, key=str):
        lines.append(node("s_", g.sigma, v, g.deg[v] == g.d))
    for e in sorted(g.sigma.edges, key=lambda e: sorted(map(str, e))):
        u, v = sorted(e, key=str)
        style = " [penwidth=3]" if g.deg[e] == g.d else ""
        lines.append(f'    "s_{u}" -> "s_{v}" [dir=none]{style};')
    lines.append("  }")
    lines.append('  subgraph cluster_tau { label="tau";')
    for v in sorted(g.tau.vertices, key=str):
        lines.append(node("t_", g.tau, v, False))
    for e in sorted(g.tau.edges, key=lambda e: sorted(map(str, e))):
        u, v = sorted(e, key=str)
        lines.append(f'    "t_{u}" -> "t_{v}" [dir=none];')
    lines.append("  }")
    for v in sorted(g.sigma.vertices, key=str):
        lines.append(f'  "s_{v}" -> "t_{g.phi_v[v]}" [style=dashed, constraint=true];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def records_to_csv(records: list) -> str:
    buf = io.StringIO()
    cols = ["index", "name", "tau", "sigma", "dimension", "component_count", "passes_diagonal"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for i, r in enumerate(records):
        row = r.summary()
        row["index"] = i
        w.writerow(row)
    return buf.getvalue()
