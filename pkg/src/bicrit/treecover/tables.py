"""Reference strata transcribed from the published stratum tables.

Each entry gives tau (target tree over b-marks) and sigma (source tree over
a-marks, "1" meaning a_1 and "i" meaning a_{i,0}) as vertex blocks plus
edges.  Only the trees are recorded; the vertex map and the local degrees
are recovered by ``infer_cover``, which searches for a graph map that is
compatible with the marks and passes ``validate_type``.

For the Per_{d,4} rows the branch copies are listed only when they carry
marks; ``infer_cover`` adds the remaining bare copies for the given d.
"""

from __future__ import annotations

from .covers import CombinatorialType, are_isomorphic_types, leg_image, tau_branches, validate_type
from .trees import MarkedTree


def _chain(prefix, blocks, start=None):
    """Vertices named prefix0, prefix1, ... in a chain, optionally hung from start."""
    verts = {f"{prefix}{i}": list(b) for i, b in enumerate(blocks)}
    names = list(verts)
    edges = list(zip(names, names[1:]))
    if start is not None:
        edges.insert(0, (start, names[0]))
    return verts, edges


def _tree(*parts):
    verts, edges = {}, []
    for v, e in parts:
        verts.update(v)
        edges.extend(e)
    return verts, edges


def _root(legs, name="r"):
    return {name: list(legs)}, []


# Per_{2,5}: strata meeting the closure of the curve.
TABLE_PER25 = {
    "gamma1": dict(
        tau=_tree(_chain("w", ["2*", "1", "5", "34"])),
        sigma=_tree(_root("1*"), _chain("A", ["", "", "2"], "r"), _chain("B", ["5", "4", "3"], "r")),
    ),
    "gamma2": dict(
        tau=_tree(_chain("w", ["2*", "3", "1", "45"])),
        sigma=_tree(_root("1*"), _chain("A", ["", "5", "4"], "r"), _chain("B", ["2", "", "3"], "r")),
    ),
    "gamma3": dict(
        tau=_tree(_root("2*", "w0"), _chain("c", [""], "w0"), _chain("x", ["35"], "c0"), _chain("y", ["14"], "c0")),
        sigma=_tree(
            _root("1*"),
            _chain("Ac", [""], "r"), _chain("Ax", ["4"], "Ac0"), _chain("Ay", [""], "Ac0"),
            _chain("Bc", [""], "r"), _chain("Bx", ["2"], "Bc0"), _chain("By", ["53"], "Bc0"),
        ),
    ),
    "gamma4": dict(
        tau=_tree(_chain("w", ["2*", "34", "15"])),
        sigma=_tree(_root("1*"), _chain("A", ["", "5"], "r"), _chain("B", ["23", "4"], "r")),
    ),
    "gamma5": dict(
        tau=_tree(_chain("w", ["24*", "135"])),
        sigma=_tree(_root("13*"), _chain("A", ["5"], "r"), _chain("B", ["42"], "r")),
    ),
    "gamma6": dict(
        tau=_tree(_chain("w", ["25*", "134"])),
        sigma=_tree(_root("14*"), _chain("A", ["52"], "r"), _chain("B", ["3"], "r")),
    ),
    "gamma7": dict(
        tau=_tree(_chain("w", ["2*", "1345"])),
        sigma=_tree(_root("1*"), _chain("A", [""], "r"), _chain("B", ["2345"], "r")),
    ),
    "gammaI": dict(tau=_tree(_chain("w", ["1*", "2345"])), sigma=_tree(_chain("p", ["5*", "1234"]))),
    "gammaII": dict(tau=_tree(_chain("w", ["3*", "1245"])), sigma=_tree(_chain("p", ["2*", "1345"]))),
    "gammaIII": dict(tau=_tree(_chain("w", ["4*", "1235"])), sigma=_tree(_chain("p", ["3*", "1245"]))),
    "gammaIV": dict(tau=_tree(_chain("w", ["5*", "1234"])), sigma=_tree(_chain("p", ["4*", "1235"]))),
}

# Per_{2,5}: strata meeting the diagonal locus but not the curve.
# The entry "boxed" is the companion stratum of gamma6 discussed with its
# square-root chart. It is recorded with legs 2 and 3 on the degree-2 edge,
# but the tree map forces the critical marks * and 1 onto that edge's ends,
# so the recorded type does not pass the diagonal filter.
TABLE_DIAGONAL_ONLY25 = {
    "degen-gamma4-gamma5": dict(
        tau=_tree(_chain("w", ["2*", "4", "3", "15"])),
        sigma=_tree(_root("1*"), _chain("A", ["", "", "5"], "r"), _chain("B", ["3", "2", "4"], "r")),
    ),
    "degen-gamma5-a": dict(
        tau=_tree(_chain("w", ["2*", "4", "1", "35"])),
        sigma=_tree(_root("1*"), _chain("A", ["3", "5", ""], "r"), _chain("B", ["", "", "24"], "r")),
    ),
    "degen-gamma5-b": dict(
        tau=_tree(_chain("w", ["24", "*", "5", "13"])),
        sigma=_tree(_chain("p", ["13", "*"]), _chain("A", ["", "5"], "p1"), _chain("B", ["4", "2"], "p1")),
    ),
    "degen-gamma5-gammaIII": dict(
        tau=_tree(_chain("w", ["4*", "2", "135"])),
        sigma=_tree(_chain("p", ["3*", "1"]), _chain("A", ["5"], "p1"), _chain("B", ["24"], "p1")),
    ),
    "degen-gamma6-a": dict(
        tau=_tree(_chain("w", ["2*", "5", "1", "34"])),
        sigma=_tree(_root("1*"), _chain("A", ["", "5", "2"], "r"), _chain("B", ["4", "", "3"], "r")),
    ),
    "degen-gamma6-b": dict(
        tau=_tree(_chain("w", ["2*", "5", "4", "13"])),
        sigma=_tree(_root("1*"), _chain("A", ["4", "", "52"], "r"), _chain("B", ["", "3", ""], "r")),
    ),
    "degen-gamma6-c": dict(
        tau=_tree(_chain("w", ["25", "*", "3", "14"])),
        sigma=_tree(_chain("p", ["14", "*"]), _chain("A", ["2", "5"], "p1"), _chain("B", ["", "3"], "p1")),
    ),
    "degen-gamma6-gammaIV": dict(
        tau=_tree(_chain("w", ["5*", "2", "134"])),
        sigma=_tree(_chain("p", ["4*", "1"]), _chain("A", ["52"], "p1"), _chain("B", ["3"], "p1")),
    ),
    "boxed": dict(
        tau=_tree(_chain("w", ["*13", "245"])),
        sigma=_tree(_chain("p", ["*52", "134"])),
    ),
}

# Per_{d,4}: strata meeting the closure of the curve, for every d >= 3
# (gamma1 needs three marked copies and so is absent for d = 2).
TABLE_PERD4 = {
    "gamma1": dict(
        tau=_tree(_chain("w", ["2*", "134"])),
        sigma=_tree(_root("1*"), _chain("A", ["3"], "r"), _chain("B", ["2"], "r"), _chain("C", ["4"], "r")),
    ),
    "gamma2": dict(
        tau=_tree(_chain("w", ["2*", "134"])),
        sigma=_tree(_root("1*"), _chain("A", ["234"], "r")),
    ),
    "gamma3": dict(
        tau=_tree(_chain("w", ["24*", "13"])),
        sigma=_tree(_root("13*"), _chain("A", ["24"], "r")),
    ),
    "gamma4": dict(
        tau=_tree(_chain("w", ["2*", "1", "34"])),
        sigma=_tree(_root("1*"), _chain("A", ["4", "3"], "r"), _chain("B", ["", "2"], "r")),
    ),
    "gamma5": dict(
        tau=_tree(_chain("w", ["2*", "3", "14"])),
        sigma=_tree(_root("1*"), _chain("A", ["2", "3"], "r"), _chain("B", ["", "4"], "r")),
    ),
    "gammaI": dict(tau=_tree(_chain("w", ["3*", "124"])), sigma=_tree(_chain("p", ["2*", "134"]))),
    "gammaII": dict(tau=_tree(_chain("w", ["4*", "123"])), sigma=_tree(_chain("p", ["3*", "124"]))),
    "gammaIII": dict(tau=_tree(_chain("w", ["1*", "234"])), sigma=_tree(_chain("p", ["4*", "123"]))),
}

# Component counts of the Per_{d,4} rows as functions of d.
PERD4_COMPONENTS = {
    "gamma1": lambda d: (d - 1) * (d - 2),
    "gamma2": lambda d: 1,
    "gamma3": lambda d: 1,
    "gamma4": lambda d: d - 1,
    "gamma5": lambda d: d - 1,
    "gammaI": lambda d: 1,
    "gammaII": lambda d: 1,
    "gammaIII": lambda d: 1,
}

# Example of a valid type whose stabilizations disagree (sigma-bar is the
# chain 45|1|23, tau-bar is 234|15).
FIG_NEGATIVE = dict(
    tau=_tree(_chain("w", ["2*", "34", "15"])),
    sigma=_tree(_root("1*"), _chain("A", ["", "54"], "r"), _chain("B", ["23", ""], "r")),
)


def _marked(spec) -> MarkedTree:
    verts, edges = spec
    blocks = {v: [c for c in legs] for v, legs in verts.items()}
    return MarkedTree.from_blocks(blocks, edges)


def _pad_copies(sigma: MarkedTree, tau: MarkedTree, d: int, n: int) -> MarkedTree:
    """Add bare copies of each tau branch so that every branch has d copies.

    Each listed copy carries at least one mark, which tells which branch
    of tau it lies over.
    """
    _, branches = tau_branches(tau, n)
    crit = sigma.path(sigma.vertex_of("*"), sigma.vertex_of("1"))
    adj = sigma.adjacency()
    verts = {v: sigma.legs_at(v) for v in sigma.vertices}
    edges = [tuple(e) for e in sigma.edges]
    count = [0] * len(branches)
    for anchor in crit:
        for c in adj[anchor]:
            if c in crit:
                continue
            legs = [a for v in _hanging(adj, c, anchor) for a in sigma.legs_at(v)]
            if not legs:
                raise ValueError("listed copies must carry a mark")
            w = tau.vertex_of(leg_image(legs[0], n))
            k = next(i for i, br in enumerate(branches) if w in br.vertices)
            count[k] += 1
    tadj = tau.adjacency()
    for k, br in enumerate(branches):
        anchor = crit[tau.path(tau.vertex_of("*"), tau.vertex_of("2")).index(br.anchor)]
        for m in range(d - count[k]):
            name = {w: f"bare{k}.{m}.{w}" for w in br.vertices}
            for w in br.vertices:
                verts[name[w]] = []
            edges.append((anchor, name[br.root]))
            inside = set(br.vertices)
            edges.extend((name[x], name[y]) for x in br.vertices for y in tadj[x]
                         if y in inside and str(x) < str(y))
    return MarkedTree.from_blocks(verts, edges)


def _hanging(adj, root, parent):
    seen = [root]
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y != parent and y not in seen:
                seen.append(y)
                stack.append(y)
    return seen


def infer_cover(sigma: MarkedTree, tau: MarkedTree, d: int, n: int) -> CombinatorialType:
    """Recover phi and deg from the two trees by backtracking.

    Vertices of sigma are assigned to tau vertices one at a time, in an
    order where each vertex after the first is adjacent to an assigned one;
    marks pin their vertex, edges must map to edges, and the degree-d
    vertices are those on the path from mk(a_*) to mk(a_1).  The first
    assignment that passes ``validate_type`` is returned.
    """
    crit = set(sigma.path(sigma.vertex_of("*"), sigma.vertex_of("1")))
    deg = {v: (d if v in crit else 1) for v in sigma.vertices}
    for e in sigma.edges:
        deg[e] = d if e <= crit else 1
    pinned = {}
    for a in sigma.legs:
        pinned[sigma.vertex_of(a)] = tau.vertex_of(leg_image(a, n))
    adj = sigma.adjacency()
    tadj = tau.adjacency()
    start = sigma.vertex_of("*")
    order, seen = [start], {start}
    i = 0
    while i < len(order):
        for y in adj[order[i]]:
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1

    def extend(k, phi):
        if k == len(order):
            phi_e = {e: frozenset(phi[x] for x in e) for e in sigma.edges}
            g = CombinatorialType(sigma, tau, dict(phi), phi_e, deg, d, n)
            return g if not validate_type(g) else None
        v = order[k]
        if k == 0:
            cands = [pinned[v]]
        else:
            parent = next(y for y in adj[v] if y in phi)
            cands = tadj[phi[parent]]
            if v in pinned:
                cands = [c for c in cands if c == pinned[v]]
        for c in cands:
            phi[v] = c
            found = extend(k + 1, phi)
            if found is not None:
                return found
            del phi[v]
        return None

    g = extend(0, {})
    if g is None:
        raise ValueError("no admissible cover structure fits these trees")
    return g


def reference_type(spec: dict, d: int, n: int) -> CombinatorialType:
    sigma = _marked(spec["sigma"])
    tau = _marked(spec["tau"])
    if n == 4:
        sigma = _pad_copies(sigma, tau, d, n)
    return infer_cover(sigma, tau, d, n)



def reference_tables(d: int, n: int) -> dict:
    """Named reference strata for (d, n): the curve table plus, for n = 5, the diagonal-only table."""
    if n == 5 and d == 2:
        return {**TABLE_PER25, **TABLE_DIAGONAL_ONLY25}
    if n == 4:
        return {k: v for k, v in TABLE_PERD4.items() if not (k == "gamma1" and d < 3)}
    raise ValueError(f"no reference tables for (d, n) = ({d}, {n})")


def name_records(records: list, d: int, n: int) -> dict:
    """Attach reference names to enumerated records; returns name -> matching records."""
    out = {}
    for name, spec in reference_tables(d, n).items():
        try:
            g = reference_type(spec, d, n)
        except ValueError:
            out[name] = []
            continue
        hits = [r for r in records if are_isomorphic_types(r.type, g)]
        for r in hits:
            r.name = name
        out[name] = hits
    return out
