from __future__ import annotations

import dataclasses
import itertools
import random

import pytest

from bicrit.treecover import (
    FIG_NEGATIVE,
    PERD4_COMPONENTS,
    TABLE_PER25,
    MarkedTree,
    are_isomorphic,
    canonical_form,
    component_count_bruteforce,
    component_count_formula,
    diagonal_filter,
    enumerate_stable_trees,
    enumerate_types,
    is_stable,
    name_records,
    records_to_csv,
    reference_type,
    source_bar,
    stabilize,
    target_bar,
    to_dot,
    validate_type,
)

LABELS5 = ["1", "2", "3", "4", "5"]


def tree(blocks, edges=()):
    return MarkedTree.from_blocks(blocks, edges)


def test_stability_examples():
    assert is_stable(tree({"v": LABELS5}))
    assert is_stable(tree({"a": ["1", "2"], "b": ["3", "4", "5"]}, [("a", "b")]))
    assert not is_stable(tree({"a": ["1"], "b": ["3", "4", "5"]}, [("a", "b")]))


def test_stabilize_fixes_stable_trees():
    t = tree({"a": ["1", "2"], "b": ["3", "4", "5"]}, [("a", "b")])
    assert stabilize(t, LABELS5) == t


def test_stabilize_chain_with_bare_middle_is_confluent():
    t = tree({"a": ["1", "2"], "m": [], "b": ["3", "4", "5"]}, [("a", "m"), ("m", "b")])
    results = {canonical_form(stabilize(t, LABELS5, order=o)) for o in (None, lambda moves: moves[-1])}
    assert len(results) == 1
    assert canonical_form(stabilize(t, LABELS5)) == canonical_form(
        tree({"a": ["1", "2"], "b": ["3", "4", "5"]}, [("a", "b")]))


def test_negative_example_stabilizations():
    g = reference_type(FIG_NEGATIVE, 2, 5)
    assert validate_type(g) == []
    assert not diagonal_filter(g)
    chain = tree({"x": ["4", "5"], "y": ["1"], "z": ["2", "3"]}, [("x", "y"), ("y", "z")])
    assert are_isomorphic(source_bar(g), chain)
    assert are_isomorphic(target_bar(g), tree({"u": ["2", "3", "4"], "w": ["1", "5"]}, [("u", "w")]))


def test_isomorphism_examples():
    t = tree({"a": ["1", "2"], "b": ["3", "4", "5"]}, [("a", "b")])
    assert are_isomorphic(t, t.relabel_vertices({"a": "q", "b": "p"}))
    assert not are_isomorphic(t, tree({"a": ["1", "3"], "b": ["2", "4", "5"]}, [("a", "b")]))


def _brute_isomorphic(t1: MarkedTree, t2: MarkedTree) -> bool:
    v1, v2 = sorted(t1.vertices, key=str), sorted(t2.vertices, key=str)
    if len(v1) != len(v2) or len(t1.edges) != len(t2.edges):
        return False
    m1, m2 = t1.mk_map(), t2.mk_map()
    if set(m1) != set(m2):
        return False
    for perm in itertools.permutations(v2):
        f = dict(zip(v1, perm))
        if all(f[m1[leg]] == m2[leg] for leg in m1) and \
                {frozenset(f[x] for x in e) for e in t1.edges} == set(t2.edges):
            return True
    return False


def test_isomorphism_matches_bijection_search():
    rng = random.Random(3)
    trees = enumerate_stable_trees(LABELS5 + ["6"])
    for _ in range(60):
        a, b = rng.choice(trees), rng.choice(trees)
        perm = dict(zip(LABELS5 + ["6"], rng.sample(LABELS5 + ["6"], 6)))
        b2 = b.relabel_legs(perm) if rng.random() < 0.5 else b
        assert are_isomorphic(a, b2) == _brute_isomorphic(a, b2)


@pytest.mark.parametrize("k, count", [(3, 1), (4, 4), (5, 26)])
def test_stable_tree_counts(k, count):
    trees = enumerate_stable_trees(LABELS5[:k])
    assert len(trees) == count
    assert all(is_stable(t) for t in trees)
    if k == 5:
        assert sum(1 for t in trees if len(t.edges) == 1) == 10


def test_table_types_are_valid():
    for spec in TABLE_PER25.values():
        assert validate_type(reference_type(spec, 2, 5)) == []


def test_degree_flip_is_invalid():
    g = reference_type(TABLE_PER25["gamma1"], 2, 5)
    edge = next(iter(g.sigma.edges))
    bad = dataclasses.replace(g, deg={**g.deg, edge: 3 - g.deg[edge]})
    assert validate_type(bad)


def test_filter_examples():
    assert diagonal_filter(reference_type(TABLE_PER25["gamma4"], 2, 5))


@pytest.fixture(scope="module")
def records25():
    return enumerate_types(2, 5)


def test_enumeration_regression_counts(records25):
    assert len(records25) == 666
    assert sum(r.passes_diagonal for r in records25) == 19


def test_component_count_routes_agree(records25):
    for r in records25[:200]:
        assert component_count_formula(r.blocks, 2) == component_count_bruteforce(r.blocks, 2)
    for d in (3, 4):
        for r in enumerate_types(d, 4):
            assert component_count_formula(r.blocks, d) == component_count_bruteforce(r.blocks, d)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_perd4_shapes(d):
    recs = [r for r in enumerate_types(d, 4) if r.passes_diagonal]
    named = name_records(recs, d, 4)
    for name, hits in named.items():
        assert len(hits) == 1, name
        assert hits[0].component_count == PERD4_COMPONENTS[name](d)
    assert ("gamma1" in named) == (d >= 3)


def test_unsupported_parameters():
    with pytest.raises(ValueError):
        enumerate_types(1, 5)
    with pytest.raises(ValueError):
        enumerate_types(2, 6)


def test_exports(records25):
    passing = [r for r in records25 if r.passes_diagonal]
    csv_text = records_to_csv(passing)
    assert csv_text.count("\n") == len(passing) + 1
    dot = to_dot(passing[0].type)
    assert dot.strip().endswith("}")
    assert "--" in dot or "->" in dot
