from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicrit.moduli import (
    INF,
    Configuration,
    HPoint,
    InteriorSymbol,
    InvalidHPoint,
    boundary_cross_ratio,
    check_node_param,
    check_rewrite,
    cr_rewrite,
    cross_ratio,
    cross_ratio_values,
    default_charts,
    local_coordinate_tuples,
    node_param_choice,
    pi_maps,
    plumb,
    power_relation_gap,
    separating_edges,
    series_cr,
    series_cr_limit,
    series_cr_order,
    uniform_series_family,
)
from bicrit.treecover import TABLE_PER25, MarkedTree, reference_type, stabilize

coord = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


def _spread(points, gap=1e-2):
    return all(abs(a - b) > gap for a, b in itertools.combinations(points, 2))


def test_normalization():
    assert cross_ratio_values(INF, 0, 1, 7) == 7


@given(st.tuples(coord, coord, coord, coord))
@settings(max_examples=60, deadline=None)
def test_permutation_orbit_closes(pts):
    if not _spread(pts):
        return
    lam = cross_ratio_values(*pts)
    orbit = [lam, 1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam]
    for perm in itertools.permutations(pts):
        v = cross_ratio_values(*perm)
        assert min(abs(v - w) for w in orbit) < 1e-6 * max(1.0, abs(v))


@given(st.tuples(coord, coord, coord, coord, coord))
@settings(max_examples=60, deadline=None)
def test_functional_equations(pts):
    if not _spread(pts):
        return
    c = Configuration(dict(zip("12345", pts)))
    cr = lambda *ls: complex(cross_ratio(c, *ls))  # noqa: E731
    y4, y5 = cr("1", "2", "3", "4"), cr("1", "2", "3", "5")
    assert abs(cr("1", "3", "4", "2") - 1 / (1 - y4)) < 1e-6 * max(1.0, abs(1 / (1 - y4)))
    rhs = (y5 - 1) / (y4 - 1)
    assert abs(cr("1", "3", "4", "5") - rhs) < 1e-6 * max(1.0, abs(rhs))


def test_rewrite_examples():
    r = cr_rewrite(("1", "3", "4", "2"))
    assert abs(r.eval((3,)) - 1 / (1 - 3)) < 1e-15
    r = cr_rewrite(("4", "1", "2", "3"))
    assert abs(r.eval((3,)) - 3 / (3 - 1)) < 1e-15
    assert cr_rewrite(("1", "2", "3", "4")).eval((7,)) == 7


def test_rewrites_check_out_on_random_configurations():
    rng = random.Random(0)
    tuples = list(itertools.permutations("12345", 4))
    for tup in rng.sample(tuples, 30):
        assert check_rewrite(tup)


def test_boundary_examples():
    t = MarkedTree.from_blocks({"a": ["1", "2"], "b": ["3", "4"]}, [("a", "b")])
    assert boundary_cross_ratio(t, "1", "3", "2", "4") == 0
    g = reference_type(TABLE_PER25["gamma1"], 2, 5)
    assert boundary_cross_ratio(g.sigma, "1", "3", "5", "4") == 0
    one = MarkedTree.from_blocks({"v": ["1", "2", "3", "4"]}, [])
    assert isinstance(boundary_cross_ratio(one, "1", "2", "3", "4"), InteriorSymbol)


def _table_trees():
    for name, spec in TABLE_PER25.items():
        g = reference_type(spec, 2, 5)
        yield f"{name}-sigma", g.sigma
        yield f"{name}-tau", g.tau


@pytest.mark.parametrize("name, t", list(_table_trees()), ids=[n for n, _ in _table_trees()])
def test_plumbing_limits_and_orders(name, t):
    """Plumbed cross-ratios tend to the boundary values, with order = number of separating edges."""
    root = t.vertex_of("*")
    fam = uniform_series_family(t, root, default_charts(t, root))
    c = plumb(fam)
    for tup in itertools.permutations(sorted(t.legs), 4):
        b = boundary_cross_ratio(t, *tup)
        num, den = series_cr(c, *tup)
        v = series_cr_limit(num, den)
        if isinstance(b, InteriorSymbol):
            assert v is not INF and v not in (0, 1)
        else:
            assert b == v
        if b == 0:
            assert series_cr_order(num, den) == len(separating_edges(t, tup))
        elif b is INF:
            assert series_cr_order(num, den) == -len(separating_edges(t, (tup[0], tup[1], tup[3], tup[2])))


def test_gamma4_sigma_smoothing_order():
    g = reference_type(TABLE_PER25["gamma4"], 2, 5)
    t = g.sigma
    root = t.vertex_of("*")
    c = plumb(uniform_series_family(t, root, default_charts(t, root)))
    num, den = series_cr(c, "2", "1", "3", "5")
    assert series_cr_order(num, den) == 1


def test_node_parameters_and_local_coordinates():
    for _, t in _table_trees():
        s = stabilize(t, [l for l in t.legs if l != "*"] + ["*"])
        choice = node_param_choice(s)
        for e, tup in choice.tuples.items():
            assert check_node_param(s, e, tup)
            assert separating_edges(s, tup) == [e]
        assert len(local_coordinate_tuples(s)) == len(s.legs) - 3


def test_node_parameters_need_a_stable_tree():
    g = reference_type(TABLE_PER25["gamma1"], 2, 5)
    with pytest.raises(ValueError):
        node_param_choice(g.sigma)


@given(st.tuples(coord, coord, coord))
@settings(max_examples=50, deadline=None)
def test_power_relation_on_random_points(xs):
    try:
        h = HPoint.from_list(2, xs)
        h.check(tol=1e-3)
    except InvalidHPoint:
        return
    for i in range(3, 6):
        for k in range(2):
            assert power_relation_gap(h, i, k) < 1e-8 * max(1.0, abs(xs[0]) ** 8)


def test_walls_are_rejected():
    with pytest.raises(InvalidHPoint):
        HPoint.from_list(2, [1, 2, 3])
    with pytest.raises(InvalidHPoint):
        HPoint.from_list(2, [2, -2, 3])


def test_pi_maps_agree_on_curve_samples(samples):
    for h in samples:
        assert pi_maps(h).max_gap() < 1e-10
