"""Acceptance suite: one PASS/FAIL line per criterion, collected in the terminal summary.

Criteria 1 and 6 contain a literal count or formula that the mathematics does
not support. Each has a strict xfail that records the literal result as FAIL,
together with a regular test of the statement that does hold.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from bicrit.elliptic import (
    MINIMAL_AINVS,
    MINIMAL_CHANGE,
    PER25_CUBIC,
    REFERENCE_PERIODS,
    ExceedsBound,
    WeierstrassCurve,
    SingularCurve,
    fit_per25_cubic,
    is_cyclic_group,
    labelled_punctures,
    period_convention,
    periods,
    point_order,
    puncture_points,
    quotient_relation,
    weierstrass_from_plane,
)
from bicrit.exactnum import poly_discriminant, quadratic_field
from bicrit.moduli import (
    HPoint,
    InteriorSymbol,
    InvalidHPoint,
    INF,
    boundary_cross_ratio,
    cross_ratio_values,
    default_charts,
    plumb,
    power_relation_gap,
    separating_edges,
    series_cr,
    series_cr_limit,
    series_cr_order,
    uniform_series_family,
)
from bicrit.percurve import (
    disc_formula_corrected,
    disc_formula_literal,
    g_poly,
    perd4_report,
    rho_degree,
)
from bicrit.rendercli import (
    Attracted,
    Pole,
    RenderConfig,
    classify,
    render,
    wp,
)
from bicrit.treecover import (
    FIG_NEGATIVE,
    PERD4_COMPONENTS,
    TABLE_PER25,
    are_isomorphic_types,
    diagonal_filter,
    enumerate_types,
    name_records,
    reference_type,
)
from bicrit.treecover.tables import TABLE_DIAGONAL_ONLY25

I = quadratic_field(-1).gen()
R5 = quadratic_field(5).gen()


@pytest.fixture(scope="module")
def passing25():
    return [r for r in enumerate_types(2, 5) if r.passes_diagonal]


# -- 1. strata enumeration --------------------------------------------------------------------


def _perd4_shapes_ok() -> bool:
    for d in range(2, 7):
        named = name_records([r for r in enumerate_types(d, 4) if r.passes_diagonal], d, 4)
        if ("gamma1" in named) != (d >= 3):
            return False
        for name, hits in named.items():
            if len(hits) != 1 or hits[0].component_count != PERD4_COMPONENTS[name](d):
                return False
    return True


@pytest.mark.xfail(strict=True, reason="one drawn diagonal-only entry fails the filter; 19 types pass, not 20")
def test_criterion_1_literal_table_count(passing25, acceptance):
    named = name_records(passing25, 2, 5)
    matched = sum(1 for hits in named.values() if len(hits) == 1)
    ok = len(passing25) == 20 and matched == 20
    acceptance(
        1,
        "strata enumeration",
        ok,
        f"{len(passing25)} types pass the filter against 11 + 9 = 20 drawn; {matched} entries matched, "
        "the recorded entry 'boxed' fails the filter; Per_(d,4) shapes and negative example correct",
    )
    assert ok


def test_criterion_1_enumeration_matches_tables_except_boxed(passing25):
    named = name_records(passing25, 2, 5)
    assert len(passing25) == 19
    assert all(len(hits) == 1 for name, hits in named.items() if name != "boxed")
    assert named["boxed"] == []
    assert not diagonal_filter(reference_type(TABLE_DIAGONAL_ONLY25["boxed"], 2, 5))
    negative = reference_type(FIG_NEGATIVE, 2, 5)
    assert not diagonal_filter(negative)
    assert not any(are_isomorphic_types(r.type, negative) for r in passing25)
    assert _perd4_shapes_ok()


# -- 2. punctures of Per_{2,5} --------------------------------------------------------------------


def test_criterion_2_exact_punctures(per25_exact, acceptance):
    def coords(name, *keys):
        return {tuple(p.stratum_coords[k] for k in keys) for p in per25_exact[name].punctures}

    g6 = {
        (p.stratum_coords["s2"], p.stratum_coords["s3"], p.certificates["CR(1,3,4,5)"])
        for p in per25_exact["gamma6"].punctures
    }
    checks = {
        "gamma4": coords("gamma4", "CR") == {(2,)},
        "gamma5": coords("gamma5", "s2", "s3")
        == {((-1 + 2 * I) / 5, (1 + I) / 2), ((-1 - 2 * I) / 5, (1 - I) / 2)},
        "gamma6": g6 == {(R5 / 5, (3 + R5) / 2, (-1 - R5) / 2), (-R5 / 5, (3 - R5) / 2, (-1 + R5) / 2)},
        "gamma7": coords("gamma7", "s2", "s3") == {((1 + R5) / 2, (3 + R5) / 2), ((1 - R5) / 2, (3 - R5) / 2)},
        "total": sum(len(s.punctures) for s in per25_exact.values()) == 10,
    }
    acceptance(2, "exact punctures of Per_(2,5)", all(checks.values()), ", ".join(k for k, v in checks.items() if not v))
    assert all(checks.values()), checks


# -- 3. PCF points --------------------------------------------------------------------------------


def test_criterion_3_pcf_points(pcf_points, acceptance):
    ok = [len(v) for v in pcf_points.values()] == [5, 5, 5, 5]
    for pts in pcf_points.values():
        ok &= all(q.residual < 1e-10 and abs(q.jacobian) > 1e-8 for q in pts)
        for a, b in itertools.combinations(pts, 2):
            ok &= max(abs(complex(a.coords[k]) - complex(b.coords[k])) for k in a.coords) > 1e-6
    total = sum(len(v) for v in pcf_points.values())
    acceptance(3, "PCF points", ok and total == 20, f"{total} points")
    assert ok and total == 20


# -- 4. cubic identification -----------------------------------------------------------------------


def test_criterion_4_cubic(acceptance):
    t0 = time.perf_counter()
    curve = fit_per25_cubic(24, seed=0)
    elapsed = time.perf_counter() - t0
    on_curve = all(curve(*p.plane_image) == 0 for p in labelled_punctures().values())
    ok = str(curve) == "x^3 - 3*x*y*z + x*z^2 + y^2*z" and on_curve and len(labelled_punctures()) == 10
    acceptance(4, "cubic identification", ok and elapsed < 60, f"{curve}, 24 samples, {elapsed:.1f} s")
    assert ok and elapsed < 60


# -- 5. elliptic invariants ----------------------------------------------------------------------


def test_criterion_5_elliptic(acceptance):
    w, _ = weierstrass_from_plane(PER25_CUBIC)
    wmin, _ = weierstrass_from_plane(PER25_CUBIC.substitute(MINIMAL_CHANGE))
    conv = period_convention(periods(w))
    pts = puncture_points()
    rational = [pts[k] for k in ("p1", "p2", "p3", "p4")]
    checks = {
        "j": w.invariants().j == Fraction(35937, 17),
        "|disc| 17": abs(wmin.invariants().disc) == 17 and wmin.ainvs == MINIMAL_AINVS,
        "periods": abs(conv["real"] - REFERENCE_PERIODS[0]) < 1e-3 and abs(conv["imag_omega2"] - REFERENCE_PERIODS[1]) < 1e-3,
        "Z/4": len(rational) == 4 and is_cyclic_group(rational),
        "orders": point_order(pts["p5"]) == ExceedsBound(18) and point_order(pts["p6"]) == ExceedsBound(18),
        "quotients": quotient_relation(pts["p5"], pts["p5'"])
        and quotient_relation(pts["p6"], pts["p6'"])
        and quotient_relation(pts["p6"], pts["p7"]),
    }
    bad = [k for k, v in checks.items() if not v]
    acceptance(5, "elliptic invariants", not bad, ", ".join(bad) or f"periods {conv['real']:.5f}, {conv['imag_omega2']:.5f}")
    assert not bad


# -- 6. Per_{d,4} --------------------------------------------------------------------------------


@pytest.mark.xfail(strict=True, reason="the closed form d^d((d+1)^(d-1)+(d-1)^(d+1)) equals disc(g) only at d = 2")
def test_criterion_6_literal_discriminant(acceptance):
    discs = {d: poly_discriminant(g_poly(d)) for d in range(2, 7)}
    wrong = [d for d in discs if discs[d] != disc_formula_literal(d)]
    acceptance(
        6,
        "Per_(d,4)",
        not wrong,
        f"literal discriminant formula differs at d = {wrong}; punctures, roots, genus "
        "and the corrected discriminant identity hold for d = 2..6",
    )
    assert not wrong


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_criterion_6_corrected(d):
    r = perd4_report(d)
    assert r.ok, r.notes
    assert r.total_punctures == d * d
    assert r.disc == poly_discriminant(g_poly(d)) == disc_formula_corrected(d)
    assert r.roots_distinct and r.s2_one_is_root and len(r.g_roots) == d
    assert r.genus == (d - 1) * (d - 2) // 2


# -- 7. forgetful cross-ratio degree -------------------------------------------------------------


def test_criterion_7_rho_degree(acceptance):
    deg = rho_degree(trials=3, seed=7)
    acceptance(7, "cross-ratio map degree", deg == 2, f"fiber size {deg} at 3 random targets")
    assert deg == 2


# -- 8. property suites ---------------------------------------------------------------------------


def _spread(pts):
    return all(abs(a - b) > 1e-2 for a, b in itertools.combinations(pts, 2))


def _orbit_closure(rng) -> bool:
    for _ in range(40):
        pts = [complex(rng.uniform(-4, 4), rng.uniform(-4, 4)) for _ in range(4)]
        if not _spread(pts):
            continue
        lam = cross_ratio_values(*pts)
        orbit = [lam, 1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam]
        for perm in itertools.permutations(pts):
            v = cross_ratio_values(*perm)
            if min(abs(v - w) for w in orbit) > 1e-8 * max(1.0, abs(v)):
                return False
    return True


def _power_relation(rng) -> bool:
    checked = 0
    while checked < 40:
        xs = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
        try:
            h = HPoint.from_list(2, xs)
            h.check(tol=1e-3)
        except InvalidHPoint:
            continue
        scale = max(1.0, abs(xs[0])) ** 8
        if any(power_relation_gap(h, i, k) > 1e-8 * scale for i in range(3, 6) for k in range(2)):
            return False
        checked += 1
    return True


def _plumbing_and_orders() -> bool:
    for spec in TABLE_PER25.values():
        g = reference_type(spec, 2, 5)
        for t in (g.sigma, g.tau):
            root = t.vertex_of("*")
            c = plumb(uniform_series_family(t, root, default_charts(t, root)))
            for tup in itertools.permutations(sorted(t.legs), 4):
                b = boundary_cross_ratio(t, *tup)
                num, den = series_cr(c, *tup)
                v = series_cr_limit(num, den)
                if isinstance(b, InteriorSymbol):
                    if v is INF or v in (0, 1):
                        return False
                    continue
                if b != v:
                    return False
                if b == 0 and series_cr_order(num, den) != len(separating_edges(t, tup)):
                    return False
                if b is INF and series_cr_order(num, den) != -len(separating_edges(t, (tup[0], tup[1], tup[3], tup[2]))):
                    return False
    return True


def _field_axioms(rng) -> bool:
    for K in (quadratic_field(-1), quadratic_field(5)):
        r = K.gen()

        def el():
            return Fraction(rng.randint(-9, 9), rng.randint(1, 5)) + Fraction(rng.randint(-9, 9), rng.randint(1, 5)) * r

        for _ in range(30):
            a, b, c = el(), el(), el()
            if (a + b) * c != a * c + b * c or (a * b) * c != a * (b * c) or a * b != b * a:
                return False
            if a != 0 and a * (1 / a) != 1:
                return False
    return True


def _weierstrass_identity(rng) -> bool:
    for _ in range(60):
        w = WeierstrassCurve(*(rng.randint(-6, 6) for _ in range(5)))
        try:
            inv = w.invariants()
        except SingularCurve:
            continue
        if inv.c4 ** 3 - inv.c6 ** 2 != 1728 * inv.disc:
            return False
    return True


def _wp_residuals(model, rng) -> bool:
    lat = model.lattice
    for _ in range(40):
        u = rng.uniform(-0.5, 0.5) * lat.omega1 + rng.uniform(-0.5, 0.5) * lat.omega2
        if abs(u) < 1e-3 or isinstance(wp(u, lat), Pole):
            continue
        p, dp = wp(u, lat)
        pm, dpm = wp(-u, lat)
        rel = lambda a, b: abs(a - b) / max(1.0, abs(a), abs(b))  # noqa: E731
        if rel(p, pm) > 1e-8 or rel(dp, -dpm) > 1e-8:
            return False
        for w in (lat.omega1, lat.omega2):
            p2, dp2 = wp(u + w, lat)
            if rel(p, p2) > 1e-8 or rel(dp, dp2) > 1e-8:
                return False
        rhs = 4 * p ** 3 - lat.g2 * p - lat.g3
        if abs(dp * dp - rhs) / max(1.0, abs(rhs)) > 1e-8:
            return False
    return True


def test_criterion_8_property_suites(model, acceptance):
    rng = random.Random(8)
    checks = {
        "cross-ratio orbit": _orbit_closure(rng),
        "power relation": _power_relation(rng),
        "plumbing and orders": _plumbing_and_orders(),
        "field axioms": _field_axioms(rng),
        "c4^3 - c6^2 = 1728 disc": _weierstrass_identity(rng),
        "wp residuals": _wp_residuals(model, rng),
    }
    bad = [k for k, v in checks.items() if not v]
    acceptance(8, "property suites", not bad, ", ".join(bad) or f"{len(checks)} families")
    assert not bad


# -- 9. render smoke ----------------------------------------------------------------------------


def test_criterion_9_render(pcf_points, tmp_path, acceptance):
    t0 = time.perf_counter()
    outputs = []
    for k in range(2):
        cfg = RenderConfig(64, 64, overlay_pcf=True, output=str(tmp_path / f"run{k}.ppm"))
        res = render(cfg)
        outputs.append((tmp_path / f"run{k}.ppm").read_bytes())
    counts = res.counts()
    mixed = counts["attracted"] > 0 and counts["not_attracted"] > 0
    cfg = RenderConfig()
    maps_attracted = all(classify(q.dynmap, cfg) == Attracted(1) for pts in pcf_points.values() for q in pts)
    # the pixels carrying the 20 overlay dots
    dots = {k: v for k, v in res.overlay.items() if k.startswith("gamma")}
    dots_attracted = len(dots) == 20 and all(res.classes[r, c] >= 1 for c, r in dots.values())
    identical = outputs[0] == outputs[1]
    elapsed = time.perf_counter() - t0
    ok = mixed and maps_attracted and dots_attracted and identical and elapsed < 60
    acceptance(9, "render smoke", ok, f"classes {counts}, identical output {identical}, {elapsed:.1f} s")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
