from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from bicrit.exactnum import MPoly, poly_discriminant, quadratic_field
from bicrit.moduli import INF, HPoint, apply_moebius
from bicrit.percurve import (
    CoincidentInputs,
    DynMap,
    FilterRejected,
    chordal,
    cross_ratio_form_gap,
    diagonal_system,
    disc_formula_corrected,
    disc_formula_literal,
    exact_period,
    g_poly,
    h_solutions,
    matches_h_system,
    moebius_from_triple,
    perd4_report,
    puncture_solve,
    rho_degree,
    sample_curve,
)
from bicrit.treecover import FIG_NEGATIVE, reference_type

I = quadratic_field(-1).gen()
R5 = quadratic_field(5).gen()


# -- Moebius maps and dynamics -------------------------------------------------------


def test_moebius_examples():
    ident = moebius_from_triple((0, 1, INF), (0, 1, INF))
    for z in (0.3, 2 - 1j):
        assert abs(apply_moebius(ident, z) - z) < 1e-15
    flip = moebius_from_triple((0, 1, INF), (1, 0, INF))
    assert abs(apply_moebius(flip, 0.25) - 0.75) < 1e-15


def test_moebius_random_triples():
    rng = random.Random(1)
    for _ in range(20):
        ps = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
        qs = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
        m = moebius_from_triple(ps, qs)
        for p, q in zip(ps, qs):
            assert abs(apply_moebius(m, p) - q) < 1e-12 * max(1.0, abs(q))


def test_moebius_rejects_coincident_inputs():
    with pytest.raises(CoincidentInputs):
        moebius_from_triple((0, 0, 1), (0, 1, 2))


def test_chordal_metric():
    assert chordal(INF, INF) == 0
    assert abs(chordal(0, INF) - 2) < 1e-15
    assert abs(chordal(1, -1) - 2) < 1e-15


# -- the curve equations ----------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 4])
def test_n4_equation_is_the_cleared_cross_ratio_form(d):
    sys4 = diagonal_system(d, 4)
    (eq,) = sys4.equations
    x3, x4 = MPoly.gens(sys4.names)
    F = x3 ** d - x4 ** d - x4 * x3 ** (d - 1) * (1 - x4 ** d) - x4 ** (d + 1) * (x3 ** d - 1)
    assert eq == F or eq == -F


def test_n4_roots_satisfy_the_cross_ratio_form():
    from bicrit.exactnum import roots_complex

    (eq,) = diagonal_system(2, 4).equations
    rng = random.Random(2)
    checked = 0
    while checked < 20:
        x3 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        p = eq.subs({0: x3}).to_univariate()
        for x4 in roots_complex(p):
            try:
                h = HPoint.from_list(2, [complex(x3), x4])
                h.check(tol=1e-6)
            except ValueError:
                continue
            assert cross_ratio_form_gap(h) < 1e-8
            checked += 1


def test_unsupported_curve():
    with pytest.raises(ValueError):
        diagonal_system(2, 6)


def test_samples(samples):
    eqs = diagonal_system(2, 5)
    assert len(samples) == 12
    for h in samples:
        xs = [h.x[3], h.x[4], h.x[5]]
        assert max(abs(v) for v in eqs.evaluate(xs)) < 1e-10 * max(1.0, max(abs(v) for v in xs)) ** 6
        f = DynMap.from_hpoint(h)
        assert chordal(f.orbit(0, 5)[-1], 0) < 1e-8
        assert exact_period(f, 5)
        assert abs(complex(h.x[3]) - 1) > 1e-6


def test_sampling_is_seed_stable(samples):
    again = sample_curve(2, 5, 12, seed=0)
    assert [h.x for h in again] == [h.x for h in samples]


# -- boundary points of Per_{2,5} -------------------------------------------------------------


def _coords(sol, *keys):
    return {tuple(p.stratum_coords[k] for k in keys) for p in sol.punctures}


def test_multiplicities(per25_exact):
    assert [len(s.punctures) for s in per25_exact.values()] == [1, 1, 1, 1, 2, 2, 2]


def test_gamma4(per25_exact):
    (p,) = per25_exact["gamma4"].punctures
    assert p.stratum_coords["CR"] == 2


def test_gamma5(per25_exact):
    want = {((-1 + 2 * I) / 5, (1 + I) / 2), ((-1 - 2 * I) / 5, (1 - I) / 2)}
    assert _coords(per25_exact["gamma5"], "s2", "s3") == want


def test_gamma6(per25_exact):
    sol = per25_exact["gamma6"]
    got = {(p.stratum_coords["s2"], p.stratum_coords["s3"], p.certificates["CR(1,3,4,5)"]) for p in sol.punctures}
    want = {(R5 / 5, (3 + R5) / 2, (-1 - R5) / 2), (-R5 / 5, (3 - R5) / 2, (-1 + R5) / 2)}
    assert got == want
    for s2, _, _ in got:
        assert s2 * s2 == Fraction(1, 5)


def test_gamma7(per25_exact):
    want = {((1 + R5) / 2, (3 + R5) / 2), ((1 - R5) / 2, (3 - R5) / 2)}
    assert _coords(per25_exact["gamma7"], "s2", "s3") == want


def test_puncture_solve_rejects_filtered_types():
    with pytest.raises(FilterRejected):
        puncture_solve(reference_type(FIG_NEGATIVE, 2, 5))


def test_numeric_layer_agrees_with_exact(per25_exact):
    from bicrit.exactnum import to_complex
    from bicrit.percurve import per25_punctures

    num = per25_punctures(exact=False)
    for name, sol in per25_exact.items():
        exact_pts = [tuple(to_complex(v) for v in p.stratum_coords.values()) for p in sol.punctures]
        num_pts = [tuple(complex(v) for v in p.stratum_coords.values()) for p in num[name].punctures]
        assert len(num_pts) == len(exact_pts)
        for e in exact_pts:
            if not e:
                continue
            assert min(max(abs(a - b) for a, b in zip(e, q)) for q in num_pts) < 1e-8


# -- PCF points --------------------------------------------------------------------------------


def test_pcf_counts_and_quality(pcf_points):
    assert [len(v) for v in pcf_points.values()] == [5, 5, 5, 5]
    for pts in pcf_points.values():
        for q in pts:
            assert q.residual < 1e-10
            assert abs(q.jacobian) > 1e-8
            assert q.free_orbit_gap < 1e-8
            assert q.cycle_residual < 1e-8
        for a, b in itertools.combinations(pts, 2):
            gap = max(abs(complex(a.coords[k]) - complex(b.coords[k])) for k in a.coords)
            assert gap > 1e-6


def test_pcf_gamma_one_matches_second_coordinate_system(pcf_points):
    assert len(h_solutions()) == 5
    assert matches_h_system(pcf_points["gammaI"])


def test_pcf_dynamics_lands_in_cycle(pcf_points):
    for pts in pcf_points.values():
        for q in pts:
            f = q.dynmap
            image = f(INF)
            assert min(chordal(image, c) for c in f.cycle) < 1e-8


# -- forgetful cross-ratio degree ----------------------------------------------------------


def test_rho_degree():
    assert rho_degree() == 2
    assert rho_degree(mark=5) == 2


# -- Per_{d,4} ------------------------------------------------------------------------------


def test_g_examples():
    assert poly_discriminant(g_poly(2)) == 16
    assert poly_discriminant(g_poly(3)) == -540
    assert g_poly(2).coeffs == (Fraction(-1), Fraction(-2), Fraction(3))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_perd4(d):
    r = perd4_report(d)
    assert r.ok, r.notes
    assert r.total_punctures == d * d
    assert r.genus == (d - 1) * (d - 2) // 2
    assert r.disc == disc_formula_corrected(d)
    assert r.roots_distinct and r.s2_one_is_root and not r.other_unity_roots
    assert r.g_matches_solver
    assert r.unnamed_points == 0


def test_literal_discriminant_variant_only_at_two():
    assert [disc_formula_literal(d) == poly_discriminant(g_poly(d)) for d in range(2, 7)] == [True] + [False] * 4
