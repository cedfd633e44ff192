from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicrit.elliptic import (
    MINIMAL_AINVS,
    MINIMAL_CHANGE,
    PER25_CUBIC,
    REFERENCE_PERIODS,
    ExceedsBound,
    FitError,
    Order,
    PlaneCurve,
    SingularCurve,
    WeierstrassCurve,
    chart_point,
    ec_add,
    ec_mul,
    ec_neg,
    fit_per25_cubic,
    fit_plane_curve,
    group_table,
    is_cyclic_group,
    labelled_punctures,
    period_convention,
    periods,
    point_order,
    puncture_points,
    quotient_relation,
    rational_multiple,
    verify_invariants,
    weierstrass_from_plane,
)

ints = st.integers(min_value=-6, max_value=6)


# -- plane model -------------------------------------------------------------------------


def test_fit_recovers_the_cubic():
    curve = fit_per25_cubic(24, seed=0)
    assert curve == PER25_CUBIC
    assert str(curve) == "x^3 - 3*x*y*z + x*z^2 + y^2*z"
    assert fit_per25_cubic(24, seed=5) == curve


def test_samples_lie_on_the_cubic(samples):
    for h in samples:
        X, Y = chart_point(h)
        assert abs(PER25_CUBIC(X, Y, 1)) < 1e-8 * max(1.0, abs(X), abs(Y)) ** 3


def test_puncture_images_are_exactly_on_the_cubic():
    pts = labelled_punctures()
    assert len(pts) == 10
    for p in pts.values():
        assert PER25_CUBIC(*p.plane_image) == 0


def test_synthetic_conic():
    samples = [(math.cos(t), math.sin(t)) for t in (0.1 + 0.5 * k for k in range(12))]
    conic = fit_plane_curve(samples, degree=2)
    assert conic == PlaneCurve.from_dict(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1})


def test_underdetermined_fit_fails():
    with pytest.raises(FitError):
        fit_plane_curve([(k, k * k) for k in range(5)], degree=3)


# -- invariants and models ----------------------------------------------------------


def test_model_of_the_cubic():
    w, s = weierstrass_from_plane(PER25_CUBIC)
    assert w.ainvs == [3, 0, 0, 1, 0] and s == -1
    inv = w.invariants()
    assert inv.j == Fraction(35937, 17)
    assert inv.disc == 17


def test_sign_convention_matters():
    # the same shape with the opposite x sign is a different curve
    assert WeierstrassCurve(-3, 0, 0, -1, 0).invariants().j == Fraction(2146689, 145)


def test_minimal_model():
    w, _ = weierstrass_from_plane(PER25_CUBIC.substitute(MINIMAL_CHANGE))
    assert w.ainvs == MINIMAL_AINVS
    assert abs(w.invariants().disc) == 17


def test_j_zero():
    assert WeierstrassCurve(0, 0, 0, 0, 1).invariants().j == 0


def test_singular_curve_is_rejected():
    with pytest.raises(SingularCurve):
        WeierstrassCurve(0, 0, 0, 0, 0).invariants()


@given(ints, ints, ints, ints, ints)
@settings(max_examples=80, deadline=None)
def test_invariant_identity(a1, a2, a3, a4, a6):
    w = WeierstrassCurve(a1, a2, a3, a4, a6)
    try:
        inv = w.invariants()
    except SingularCurve:
        return
    assert inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc


# -- group law ---------------------------------------------------------------------------


TEST_CURVE = WeierstrassCurve(0, 0, 0, 0, -2)


def _multiples(k):
    P = TEST_CURVE.point(3, 5)
    return [ec_mul(i, P) for i in range(1, k + 1)]


def test_identity_and_inverse():
    P = TEST_CURVE.point(3, 5)
    O = TEST_CURVE.identity()
    assert ec_add(P, O) == P
    assert ec_add(P, ec_neg(P)).is_identity
    assert ec_mul(4, P) == ec_mul(2, ec_mul(2, P))


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=20, deadline=None)
def test_associativity_and_commutativity(i, j, k):
    pts = _multiples(4)
    P, Q, R = pts[i], pts[j], pts[k]
    assert ec_add(P, Q) == ec_add(Q, P)
    assert ec_add(ec_add(P, Q), R) == ec_add(P, ec_add(Q, R))


def test_rational_punctures_form_a_cyclic_group_of_order_four():
    pts = puncture_points()
    rational = [pts[k] for k in ("p1", "p2", "p3", "p4")]
    assert pts["p2"].is_identity
    table = group_table(rational)
    assert len(table) == 4
    assert is_cyclic_group(rational)
    assert point_order(pts["p2"]) == Order(1)
    assert point_order(pts["p3"]) == Order(2)
    assert point_order(pts["p1"]) == Order(4) and point_order(pts["p4"]) == Order(4)
    images = {tuple(p.plane_image) for k, p in labelled_punctures().items() if k in ("p1", "p2", "p3", "p4")}
    assert images == {(1, 1, 1), (0, 1, 0), (0, 0, 1), (1, 2, 1)}


def test_irrational_punctures_have_large_order():
    pts = puncture_points()
    for k in ("p5", "p5'", "p6", "p6'", "p7", "p7'"):
        assert point_order(pts[k]) == ExceedsBound(18)


def test_quotient_relations():
    pts = puncture_points()
    assert quotient_relation(pts["p5"], pts["p5'"])
    assert quotient_relation(pts["p6"], pts["p6'"])
    assert quotient_relation(pts["p6"], pts["p7"])
    assert rational_multiple(pts["p6"]) is None
    P = pts["p5"]
    assert quotient_relation(P, ec_neg(P))


# -- periods ------------------------------------------------------------------------------


def test_periods_match_reference_values():
    w, _ = weierstrass_from_plane(PER25_CUBIC)
    lat = periods(w)
    conv = period_convention(lat)
    assert abs(conv["real"] - REFERENCE_PERIODS[0]) < 1e-3
    assert abs(conv["imag_omega2"] - REFERENCE_PERIODS[1]) < 1e-3
    assert lat.consistency() < 1e-12
    assert abs(lat.j() - 35937 / 17) < 1e-8 * 35937 / 17


def test_square_lattice():
    lat = periods(WeierstrassCurve(0, 0, 0, 1, 0))
    assert abs(lat.j() - 1728) < 1e-8
    assert lat.consistency() < 1e-12


def test_agm_real_case():
    from bicrit.elliptic import agm

    assert abs(agm(1, math.sqrt(2)) - 1.1981402347355922) < 1e-15
    z = agm(1 + 1j, 2)
    assert abs(z - agm(2, 1 + 1j)) < 1e-14 and cmath.isfinite(z)


def test_report_passes():
    rep = verify_invariants()
    assert rep["ok"], rep["checks"]
