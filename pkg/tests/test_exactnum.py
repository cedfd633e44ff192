from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicrit.exactnum import (
    MPoly,
    NFElem,
    RootFindingError,
    TruncSeries,
    UPoly,
    cyclotomic_field,
    exact_roots,
    nf_make,
    poly_discriminant,
    poly_resultant,
    quadratic_field,
    roots_complex,
    series_leading,
    squarefree_decomposition,
    sylvester_resultant,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_field_names():
    assert quadratic_field(-1).minpoly_string() == "x^2 + 1"
    assert quadratic_field(5).minpoly_string() == "x^2 - 5"
    assert nf_make(UPoly([1, 1, 1])) == cyclotomic_field(3)


def test_generators_square_correctly():
    i = quadratic_field(-1).gen()
    r5 = quadratic_field(5).gen()
    assert i * i == -1
    assert r5 * r5 == 5
    assert abs(r5.to_complex() - 5 ** 0.5) < 1e-15
    z = cyclotomic_field(3).gen()
    assert z * z * z == 1 and z != 1


def test_resultant_and_discriminant_examples():
    assert poly_resultant(UPoly([1, 0, 1]), UPoly([-2, 1])) == 5
    assert poly_discriminant(UPoly([-1, -2, 3])) == 16
    assert poly_discriminant(UPoly([-1, 0, -3, 4])) == -540


@given(st.lists(small, min_size=2, max_size=5), st.lists(small, min_size=2, max_size=4))
@settings(max_examples=40, deadline=None)
def test_resultant_routes_agree(f, g):
    p, q = UPoly(f), UPoly(g)
    if p.degree < 1 or q.degree < 1:
        return
    assert poly_resultant(p, q) == sylvester_resultant(list(p.coeffs), list(q.coeffs))


def test_numeric_roots():
    zs = roots_complex(UPoly([1, 0, 1]))
    assert sorted((round(z.real, 12), round(z.imag, 12)) for z in zs) == [(0, -1), (0, 1)]
    fifth = roots_complex(UPoly([-1, 0, 0, 0, 0, 1]))
    for k in range(5):
        w = cmath.exp(2j * cmath.pi * k / 5)
        assert min(abs(z - w) for z in fifth) < 1e-12


def test_exact_rational_roots():
    roots, rest = exact_roots(UPoly([-1, -2, 3]))
    assert sorted(r for r, _ in roots) == [Fraction(-1, 3), 1]
    assert rest.degree == 0


def test_root_failure_is_explicit():
    with pytest.raises((RootFindingError, ValueError)):
        roots_complex(UPoly([1]))


def test_squarefree():
    (f, m), = squarefree_decomposition(UPoly([1, -2, 1]))
    assert m == 2 and f == UPoly([-1, 1])


def test_series_leading_terms():
    s = TruncSeries.from_poly([0, 3, 1], 5)
    assert series_leading(s) == (1, 3)
    assert series_leading(TruncSeries.from_poly([7], 3)) == (0, 7)
    one_minus = TruncSeries.from_poly([1, -1], 6)
    geometric = one_minus.inverse()
    assert [geometric.coeff(k) for k in range(6)] == [1] * 6
    prod = one_minus * geometric
    assert series_leading(prod) == (0, 1)
    assert all(prod.coeff(k) == 0 for k in range(1, 6))


def test_mpoly_derivative_and_eval():
    a, b = MPoly.gens(["a", "b"])
    p = a * a * b - 3 * b + 1
    assert p.diff(0).eval((Fraction(2), Fraction(5))) == 20
    assert p.eval((Fraction(1), Fraction(1))) == -1


def _elem(K, cs):
    return NFElem(K, list(cs))


@pytest.mark.parametrize("D", [-1, 5, 3])
@given(x=st.tuples(small, small), y=st.tuples(small, small), z=st.tuples(small, small))
@settings(max_examples=30, deadline=None)
def test_quadratic_field_axioms(D, x, y, z):
    K = quadratic_field(D)
    a, b, c = _elem(K, x), _elem(K, y), _elem(K, z)
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(x=st.tuples(small, small), y=st.tuples(small, small))
@settings(max_examples=30, deadline=None)
def test_cyclotomic_field_embedding_is_a_homomorphism(x, y):
    K = cyclotomic_field(3)
    a, b = _elem(K, x), _elem(K, y)
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs((a + b).to_complex() - a.to_complex() - b.to_complex()) < 1e-9


def test_json_round_trip():
    K = quadratic_field(5)
    a = _elem(K, (Fraction(3, 2), Fraction(-1, 2)))
    assert NFElem.from_json(a.to_json(), K) == a
