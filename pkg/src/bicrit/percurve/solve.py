"""Solving small polynomial systems: exactly over Q and quadratic fields, or numerically.

Systems have one or two unknowns.  Two-variable systems are reduced to one
variable by a resultant computed through evaluation and interpolation, and
solutions are recovered by back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..exactnum import (
    MPoly,
    NFElem,
    RootFindingError,
    UPoly,
    exact_roots,
    interpolate,
    is_zero,
    poly_gcd,
    roots_complex,
    sylvester_resultant,
    to_complex,
)

NUM_TOL = 1e-10
DISTINCT_TOL = 1e-6


class PositiveDimensional(ArithmeticError):
    """The system has a common factor, so its zero set is not finite."""


def strip_monomial(p: MPoly) -> MPoly:
    """Divide out the largest monomial factor."""
    if p.is_zero():
        return p
    m = tuple(min(e[i] for e in p.terms) for i in range(p.nvars))
    if not any(m):
        return p
    return p._new({tuple(a - b for a, b in zip(e, m)): c for e, c in p.terms.items()})


def _coeffs_in_last(p: MPoly, value, deg: int) -> list:
    """Coefficient list (lowest first, padded to deg) in the last variable after fixing the first."""
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e[1]] = out[e[1]] + c * value ** e[0]
    return out


def resultant_last(p: MPoly, q: MPoly) -> UPoly:
    """res_{u2}(p, q) as a polynomial in u1, by evaluation at integers and interpolation."""
    dp, dq = p.degree(1), q.degree(1)
    bound = p.degree() * q.degree()
    xs, ys = [], []
    x = 0
    while len(xs) < bound + 1:
        x += 1
        fc = _coeffs_in_last(p, Fraction(x), dp)
        gc = _coeffs_in_last(q, Fraction(x), dq)
        xs.append(Fraction(x))
        ys.append(sylvester_resultant(fc, gc))
    return interpolate(xs, ys)


def univariate(p: MPoly, value_of_first=None) -> UPoly:
    """The last-variable polynomial after fixing the first variable (or p itself if univariate)."""
    if p.nvars == 1:
        c = [Fraction(0)] * (max(0, p.degree()) + 1)
        for e, v in p.terms.items():
            c[e[0]] = c[e[0]] + v
        return UPoly(c)
    return UPoly(_coeffs_in_last(p, value_of_first, max(0, p.degree(1))))


def first_var_poly(p: MPoly) -> UPoly:
    """p as a polynomial in the first variable (the second must not occur)."""
    c = [Fraction(0)] * (max(0, p.degree()) + 1)
    for e, v in p.terms.items():
        if p.nvars > 1 and e[1]:
            raise ValueError("second variable present")
        c[e[0]] = c[e[0]] + v
    return UPoly(c)


# -- exact solving ------------------------------------------------------------


@dataclass
class ExactResult:
    solutions: list  # tuples of exact values
    unresolved: list  # UPolys that could not be split over quadratic fields


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, NFElem) and x.is_rational())


def _rational_coeffs(p: UPoly) -> bool:
    return all(_is_rational(c) for c in p.coeffs)


def _as_rational_poly(p: UPoly) -> UPoly:
    return UPoly([c.as_rational() if isinstance(c, NFElem) else Fraction(c) for c in p.coeffs])


def _roots_over(p: UPoly, value):
    """Roots of p (coefficients in the field of value) that the exact layer can express."""
    if p.degree <= 0:
        return [], []
    if p.degree == 1:
        return [-p.coeff(0) / p.coeff(1)], []
    if _rational_coeffs(p):
        roots, rest = exact_roots(_as_rational_poly(p))
        return [r for r, _ in roots], ([rest] if rest.degree > 0 else [])
    return [], [p]


def solve_exact(eqs: list) -> ExactResult:
    """All solutions of a square system in one or two unknowns that lie in Q or a quadratic field."""
    eqs = [strip_monomial(e) for e in eqs]
    nv = eqs[0].nvars
    if len(eqs) != nv and not (nv == 1 and len(eqs) == 1):
        raise ValueError("the system must be square")
    if nv == 1:
        p = first_var_poly(eqs[0])
        if p.is_zero():
            raise PositiveDimensional("identically zero equation")
        roots, rest = exact_roots(p) if _rational_coeffs(p) else ([], (p,))
        return ExactResult([(r,) for r, _ in roots], [r for r in ([rest] if isinstance(rest, UPoly) else list(rest)) if r.degree > 0])
    p, q = eqs
    if p.degree(1) == 0 and q.degree(1) == 0:
        raise PositiveDimensional("second unknown does not occur")
    r = resultant_last(p, q)
    if r.is_zero():
        raise PositiveDimensional("resultant vanishes identically")
    roots, rest = exact_roots(_as_rational_poly(r))
    sols, unresolved = [], ([rest] if rest.degree > 0 else [])
    for x, _ in roots:
        fp = univariate(p, x)
        fq = univariate(q, x)
        if fp.is_zero():
            g = fq
        elif fq.is_zero():
            g = fp
        else:
            g = poly_gcd(fp, fq)
        ys, rest2 = _roots_over(g, x)
        unresolved.extend(rest2)
        for y in ys:
            sols.append((x, y))
    return ExactResult(_dedupe_exact(sols), unresolved)


def _dedupe_exact(sols):
    out = []
    for s in sols:
        if not any(all(is_zero(a - b) for a, b in zip(s, t)) for t in out):
            out.append(s)
    return out


# -- numeric solving ------------------------------------------------------------


def complex_poly(p: MPoly):
    """A callable evaluating p at complex points."""
    terms = [(e, to_complex(c)) for e, c in p.terms.items()]

    def f(pt):
        s = 0j
        for e, c in terms:
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            s += v
        return s

    return f


def _jacobian_funcs(eqs):
    nv = eqs[0].nvars
    return [[complex_poly(e.diff(j)) for j in range(nv)] for e in eqs]


def newton_system(eqs, pt, steps: int = 30, tol: float = 1e-14):
    fs = [complex_poly(e) for e in eqs]
    js = _jacobian_funcs(eqs)
    x = np.array(pt, dtype=complex)
    with np.errstate(all="ignore"):
        x = _newton_loop(fs, js, x, steps, tol)
    return tuple(complex(v) for v in x)


def _newton_loop(fs, js, x, steps, tol):
    for _ in range(steps):
        F = np.array([f(x) for f in fs])
        J = np.array([[g(x) for g in row] for row in js])
        try:
            dx = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        x = x + dx
        if not np.all(np.isfinite(x)) or np.linalg.norm(dx) <= tol * max(1.0, np.linalg.norm(x)):
            break
    return x


def residual(eqs, pt) -> float:
    try:
        return max(abs(complex_poly(e)(pt)) for e in eqs)
    except OverflowError:
        return float("inf")


def jacobian_det(eqs, pt) -> complex:
    js = _jacobian_funcs(eqs)
    J = np.array([[g(pt) for g in row] for row in js])
    return complex(np.linalg.det(J))


def _numeric_upoly_roots(p: UPoly) -> list:
    """Distinct complex roots of an exact or numeric univariate polynomial."""
    if p.degree <= 0:
        return []
    try:
        zs = roots_complex(p)
    except RootFindingError:
        zs = list(np.roots([to_complex(c) for c in reversed(p.coeffs)]))
    out = []
    for z in zs:
        z = complex(z)
        if not any(abs(z - w) < DISTINCT_TOL * max(1.0, abs(z)) for w in out):
            out.append(z)
    return out


def solve_numeric(eqs: list, tol: float = 1e-8) -> list:
    """All isolated complex solutions (one or two unknowns), polished by Newton's method."""
    eqs = [strip_monomial(e) for e in eqs]
    nv = eqs[0].nvars
    if nv == 1:
        p = first_var_poly(eqs[0])
        if p.is_zero():
            raise PositiveDimensional("identically zero equation")
        return _dedupe_numeric([(complex(r),) for r in _numeric_upoly_roots(p)])
    p, q = eqs
    if p.degree(1) == 0 and q.degree(1) == 0:
        raise PositiveDimensional("second unknown does not occur")
    r = resultant_last(p, q)
    if r.is_zero():
        raise PositiveDimensional("resultant vanishes identically")
    sols = []
    for x in _numeric_upoly_roots(r):
        x = complex(x)
        for base in (p, q):
            cs = [0j] * (max(0, base.degree(1)) + 1)
            for e, c in base.terms.items():
                cs[e[1]] += to_complex(c) * x ** e[0]
            while len(cs) > 1 and abs(cs[-1]) < 1e-12 * max(1.0, max(abs(c) for c in cs)):
                cs.pop()
            if len(cs) <= 1:
                continue
            for y in np.roots(list(reversed(cs))):
                pt = newton_system(eqs, (x, complex(y)))
                if residual(eqs, pt) < tol * max(1.0, max(abs(v) for v in pt)) ** max(e.degree() for e in eqs):
                    sols.append(pt)
            break
    return _dedupe_numeric(sols)


def _dedupe_numeric(sols):
    out = []
    for s in sols:
        if not any(max(abs(a - b) for a, b in zip(s, t)) < DISTINCT_TOL * max(1.0, max(abs(a) for a in s)) for t in out):
            out.append(s)
    return out
