"""Exact roots of rational polynomials in Q and quadratic fields.

Factors of degree at most two are located with numerical guidance and
then confirmed by exact division; anything left over is returned as an
unresolved remainder rather than guessed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .fields import quadratic_field, squarefree_part as int_squarefree
from .roots import roots_complex
from .upoly import UPoly, squarefree_decomposition


def integer_primitive(p: UPoly) -> UPoly:
    """Scale a rational polynomial to coprime integer coefficients, positive lead."""
    if p.is_zero():
        return p
    lcm = 1
    for c in p.coeffs:
        c = Fraction(c)
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(Fraction(c) * lcm) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return UPoly([Fraction(v) for v in ints], p.var)


def _try_divide(f: UPoly, g: UPoly):
    q, r = f.divmod(g)
    if r.is_zero():
        return q
    return None


def small_factors(p: UPoly):
    """Split a nonzero rational polynomial into irreducible factors of degree <= 2.

    Returns (factors, remainder) where factors is a list of (monic factor,
    multiplicity) and remainder is the product of whatever could not be
    split (a constant when the split is complete).
    """
    factors = []
    rest = UPoly([Fraction(1)], p.var)
    for sqf, mult in squarefree_decomposition(p):
        found, left = _split_squarefree(integer_primitive(sqf))
        factors.extend((f, mult) for f in found)
        if left.degree > 0:
            rest = rest * left ** mult
    return factors, rest


def _split_squarefree(f: UPoly):
    found = []
    if f.degree <= 0:
        return found, f
    lc = abs(int(f.lc()))
    bound = max(lc, 1) * 10**4
    zs = roots_complex(f)
    remaining = list(zs)
    # rational roots
    for z in list(remaining):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        cand = Fraction(z.real).limit_denominator(bound)
        g = UPoly([-cand, 1], f.var)
        q = _try_divide(f, g)
        if q is not None:
            found.append(g)
            f = q
            remaining.remove(z)
    # quadratic factors from pairs of roots
    progress = True
    while progress and f.degree >= 2:
        progress = False
        for a, b in combinations(remaining, 2):
            s, pr = a + b, a * b
            if abs(s.imag) > 1e-6 * max(1.0, abs(s)) or abs(pr.imag) > 1e-6 * max(1.0, abs(pr)):
                continue
            S = Fraction(s.real).limit_denominator(bound)
            P = Fraction(pr.real).limit_denominator(bound)
            g = UPoly([P, -S, Fraction(1)], f.var)
            q = _try_divide(f, g)
            if q is not None:
                found.append(g)
                f = q
                remaining.remove(a)
                remaining.remove(b)
                progress = True
                break
    if f.degree <= 0:
        f = UPoly([Fraction(1)], f.var)
    return found, f


def quadratic_roots(q: UPoly):
    """Both roots of an irreducible monic quadratic over Q, as NFElems of Q(sqrt D).

    The first root is the one whose complex embedding has the larger real
    part (then larger imaginary part).
    """
    if q.degree != 2:
        raise ValueError("quadratic_roots needs a quadratic")
    q = q.monic()
    b, c = Fraction(q.coeff(1)), Fraction(q.coeff(0))
    disc = b * b - 4 * c
    # disc = (num/den) = (num*den)/den^2 ; write num*den = s^2 D
    s, D = int_squarefree(disc.numerator * disc.denominator)
    if D == 1:
        raise ValueError("quadratic is reducible over Q")
    K = quadratic_field(D)
    root_d = K.gen()
    scale = Fraction(s, disc.denominator)
    r1 = (-b + scale * root_d) / 2
    r2 = (-b - scale * root_d) / 2
    roots = sorted([r1, r2], key=lambda r: (-r.to_complex().real, -r.to_complex().imag))
    return K, roots


def exact_roots(p: UPoly):
    """Exact roots of a rational polynomial in Q or quadratic fields.

    Returns (roots, unresolved): roots is a list of (value, multiplicity)
    with values Fraction or NFElem; unresolved is the leftover factor.
    """
    factors, rest = small_factors(p)
    out = []
    for f, mult in factors:
        if f.degree == 1:
            out.append((-f.coeff(0) / f.coeff(1), mult))
        else:
            _, rs = quadratic_roots(f)
            out.extend((r, mult) for r in rs)
    return out, rest
