"""Complex roots of univariate polynomials (Aberth-Ehrlich iteration)."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .fields import NFElem, to_complex
from .upoly import UPoly, squarefree_decomposition


class RootFindingError(ArithmeticError):
    pass


def _horner_with_derivative(c, z):
    p = c[-1]
    dp = 0j
    for a in reversed(c[:-1]):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _scale(c, z):
    return sum(abs(a) * abs(z) ** k for k, a in enumerate(c))


def aberth(coeffs, tol: float = 1e-12, max_iter: int = 500) -> list:
    """Simple roots of a numeric polynomial (complex coefficients, lowest first)."""
    c = [complex(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    n = len(c) - 1
    if n < 1:
        raise ValueError("roots of a constant polynomial")
    zeros_at_origin = 0
    while c[0] == 0:
        c.pop(0)
        zeros_at_origin += 1
    n = len(c) - 1
    roots = [0j] * zeros_at_origin
    if n == 0:
        return roots
    lead = c[-1]
    mon = [a / lead for a in c]
    # Fujiwara-type radius for the starting circle
    r = 2 * max(abs(mon[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    r = max(r, 1e-3)
    z = [r * cmath.exp(2j * math.pi * (k + 0.25) / n) for k in range(n)]
    for _ in range(max_iter):
        done = True
        for i in range(n):
            p, dp = _horner_with_derivative(mon, z[i])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else p
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            w = ratio / (1 - ratio * s)
            z[i] -= w
            if abs(w) > tol * max(1.0, abs(z[i])):
                done = False
        if done:
            break
    else:
        raise RootFindingError("Aberth iteration did not converge within the budget")
    # Newton polish
    for i in range(n):
        for _ in range(3):
            p, dp = _horner_with_derivative(mon, z[i])
            if dp == 0:
                break
            z[i] -= p / dp
    return roots + z


def roots_complex(p, tol: float = 1e-10) -> list:
    """All complex roots of p with multiplicity, sorted by (real, imag).

    Exact polynomials (Fraction or NFElem coefficients) are split into
    squarefree factors first, so repeated roots are reported exactly with
    their multiplicity.  Numeric inputs are treated as squarefree.
    """
    if not isinstance(p, UPoly):
        p = UPoly(p)
    if p.degree < 1:
        raise ValueError("roots_complex needs degree >= 1")
    exact = all(isinstance(c, (Fraction, NFElem)) for c in p.coeffs)
    out = []
    if exact:
        for factor, mult in squarefree_decomposition(p):
            zs = aberth(factor.to_complex())
            _check(factor.to_complex(), zs, tol)
            for z in zs:
                out.extend([z] * mult)
    else:
        c = p.to_complex()
        zs = aberth(c)
        _check(c, zs, tol)
        out = zs
    return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def _check(c, zs, tol):
    for z in zs:
        val = sum(a * z**k for k, a in enumerate(c))
        if abs(val) > tol * max(_scale(c, z), 1e-300):
            raise RootFindingError(f"root {z} fails the residual test ({abs(val):.3e})")


def newton_polish(p: UPoly, z: complex, steps: int = 5) -> complex:
    c = p.to_complex()
    for _ in range(steps):
        v, dv = _horner_with_derivative(c, z)
        if dv == 0:
            break
        z -= v / dv
    return z


def numeric_roots_of(coeffs) -> list:
    """Convenience wrapper: roots of a coefficient list of exact or numeric values."""
    return roots_complex(UPoly([c if isinstance(c, (Fraction, NFElem)) else complex(c) for c in coeffs]))


__all__ = ["roots_complex", "aberth", "RootFindingError", "newton_polish", "to_complex"]
