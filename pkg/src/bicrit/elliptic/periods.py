"""Period lattices by the arithmetic-geometric mean.

The curve is first completed to y^2 = 4x^3 - g2 x - g3 with g2 = c4/12 and
g3 = c6/216; the lattice of the invariant differential is found from the
roots e1, e2, e3 and confirmed by the q-expansions of g2 and g3.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .weierstrass import WeierstrassCurve, invariants


class AGMError(ArithmeticError):
    """The AGM iteration did not converge or gave no consistent lattice."""


def agm(a: complex, b: complex, tol: float = 1e-15, max_iter: int = 64) -> complex:
    """Complex AGM with the optimal choice of square roots."""
    a, b = complex(a), complex(b)
    for _ in range(max_iter):
        if abs(a - b) <= tol * abs(a):
            return a
        a1 = (a + b) / 2
        b1 = cmath.sqrt(a * b)
        if abs(a1 - b1) > abs(a1 + b1):
            b1 = -b1
        if (a1, b1) == (a, b) or (a1, b1) == (b, a):
            return a1  # stalled at the last bit
        a, b = a1, b1
    raise AGMError("AGM did not converge")


def _sigma(n: int, k: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


@dataclass(frozen=True)
class Lattice:
    omega1: complex
    omega2: complex
    g2: complex
    g3: complex

    @property
    def tau(self) -> complex:
        return self.omega2 / self.omega1

    def eisenstein(self, terms: int = 60) -> tuple:
        """(g2, g3) of the lattice from q-expansions."""
        w1, tau = self.omega1, self.tau
        if tau.imag < 0:
            tau = -tau
        q = cmath.exp(2j * math.pi * tau)
        e4 = 1 + 240 * sum(_sigma(n, 3) * q ** n for n in range(1, terms))
        e6 = 1 - 504 * sum(_sigma(n, 5) * q ** n for n in range(1, terms))
        f = 2 * math.pi / w1
        return f ** 4 * e4 / 12, f ** 6 * e6 / 216

    def consistency(self) -> float:
        g2, g3 = self.eisenstein()
        return max(abs(g2 - self.g2) / max(1.0, abs(self.g2)), abs(g3 - self.g3) / max(1.0, abs(self.g3)))

    def reduce(self, u: complex) -> complex:
        """Representative of u in the parallelogram {s w1 + t w2 : -1/2 <= s, t < 1/2}."""
        m = np.array([[self.omega1.real, self.omega2.real], [self.omega1.imag, self.omega2.imag]])
        s, t = np.linalg.solve(m, [u.real, u.imag])
        s -= math.floor(s + 0.5)
        t -= math.floor(t + 0.5)
        return s * self.omega1 + t * self.omega2

    def j(self) -> complex:
        g2, g3 = self.eisenstein()
        return 1728 * g2 ** 3 / (g2 ** 3 - 27 * g3 ** 2)


def short_g(w: WeierstrassCurve) -> tuple:
    inv = invariants(w)
    return complex(inv.c4) / 12, complex(inv.c6) / 216


def periods(w: WeierstrassCurve, tol: float = 1e-9) -> Lattice:
    """A basis (w1, w2) of the period lattice, real w1 first when one exists."""
    g2, g3 = short_g(w)
    roots = [complex(r) for r in np.roots([4, 0, -g2, -g3])]
    cands = []
    for e1, e2, e3 in itertools.permutations(roots):
        try:
            cands.append(math.pi / agm(cmath.sqrt(e1 - e3), cmath.sqrt(e1 - e2)))
        except (AGMError, ZeroDivisionError):
            continue
    cands = sorted(cands, key=lambda z: (abs(z.imag) > 1e-9 * abs(z), abs(z)))
    for a, b in itertools.combinations(cands, 2):
        if abs((b / a).imag) < 1e-6:
            continue
        for w1, w2 in ((a, b), (b, a)):
            lat = _normalize(Lattice(w1, w2, g2, g3))
            if lat.consistency() < tol:
                return lat
    raise AGMError("no pair of AGM periods reproduces g2 and g3")


def _normalize(lat: Lattice) -> Lattice:
    """Put the real period first and give w2 positive imaginary part."""
    w1, w2 = lat.omega1, lat.omega2
    if abs(w2.imag) < 1e-12 * abs(w2) and abs(w1.imag) > 1e-12 * abs(w1):
        w1, w2 = w2, w1
    if (w2 / w1).imag < 0:
        w2 = -w2
    if w1.real < 0:
        w1 = -w1
    return Lattice(w1, w2, lat.g2, lat.g3)


def period_convention(lat: Lattice) -> dict:
    """The real numbers compared with reference period values: the real period and |w2|, Im(w2)."""
    return {"real": abs(lat.omega1), "abs_omega2": abs(lat.omega2), "imag_omega2": abs(lat.omega2.imag)}
