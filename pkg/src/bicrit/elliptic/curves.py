"""Plane curves: exact homogeneous forms, fitting from samples, linear changes of coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from ..exactnum import is_zero
from ..moduli import cross_ratio_values

# Chart of Per_{2,5}: x/z = CR(3,4,5,1), y/z = CR(5,2,3,4) on the source marks.
CHART_X = ("3", "4", "5", "1")
CHART_Y = ("5", "2", "3", "4")


class FitError(ValueError):
    """The samples do not determine a unique curve with small integer coefficients."""


def monomials(degree: int) -> list:
    """Exponent triples (i, j, k) with i + j + k = degree, in descending lexicographic order."""
    return [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]


@dataclass(frozen=True)
class PlaneCurve:
    """A homogeneous form in x, y, z with coprime integer coefficients, first coefficient positive."""

    degree: int
    coeffs: tuple  # ((i, j, k), int) pairs with nonzero coefficient, in monomial order

    @classmethod
    def from_dict(cls, degree: int, coeffs: dict) -> PlaneCurve:
        """Normalize rational coefficients to coprime integers with a positive leading one."""
        items = [(m, Fraction(coeffs[m])) for m in monomials(degree) if coeffs.get(m, 0) != 0]
        if not items:
            raise ValueError("the zero form is not a curve")
        den = reduce(lcm, (c.denominator for _, c in items), 1)
        ints = [(m, int(c * den)) for m, c in items]
        g = reduce(gcd, (abs(c) for _, c in ints))
        sign = 1 if ints[0][1] > 0 else -1
        return cls(degree, tuple((m, sign * c // g) for m, c in ints))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __call__(self, x, y, z):
        total = 0
        for (i, j, k), c in self.coeffs:
            total = total + c * x ** i * y ** j * z ** k
        return total

    def contains(self, point) -> bool:
        """Exact membership of a projective point (coordinates Fractions or number-field elements)."""
        return is_zero(self(*point))

    def __str__(self):
        parts = []
        for (i, j, k), c in self.coeffs:
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("x", i), ("y", j), ("z", k)) if e
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def substitute(self, rows) -> PlaneCurve:
        """The form F(T(x, y, z)), where T is the linear map with the given integer rows."""
        from ..exactnum import MPoly

        x, y, z = MPoly.gens(["x", "y", "z"])
        lin = [r[0] * x + r[1] * y + r[2] * z for r in rows]
        poly = self(*lin)
        return PlaneCurve.from_dict(self.degree, {e: c for e, c in poly.terms.items()})

    def image(self, rows) -> PlaneCurve:
        """The image of the curve under the projective map with the given rows: F(T^{-1}(x, y, z))."""
        return self.substitute(invert3(rows))


def invert3(rows):
    """Inverse of a 3x3 rational matrix."""
    m = [[Fraction(v) for v in r] for r in rows]
    n = 3
    aug = [m[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def apply_linear(rows, point):
    return tuple(sum(r[k] * point[k] for k in range(3)) for r in rows)


# -- fitting ---------------------------------------------------------------------


def fit_plane_curve(samples, degree: int = 3, margin: int = 5, max_den: int = 50,
                    tol: float = 1e-6) -> PlaneCurve:
    """The unique curve of the given degree through numeric affine samples (X, Y).

    The null vector of the monomial evaluation matrix is scaled so that its
    largest entry is 1, rounded to rationals of denominator at most max_den,
    cleared to integers, and checked against every sample.
    """
    mons = monomials(degree)
    need = len(mons) - 1 + margin
    if len(samples) < need:
        raise FitError(f"{len(samples)} samples; at least {need} are needed for degree {degree}")
    rows = []
    for X, Y in samples:
        X, Y = complex(X), complex(Y)
        row = np.array([X ** i * Y ** j for i, j, _ in mons], dtype=complex)
        rows.append(row / np.linalg.norm(row))
    A = np.array(rows)
    _, s, vh = np.linalg.svd(A)
    sv = np.concatenate([s, np.zeros(len(mons) - len(s))])
    null = int(np.sum(sv < 1e-9 * sv[0]))
    if null != 1:
        raise FitError(f"null space has dimension {null}")
    v = vh[-1].conj()
    v = v / v[np.argmax(np.abs(v))]
    if np.max(np.abs(v.imag)) > tol:
        raise FitError("the null vector is not real")
    coeffs = {}
    for m, c in zip(mons, v.real):
        q = Fraction(float(c)).limit_denominator(max_den)
        if abs(float(q) - c) > tol:
            raise FitError(f"coefficient {c} is not a small rational")
        if q:
            coeffs[m] = q
    curve = PlaneCurve.from_dict(degree, coeffs)
    worst = max(abs(curve(complex(X), complex(Y), 1)) / _scale(X, Y, degree) for X, Y in samples)
    if worst > tol:
        raise FitError(f"rounded curve misses the samples by {worst:.2e}")
    return curve


def _scale(X, Y, degree):
    return max(1.0, abs(complex(X)), abs(complex(Y))) ** degree


def chart_point(h) -> tuple:
    """(X, Y) = (CR(3,4,5,1), CR(5,2,3,4)) of a numeric curve point."""
    pos = h.source_configuration().positions
    X = cross_ratio_values(*(pos[x] for x in CHART_X), strict=False)
    Y = cross_ratio_values(*(pos[x] for x in CHART_Y), strict=False)
    return complex(X), complex(Y)


def fit_per25_cubic(samples: int = 24, seed: int = 0) -> PlaneCurve:
    """Fit the plane model of Per_{2,5} from sampled points."""
    from ..percurve import sample_curve

    pts = sample_curve(2, 5, samples, seed=seed)
    return fit_plane_curve([chart_point(h) for h in pts], 3)
