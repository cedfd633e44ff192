"""Long Weierstrass curves: invariants, the chord-tangent law, orders of points.

Curves are y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with rational
a-invariants; points may have coordinates in Q or in a number field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactnum import NFElem, is_zero
from .curves import PlaneCurve


class SingularCurve(ArithmeticError):
    """The discriminant vanishes."""


class OffCurve(ValueError):
    """A point does not satisfy the curve equation."""


class NotWeierstrass(ValueError):
    """A plane cubic is not in long Weierstrass shape."""


@dataclass(frozen=True)
class Invariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction

    def as_dict(self) -> dict:
        return {k: str(v) for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for k in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))

    @property
    def ainvs(self) -> list:
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    def lhs_minus_rhs(self, x, y):
        return (y * y + self.a1 * x * y + self.a3 * y
                - (x * x * x + self.a2 * x * x + self.a4 * x + self.a6))

    def contains(self, x, y) -> bool:
        return is_zero(self.lhs_minus_rhs(x, y))

    def invariants(self) -> Invariants:
        return invariants(self)

    def identity(self) -> ECPoint:
        return ECPoint(self, None, None)

    def point(self, x, y) -> ECPoint:
        if not self.contains(x, y):
            raise OffCurve(f"({x}, {y}) is not on the curve")
        return ECPoint(self, x, y)


def invariants(w: WeierstrassCurve) -> Invariants:
    a1, a2, a3, a4, a6 = w.ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularCurve("discriminant is zero")
    return Invariants(b2, b4, b6, b8, c4, c6, disc, c4 ** 3 / disc)


# Monomials of a plane cubic in long Weierstrass shape and the a-invariant they carry.
_SHAPE = {
    (0, 2, 1): ("y2", 1),
    (1, 1, 1): ("a1", 1),
    (0, 1, 2): ("a3", 1),
    (3, 0, 0): ("x3", -1),
    (2, 0, 1): ("a2", -1),
    (1, 0, 2): ("a4", -1),
    (0, 0, 3): ("a6", -1),
}


def weierstrass_from_plane(curve: PlaneCurve) -> tuple:
    """(W, s) with [x : y : z] on the plane cubic corresponding to [s*x : y : z] on W, s = +1 or -1."""
    if curve.degree != 3:
        raise NotWeierstrass("not a cubic")
    c = curve.as_dict()
    if any(m not in _SHAPE for m in c):
        raise NotWeierstrass("monomials outside the long Weierstrass shape")
    y2, x3 = Fraction(c.get((0, 2, 1), 0)), Fraction(c.get((3, 0, 0), 0))
    if y2 == 0 or x3 == 0:
        raise NotWeierstrass("needs both y^2 z and x^3")
    # F = y2 * (Y^2 Z + a1 XYZ + ... - X^3 - ...) after x = s X with s^3 = -x3 / y2
    ratio = -x3 / y2
    if ratio not in (1, -1):
        raise NotWeierstrass("x^3 and y^2 z coefficients must agree up to sign")
    s = int(ratio)
    vals = {}
    for m, (name, sign) in _SHAPE.items():
        if name in ("y2", "x3"):
            continue
        coef = Fraction(c.get(m, 0)) / y2 * s ** m[0]
        vals[name] = sign * coef
    return WeierstrassCurve(**vals), s


def plane_to_point(w: WeierstrassCurve, s: int, triple) -> ECPoint:
    """The point of W for a projective point [x : y : z] of the plane cubic."""
    x, y, z = triple
    if is_zero(z):
        if is_zero(x):
            return w.identity()
        raise OffCurve("the only point at infinity is [0 : 1 : 0]")
    return w.point(s * x / z, y / z)


# -- the group law -----------------------------------------------------------------


@dataclass(frozen=True)
class ECPoint:
    curve: WeierstrassCurve
    x: object  # None for the identity
    y: object

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def projective(self) -> tuple:
        if self.is_identity:
            return (Fraction(0), Fraction(1), Fraction(0))
        return (self.x, self.y, Fraction(1))

    def is_rational(self) -> bool:
        return self.is_identity or all(_is_rational(v) for v in (self.x, self.y))

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        if self.is_identity or other.is_identity:
            return self.is_identity and other.is_identity
        return is_zero(self.x - other.x) and is_zero(self.y - other.y)

    def __hash__(self):
        return hash(self.is_identity)

    def __add__(self, other):
        return ec_add(self, other)

    def __neg__(self):
        return ec_neg(self)

    def __sub__(self, other):
        return ec_add(self, ec_neg(other))

    def __rmul__(self, k: int):
        return ec_mul(k, self)

    def __repr__(self):
        if self.is_identity:
            return "O"
        return f"({self.x}, {self.y})"


def _is_rational(v) -> bool:
    return isinstance(v, (int, Fraction)) or (isinstance(v, NFElem) and v.is_rational())


def _check(p: ECPoint) -> None:
    if not p.is_identity and not p.curve.contains(p.x, p.y):
        raise OffCurve(f"{p} is not on the curve")


def ec_neg(p: ECPoint) -> ECPoint:
    _check(p)
    if p.is_identity:
        return p
    w = p.curve
    return ECPoint(w, p.x, -p.y - w.a1 * p.x - w.a3)


def ec_add(p: ECPoint, q: ECPoint) -> ECPoint:
    """Chord-tangent addition with identity [0 : 1 : 0]."""
    if p.curve != q.curve:
        raise ValueError("points lie on different curves")
    _check(p)
    _check(q)
    if p.is_identity:
        return q
    if q.is_identity:
        return p
    w = p.curve
    a1, a2, a3, a4, a6 = w.ainvs
    x1, y1, x2, y2 = p.x, p.y, q.x, q.y
    if is_zero(x1 - x2):
        if is_zero(y1 + y2 + a1 * x2 + a3):
            return w.identity()
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return ECPoint(w, x3, y3)


def ec_mul(k: int, p: ECPoint) -> ECPoint:
    if k < 0:
        return ec_mul(-k, ec_neg(p))
    acc = p.curve.identity()
    base = p
    while k:
        if k & 1:
            acc = ec_add(acc, base)
        base = ec_add(base, base)
        k >>= 1
    return acc


@dataclass(frozen=True)
class Order:
    k: int


@dataclass(frozen=True)
class ExceedsBound:
    bound: int


# Largest order of a torsion point on an elliptic curve over Q or a quadratic field.
QUADRATIC_TORSION_BOUND = 18


def point_order(p: ECPoint, bound: int = QUADRATIC_TORSION_BOUND):
    """Order(k) for the least k <= bound with kP = O, else ExceedsBound(bound)."""
    _check(p)
    acc = p
    for k in range(1, bound + 1):
        if acc.is_identity:
            return Order(k)
        acc = ec_add(acc, p)
    return ExceedsBound(bound)


def quotient_relation(p: ECPoint, q: ECPoint) -> bool:
    """True iff P + Q has rational coordinates."""
    return ec_add(p, q).is_rational()


def rational_multiple(p: ECPoint, bound: int = QUADRATIC_TORSION_BOUND):
    """Least n in 1..bound with nP rational, or None."""
    acc = p
    for n in range(1, bound + 1):
        if acc.is_rational():
            return n
        acc = ec_add(acc, p)
    return None


def group_table(points: list) -> list:
    """Indices: table[i][j] = index of points[i] + points[j] in points (None if outside)."""
    out = []
    for p in points:
        row = []
        for q in points:
            s = ec_add(p, q)
            row.append(next((k for k, r in enumerate(points) if r == s), None))
        out.append(row)
    return out


def is_cyclic_group(points: list) -> bool:
    """The points are closed under addition and some point has order equal to their number."""
    table = group_table(points)
    if any(v is None for row in table for v in row):
        return False
    n = len(points)
    return any(point_order(p, n) == Order(n) for p in points)
