"""Number fields Q[x]/(m(x)) with exact rational coefficients.

Only the fields this package needs are supported: Q itself, quadratic
fields and cyclotomic fields Q(zeta_d) for d <= 12.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

Scalar = "int | Fraction | NFElem"


def _qpoly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qpoly_trim(out)


def _qpoly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _qpoly_trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lc = b[-1]
    while len(_qpoly_trim(a)) >= len(b):
        a = _qpoly_trim(a)
        k = len(a) - len(b)
        f = a[-1] / lc
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
    return _qpoly_trim(q), _qpoly_trim(a)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _qpoly_trim([Fraction(x) - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def cyclotomic_coeffs(d: int) -> tuple:
    """Integer coefficients of Phi_d, lowest degree first."""
    num = [-1] + [0] * (d - 1) + [1]
    num = [Fraction(x) for x in num]
    for k in range(1, d):
        if d % k == 0:
            num, r = _qpoly_divmod(num, list(cyclotomic_coeffs(k)))
            assert not r
    return tuple(int(x) for x in num)


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def squarefree_part(n: int) -> tuple[int, int]:
    """Write a nonzero integer as s**2 * D with D squarefree; returns (s, D)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, D = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            D *= p
        p += 1 if p == 2 else 2
    D *= n
    return s, sign * D


class NumberField:
    """The field Q[x]/(minpoly) together with a fixed complex embedding of x."""

    def __init__(self, minpoly, name: str, gen_symbol: str, embedding: complex):
        self.minpoly = tuple(Fraction(c) for c in minpoly)
        self.degree = len(self.minpoly) - 1
        self.name = name
        self.gen_symbol = gen_symbol
        self.embedding = embedding
        # x^k mod minpoly for k < 2*degree, used by multiplication
        red = []
        for k in range(2 * self.degree - 1):
            mono = [Fraction(0)] * k + [Fraction(1)]
            _, r = _qpoly_divmod(mono, self.minpoly)
            red.append(tuple(r) + (Fraction(0),) * (self.degree - len(r)))
        self._powers = red

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return self.name

    def minpoly_string(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.minpoly[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef} {mono}")
            else:
                terms.append(f"{'-' if c < 0 else '+'} {abs(c)}{'*' + mono if mono else ''}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def gen(self) -> NFElem:
        if self.degree == 1:
            return NFElem(self, [-self.minpoly[0]])
        return NFElem(self, [0, 1])

    def __call__(self, value) -> NFElem:
        if isinstance(value, NFElem):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        return NFElem(self, [value])


def nf_make(minpoly) -> NumberField:
    """Build a supported number field from a monic minimal polynomial over Q.

    ``minpoly`` is either a UPoly over Q or a coefficient sequence, lowest
    degree first.
    """
    coeffs = getattr(minpoly, "coeffs", minpoly)
    c = _qpoly_trim(Fraction(x) for x in coeffs)
    if len(c) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    if c[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    deg = len(c) - 1
    if deg == 1:
        a = -c[0]
        return NumberField(c, "Q", str(a), complex(a))
    if deg == 2:
        b, cc = c[1], c[0]
        disc = b * b - 4 * cc
        if _is_rational_square(disc):
            raise ValueError("reducible quadratic: discriminant is a rational square")
        root = (-float(b) + cmath.sqrt(float(disc))) / 2
        if b == 0 and cc == 1:
            return NumberField(c, "Q(i)", "i", 1j)
        for d in (3, 6):
            if tuple(int(x) for x in c) == cyclotomic_coeffs(d) and all(
                x.denominator == 1 for x in c
            ):
                return NumberField(c, f"Q(zeta{d})", f"zeta{d}", cmath.exp(2j * cmath.pi / d))
        if b == 0 and (-cc).denominator == 1:
            D = int(-cc)
            s, sq = squarefree_part(D)
            if s == 1:
                return NumberField(c, f"Q(sqrt({D}))", f"sqrt({D})", cmath.sqrt(D))
        return NumberField(c, f"Q[x]/({_poly_str(c)})", "x", root)
    if all(x.denominator == 1 for x in c):
        ic = tuple(int(x) for x in c)
        for d in range(3, 13):
            if ic == cyclotomic_coeffs(d):
                return NumberField(c, f"Q(zeta{d})", f"zeta{d}", cmath.exp(2j * cmath.pi / d))
    raise ValueError("unsupported minimal polynomial (only quadratics and cyclotomics d <= 12)")


def _poly_str(c):
    return " + ".join(f"{x}*x^{k}" for k, x in enumerate(c) if x != 0)


@lru_cache(maxsize=None)
def quadratic_field(D: int) -> NumberField:
    """Q(sqrt(D)) for a squarefree integer D != 0, 1."""
    return nf_make([-D, 0, 1])


@lru_cache(maxsize=None)
def cyclotomic_field(d: int) -> NumberField:
    return nf_make(cyclotomic_coeffs(d))


def root_of_unity(d: int):
    """A primitive d-th root of unity: 1 or -1 as a Fraction for d <= 2."""
    if d == 1:
        return Fraction(1)
    if d == 2:
        return Fraction(-1)
    return cyclotomic_field(d).gen()


class NFElem:
    """Element sum(coeffs[k] * x^k) of a number field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        c = [Fraction(x) for x in coeffs]
        n = field.degree
        if len(c) > n:
            c = _reduce(field, c)
        c = c + [Fraction(0)] * (n - len(c))
        self.field = field
        self.coeffs = tuple(c)

    # coercion -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ValueError(f"mixing fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [other])
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = complex(0)
        g = self.field.embedding
        for c in reversed(self.coeffs):
            z = z * g + float(c)
        return z

    __complex__ = to_complex

    # arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [a * other for a in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] += a * b
        out = [Fraction(0)] * n
        for k, c in enumerate(prod):
            if c == 0:
                continue
            if k < n:
                out[k] += c
            else:
                for m, r in enumerate(self.field._powers[k]):
                    out[m] += c * r
        return NFElem(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> NFElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid in Q[x]: s*a + t*m = 1
        m = list(self.field.minpoly)
        a = _qpoly_trim(self.coeffs)
        r0, r1 = m, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        inv_c = 1 / r1[0]
        return NFElem(self.field, [x * inv_c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElem(self.field, [a / other for a in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = NFElem(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, NFElem):
            return other.field == self.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.minpoly, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        parts = []
        sym = self.field.gen_symbol
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = sym if k == 1 else f"{sym}^{k}"
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "field": self.field.minpoly_string(),
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @staticmethod
    def from_json(data: dict, field: NumberField) -> NFElem:
        return NFElem(field, [Fraction(a, b) for a, b in data["coeffs"]])


def _reduce(field: NumberField, c):
    _, r = _qpoly_divmod(c, field.minpoly)
    return r


def to_complex(x) -> complex:
    """Complex value of an int, Fraction, float, complex or NFElem."""
    if isinstance(x, NFElem):
        return x.to_complex()
    return complex(x)


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z()
    return x == 0


def field_of(*values):
    """The common NumberField of the NFElem values, or None when all are rational."""
    f = None
    for v in values:
        if isinstance(v, NFElem):
            if f is None:
                f = v.field
            elif f != v.field:
                raise ValueError("values live in different number fields")
    return f


def scalar_json(x):
    if isinstance(x, NFElem):
        return x.to_json()
    x = Fraction(x)
    return [x.numerator, x.denominator]
