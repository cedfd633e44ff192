"""Dense univariate polynomials over an arbitrary coefficient ring.

Coefficients are stored lowest degree first.  Division-based operations
(divmod, gcd, resultant via remainders) need field coefficients: Fraction,
NFElem, RFunc or complex.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import is_zero


def _trim(coeffs):
    c = list(coeffs)
    while c and is_zero(c[-1]):
        c.pop()
    return tuple(c)


def _one_like(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(1)
    return c * 0 + 1


def _zero_like(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(0)
    return c * 0


class UPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "x"):
        c = [Fraction(x) if isinstance(x, int) else x for x in coeffs]
        self.coeffs = _trim(c)
        self.var = var

    @classmethod
    def monomial(cls, k: int, coeff=Fraction(1), var: str = "x") -> UPoly:
        return cls([0] * k + [coeff], var)

    @classmethod
    def x(cls, var: str = "x") -> UPoly:
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots, var: str = "x") -> UPoly:
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    # basic structure --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def _wrap(self, coeffs) -> UPoly:
        return UPoly(coeffs, self.var)

    def _as_poly(self, other):
        if isinstance(other, UPoly):
            return other
        return self._wrap([other])

    # ring operations --------------------------------------------------
    def __add__(self, other):
        o = self._as_poly(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return self._as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self._wrap([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._wrap([])
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = _zero_like(a[0] * b[0])
        return self._wrap([zero if v is None else v for v in out])

    def __rmul__(self, other):
        return self._wrap([other * c for c in self.coeffs])

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self._wrap([_one_like(self.lc()) if self.coeffs else Fraction(1)])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return len(self.coeffs) == len(other.coeffs) and all(
                is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs)
            )
        return self == self._as_poly(other)

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        if not self.coeffs:
            return _zero_like(x) if not isinstance(x, (int, Fraction)) else Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> UPoly:
        return self._wrap([c * k for k, c in enumerate(self.coeffs)][1:])

    def compose(self, g: UPoly) -> UPoly:
        out = self._wrap([])
        for c in reversed(self.coeffs):
            out = out * g + c
        return out

    def map_coeffs(self, fn) -> UPoly:
        return self._wrap([fn(c) for c in self.coeffs])

    def to_complex(self) -> list:
        from .fields import to_complex

        return [to_complex(c) for c in self.coeffs]

    # field operations -------------------------------------------------
    def divmod(self, other: UPoly):
        other = self._as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lc = other.lc()
        q = [None] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            k = len(r) - 1 - db
            f = r[-1] / lc
            q[k] = f
            for i, y in enumerate(other.coeffs):
                r[i + k] = r[i + k] - f * y
            r.pop()
            while r and is_zero(r[-1]):
                r.pop()
        zero = _zero_like(lc)
        return self._wrap([zero if v is None else v for v in q]), self._wrap(r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: UPoly) -> UPoly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> UPoly:
        if self.is_zero():
            return self
        return self * (1 / self.lc()) if isinstance(self.lc(), (int, Fraction)) else self._wrap(
            [c / self.lc() for c in self.coeffs]
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if is_zero(c):
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(reversed(terms))


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over a field."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_resultant(f: UPoly, g: UPoly):
    """Resultant res(f, g) over a field, via the Euclidean remainder sequence.

    Uses res(f, g) = (-1)^(m n) lc(g)^(m - deg r) res(g, r) with r = f mod g.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    sign = 1
    acc = None
    while True:
        m, n = f.degree, g.degree
        if m < 0 or n < 0:
            return Fraction(0) if acc is None else acc * 0
        if n == 0:
            val = g.lc() ** m if m > 0 else _one_like(g.lc())
            break
        if m == 0:
            val = f.lc() ** n
            break
        r = f % g
        if r.is_zero():
            return _zero_like(f.lc())
        k = r.degree
        factor = g.lc() ** (m - k)
        if (m * n) % 2:
            sign = -sign
        acc = factor if acc is None else acc * factor
        f, g = g, r
    out = val if acc is None else acc * val
    return -out if sign < 0 else out


def poly_discriminant(f: UPoly):
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = poly_resultant(f, f.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r / f.lc()


def sylvester_matrix(fc, gc):
    """Sylvester matrix for coefficient lists with formal degrees len-1."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = Fraction(0)
    rows = []
    fhigh = list(reversed(fc))
    ghigh = list(reversed(gc))
    for i in range(n):
        rows.append([zero] * i + fhigh + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + ghigh + [zero] * (size - n - 1 - i))
    return rows


def det(rows):
    """Determinant by Gaussian elimination over a field."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    result = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not is_zero(a[r][col]):
                piv = r
                break
        if piv is None:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = 1 / p
        for r in range(col + 1, n):
            if is_zero(a[r][col]):
                continue
            f = a[r][col] * inv
            row_c = a[col]
            row_r = a[r]
            for k in range(col, n):
                if not is_zero(row_c[k]):
                    row_r[k] = row_r[k] - f * row_c[k]
    return result


def sylvester_resultant(fc, gc):
    """Resultant from coefficient lists (lowest first) with formal degrees.

    Unlike :func:`poly_resultant` this respects the formal degrees even when
    leading coefficients vanish, which is what specialisation of a generic
    resultant requires.
    """
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 and n == 0:
        return Fraction(1)
    return det(sylvester_matrix(fc, gc))


def squarefree_decomposition(f: UPoly):
    """Yun's algorithm (characteristic 0). Returns [(factor, multiplicity)]."""
    if f.degree < 1:
        return []
    out = []
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(f: UPoly) -> UPoly:
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def interpolate(xs, ys, var: str = "x") -> UPoly:
    """Lagrange interpolation through exact points (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UPoly([coef[-1]], var)
    for i in range(n - 2, -1, -1):
        p = p * UPoly([-xs[i], 1], var) + coef[i]
    return p
