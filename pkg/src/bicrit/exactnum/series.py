"""Truncated power series in one variable t.

A series stores its valuation v and the next N coefficients, i.e. it is
t^v (c_0 + c_1 t + ... + c_{N-1} t^{N-1}) + O(t^{v+N}).  Coefficients can
be scalars, MPolys (ring operations only) or RFuncs.  Sums track the
absolute precision honestly, so cancellation shows up as a shorter series
rather than as wrong digits.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import is_zero


class OrderExceedsTruncation(ArithmeticError):
    """Every known coefficient vanished; the caller must raise N."""


class TruncSeries:
    __slots__ = ("val", "coeffs", "var")

    def __init__(self, coeffs, val: int = 0, var: str = "t"):
        c = list(coeffs)
        k = 0
        while k < len(c) and is_zero(c[k]):
            k += 1
        self.val = val + k
        self.coeffs = tuple(c[k:])
        self.var = var

    @classmethod
    def from_poly(cls, coeffs, N: int, var: str = "t") -> TruncSeries:
        """Series of an exact polynomial (coefficients lowest first), keeping N terms."""
        c = list(coeffs)
        k = 0
        while k < len(c) and is_zero(c[k]):
            k += 1
        if k == len(c):
            # the exact zero polynomial: known to vanish to any order
            return cls([], val=10**9, var=var)
        tail = c[k : k + N]
        zero = c[k] * 0
        tail = tail + [zero] * (N - len(tail))
        return cls(tail, val=k, var=var)

    @property
    def order(self) -> int:
        """Relative truncation order N (number of known coefficients)."""
        return len(self.coeffs)

    @property
    def precision(self) -> int:
        return self.val + len(self.coeffs)

    def is_known_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        i = k - self.val
        if i < 0:
            return Fraction(0)
        if i >= len(self.coeffs):
            raise OrderExceedsTruncation(f"coefficient of {self.var}^{k} beyond truncation")
        return self.coeffs[i]

    def _zero(self):
        return self.coeffs[0] * 0 if self.coeffs else Fraction(0)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return self._add_const(other)
        p = min(self.precision, other.precision)
        lo = min(self.val, other.val)
        if p <= lo:
            return TruncSeries([], val=p, var=self.var)
        out = []
        for k in range(lo, p):
            i, j = k - self.val, k - other.val
            a = self.coeffs[i] if 0 <= i < len(self.coeffs) else None
            b = other.coeffs[j] if 0 <= j < len(other.coeffs) else None
            if a is None:
                out.append(b if b is not None else other._zero())
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        s = TruncSeries(out, lo, self.var)
        if not s.coeffs:
            return TruncSeries([], val=p, var=self.var)
        return s

    def _add_const(self, c):
        # an exact constant is known to every order
        p = self.precision
        if p <= 0 or is_zero(c):
            return self
        lo = min(self.val, 0)
        zero = c * 0
        out = []
        for k in range(lo, p):
            i = k - self.val
            v = self.coeffs[i] if 0 <= i < len(self.coeffs) else zero
            out.append(v + c if k == 0 else v)
        return TruncSeries(out, lo, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.val, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.val, self.var)
        if not self.coeffs or not other.coeffs:
            p = min(self.precision + other.val, other.precision + self.val)
            return TruncSeries([], val=p, var=self.var)
        N = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(N):
            acc = None
            for i in range(k + 1):
                if is_zero(a[i]) or is_zero(b[k - i]):
                    continue
                t = a[i] * b[k - i]
                acc = t if acc is None else acc + t
            out.append(acc if acc is not None else a[0] * 0)
        return TruncSeries(out, self.val + other.val, self.var)

    def __rmul__(self, other):
        return TruncSeries([other * c for c in self.coeffs], self.val, self.var)

    def inverse(self) -> TruncSeries:
        if not self.coeffs:
            raise OrderExceedsTruncation("inverse of a series with no known nonzero term")
        a = self.coeffs
        N = len(a)
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, N):
            acc = None
            for j in range(1, k + 1):
                if is_zero(a[j]):
                    continue
                t = a[j] * b[k - j]
                acc = t if acc is None else acc + t
            b.append(-(acc * inv0) if acc is not None else inv0 * 0)
        return TruncSeries(b, -self.val, self.var)

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c / other for c in self.coeffs], self.val, self.var)
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            base = base * base
            k >>= 1
        if result is None:
            one = self.coeffs[0] * 0 + 1 if self.coeffs else Fraction(1)
            return TruncSeries([one] + [one * 0] * (len(self.coeffs) - 1), 0, self.var)
        return result

    def truncate(self, N: int) -> TruncSeries:
        return TruncSeries(self.coeffs[:N], self.val, self.var)

    def map_coeffs(self, fn) -> TruncSeries:
        return TruncSeries([fn(c) for c in self.coeffs], self.val, self.var)

    def __repr__(self):
        if not self.coeffs:
            return f"O({self.var}^{self.val})"
        terms = [f"({c})*{self.var}^{self.val + i}" for i, c in enumerate(self.coeffs) if not is_zero(c)]
        return " + ".join(terms) + f" + O({self.var}^{self.precision})"


def series_leading(s: TruncSeries):
    """(order, coefficient) of the first nonzero term of s.

    Raises OrderExceedsTruncation when every known coefficient vanishes.
    """
    if not s.coeffs:
        raise OrderExceedsTruncation(f"series vanishes up to O({s.var}^{s.val})")
    return s.val, s.coeffs[0]
