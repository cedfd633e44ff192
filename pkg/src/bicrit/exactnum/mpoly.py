"""Sparse multivariate polynomials and rational functions.

An MPoly maps exponent tuples to coefficients (Fraction or NFElem).  An
RFunc is a numerator/denominator pair of MPolys.  Multivariate gcds are
not computed; RFunc values are normalised by a scalar content factor and a
common monomial, and compared by cross-multiplication.  Univariate
rational functions are fully reduced through the univariate gcd.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import NFElem, is_zero
from .upoly import UPoly, poly_gcd


class MPoly:
    __slots__ = ("terms", "nvars", "names")

    def __init__(self, terms=None, nvars: int = 1, names=None):
        self.nvars = nvars
        self.names = tuple(names) if names else tuple(f"u{i}" for i in range(nvars))
        t = {}
        for e, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if not is_zero(c):
                t[tuple(e)] = c
        self.terms = t

    # constructors -----------------------------------------------------
    def _new(self, terms) -> MPoly:
        p = MPoly.__new__(MPoly)
        p.nvars = self.nvars
        p.names = self.names
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, nvars: int, names=None) -> MPoly:
        return cls({(0,) * nvars: c}, nvars, names)

    @classmethod
    def var(cls, i: int, nvars: int, names=None) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): Fraction(1)}, nvars, names)

    @classmethod
    def gens(cls, names) -> list:
        names = tuple(names)
        return [cls.var(i, len(names), names) for i in range(len(names))]

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction, NFElem)):
            return MPoly.const(other, self.nvars, self.names)
        return None

    # structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self, i: int | None = None) -> int:
        if not self.terms:
            return -1
        if i is None:
            return max(sum(e) for e in self.terms)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                s = v + c
                if is_zero(s):
                    del t[e]
                else:
                    t[e] = s
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NFElem)):
            if is_zero(other):
                return self._new({})
            return self._new({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in t:
                    t[e] = t[e] + v
                else:
                    t[e] = v
        return self._new({e: c for e, c in t.items() if not is_zero(c)})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, NFElem)):
            return self._new({e: c / other for e, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        result = MPoly.const(Fraction(1), self.nvars, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # evaluation -------------------------------------------------------
    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point):
        """Evaluate at a full point (sequence of scalars or any ring values)."""
        total = None
        pows = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    pk = pows[i].get(k)
                    if pk is None:
                        pk = point[i] ** k
                        pows[i][k] = pk
                    v = v * pk
            total = v if total is None else total + v
        if total is None:
            return Fraction(0)
        return total

    def subs(self, values: dict) -> MPoly:
        """Substitute scalars or MPolys (same variable set) for some variables."""
        out = self._new({})
        cache = {}
        for e, c in self.terms.items():
            rest = list(e)
            term = MPoly.const(c, self.nvars, self.names)
            for i, v in values.items():
                k = e[i]
                rest[i] = 0
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = v ** k
                    term = term * cache[key]
            mono = self._new({tuple(rest): Fraction(1)})
            out = out + term * mono
        return out

    def diff(self, i: int) -> MPoly:
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return self._new(t)

    def as_upoly(self, i: int) -> UPoly:
        """View as a polynomial in variable i with MPoly coefficients."""
        buckets = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets.setdefault(k, {})[tuple(ne)] = c
        if not buckets:
            return UPoly([], self.names[i])
        deg = max(buckets)
        return UPoly([self._new(buckets.get(k, {})) for k in range(deg + 1)], self.names[i])

    def to_univariate(self) -> UPoly:
        """Scalar-coefficient UPoly when at most one variable occurs."""
        used = {i for e in self.terms for i, k in enumerate(e) if k}
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        i = used.pop() if used else 0
        coeffs = {}
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        deg = max(coeffs) if coeffs else -1
        return UPoly([coeffs.get(k, Fraction(0)) for k in range(deg + 1)], self.names[i])

    @classmethod
    def from_univariate(cls, p: UPoly, i: int, nvars: int, names=None) -> MPoly:
        t = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * nvars
            e[i] = k
            t[tuple(e)] = c
        return cls(t, nvars, names)

    def map_coeffs(self, fn) -> MPoly:
        return MPoly({e: fn(c) for e, c in self.terms.items()}, self.nvars, self.names)

    def variables(self) -> set:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift_exponents(self, sub) -> MPoly:
        return self._new({tuple(a - b for a, b in zip(e, sub)): c for e, c in self.terms.items()})

    def scalar_content(self):
        """gcd of rational coefficients (positive), or 1 when not all rational."""
        import math

        if not self.terms:
            return Fraction(1)
        nums, dens = [], []
        for c in self.terms.values():
            if isinstance(c, NFElem):
                if not c.is_rational():
                    return Fraction(1)
                c = c.as_rational()
            nums.append(c.numerator)
            dens.append(c.denominator)
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return Fraction(g, lcm)

    def primitive(self) -> MPoly:
        """Divide out the rational content and make the leading coefficient positive."""
        if not self.terms:
            return self
        c = self.scalar_content()
        p = self / c
        _, lc = p.leading_term()
        if isinstance(lc, Fraction) and lc < 0:
            p = -p
        return p

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            if not mono:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


class RFunc:
    """Quotient num/den of MPolys over a common variable set."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, reduce: bool = True):
        if den is None:
            den = MPoly.const(Fraction(1), num.nvars, num.names)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    @property
    def names(self):
        return self.num.names

    def _coerce(self, other):
        if isinstance(other, RFunc):
            return other
        if isinstance(other, MPoly):
            return RFunc(other)
        if isinstance(other, (int, Fraction, NFElem)):
            return RFunc(MPoly.const(other, self.nvars, self.names))
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RFunc(self.num + o.num, self.den)
        return RFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RFunc is unhashable (equality is by cross-multiplication)")

    def eval(self, point):
        d = self.den.eval(point)
        if is_zero(d):
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.eval(point) / d

    def __call__(self, *point):
        return self.eval(point)

    def subs(self, values: dict) -> RFunc:
        """Substitute scalars or MPolys for some variables."""
        return RFunc(self.num.subs(values), self.den.subs(values))

    def __repr__(self):
        if self.den.is_const():
            return f"{self.num * (1 / self.den.const_value())}" if not self.den == 1 else repr(self.num)
        return f"({self.num})/({self.den})"


def _normalize(num: MPoly, den: MPoly):
    if num.is_zero():
        return num, MPoly.const(Fraction(1), num.nvars, num.names)
    # common monomial factor
    mn, md = num.monomial_content(), den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(mn, md))
    if any(common):
        num = num.shift_exponents(common)
        den = den.shift_exponents(common)
    # univariate: full gcd reduction
    used = num.variables() | den.variables()
    if len(used) == 1:
        i = next(iter(used))
        try:
            pu, qu = _univariate(num, i), _univariate(den, i)
            g = poly_gcd(pu, qu)
            if g.degree > 0:
                num = MPoly.from_univariate(pu.exact_div(g), i, num.nvars, num.names)
                den = MPoly.from_univariate(qu.exact_div(g), i, num.nvars, num.names)
        except (TypeError, ZeroDivisionError):
            pass
    _, lc = den.leading_term()
    if not (isinstance(lc, Fraction) and lc == 1):
        num = num / lc
        den = den / lc
    return num, den


def _univariate(p: MPoly, i: int) -> UPoly:
    coeffs = {}
    for e, c in p.terms.items():
        coeffs[e[i]] = c
    deg = max(coeffs) if coeffs else -1
    return UPoly([coeffs.get(k, Fraction(0)) for k in range(deg + 1)])
