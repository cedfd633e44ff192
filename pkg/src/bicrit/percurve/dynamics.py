"""Bicritical maps f = M(z^d) with a marked periodic critical point, and the curve equations.

The marked critical point 0 has the cycle 0 -> 1 -> x_3 -> ... -> x_n -> 0;
the free critical point is infinity.  The Mobius map M is fixed by
M(x_n^d) = 0, M(0) = 1 and M(1) = x_3, and the remaining cycle relations
M(x_i^d) = x_{i+1} cut out the curve.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..exactnum import MPoly, is_zero
from ..moduli import INF, HPoint, InvalidHPoint, apply_moebius, is_inf, pi_maps
from .solve import PositiveDimensional, newton_system, residual, solve_numeric


class CoincidentInputs(ValueError):
    """Two of the three points defining a Mobius map coincide."""


def _same(a, b) -> bool:
    if is_inf(a) or is_inf(b):
        return is_inf(a) and is_inf(b)
    return is_zero(a - b)


def _to_standard(p1, p2, p3):
    """Matrix sending p1, p2, p3 to 0, infinity, 1."""
    if _same(p1, p2) or _same(p1, p3) or _same(p2, p3):
        raise CoincidentInputs("points must be pairwise distinct")
    if is_inf(p1):
        return ((0, p3 - p2), (1, -p2))
    if is_inf(p2):
        return ((1, -p1), (0, p3 - p1))
    if is_inf(p3):
        return ((1, -p1), (1, -p2))
    return ((p3 - p2, -p1 * (p3 - p2)), (p3 - p1, -p2 * (p3 - p1)))


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _adjugate(a):
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def moebius_from_triple(ps, qs):
    """The matrix M (up to scale) with M(p_i) = q_i; infinity is allowed anywhere."""
    a = _to_standard(*ps)
    b = _to_standard(*qs)
    return _mat_mul(_adjugate(b), a)


def mat_det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _pow(z, d):
    return INF if is_inf(z) else z ** d


@dataclass
class DynMap:
    """f(z) = M(z^d) with marked critical point 0 and free critical point infinity."""

    d: int
    moebius: tuple
    cycle: list  # cycle points starting at 0; INF allowed

    def __post_init__(self):
        if is_zero(mat_det(self.moebius)):
            raise ValueError("singular Mobius matrix")

    def __call__(self, z):
        return apply_moebius(self.moebius, _pow(z, self.d))

    def orbit(self, z, steps: int) -> list:
        out = [z]
        for _ in range(steps):
            out.append(self(out[-1]))
        return out

    def cycle_residual(self) -> float:
        """Largest chordal distance between f(c_i) and c_{i+1} along the cycle."""
        worst = 0.0
        k = len(self.cycle)
        for i, c in enumerate(self.cycle):
            worst = max(worst, chordal(self(c), self.cycle[(i + 1) % k]))
        return worst

    @classmethod
    def from_cycle(cls, d: int, cycle: list) -> DynMap:
        """The map through a cycle of points, M fixed by three cycle relations with distinct d-th powers."""
        k = len(cycle)
        pairs = []
        for i, c in enumerate(cycle):
            src = _pow(c, d)
            if all(not _close(src, p) for p, _ in pairs):
                pairs.append((src, cycle[(i + 1) % k]))
            if len(pairs) == 3:
                break
        if len(pairs) < 3:
            raise ValueError("cycle has too few distinct d-th powers")
        m = moebius_from_triple([p for p, _ in pairs], [q for _, q in pairs])
        return cls(d, m, list(cycle))

    @classmethod
    def from_hpoint(cls, h: HPoint) -> DynMap:
        xs = h.all_x()
        cycle = [0] + [xs[i] for i in range(2, h.n + 1)]
        m = moebius_from_triple((xs[h.n] ** h.d, 0, 1), (0, 1, xs[3]))
        return cls(h.d, m, cycle)


def _close(a, b, tol: float = 1e-9) -> bool:
    return chordal(a, b) < tol


def chordal(a, b) -> float:
    """Chordal distance on the Riemann sphere."""
    if is_inf(a) and is_inf(b):
        return 0.0
    if is_inf(a):
        a, b = b, a
    za = complex(a)
    if is_inf(b):
        return 2.0 / (1.0 + abs(za) ** 2) ** 0.5
    zb = complex(b)
    return 2.0 * abs(za - zb) / ((1.0 + abs(za) ** 2) ** 0.5 * (1.0 + abs(zb) ** 2) ** 0.5)


# -- the curve equations ------------------------------------------------------------


@dataclass
class DiagonalSystem:
    d: int
    n: int
    names: list
    equations: list  # MPolys in x_3..x_n

    def evaluate(self, xs) -> list:
        return [complex(e.eval([complex(v) for v in xs])) for e in self.equations]


def diagonal_system(d: int, n: int) -> DiagonalSystem:
    """Cleared cycle relations M(x_i^d) = x_{i+1}, i = 3..n-1, with monomial factors removed."""
    if n not in (4, 5):
        raise ValueError("only n = 4 and n = 5 are supported")
    names = [f"x{i}" for i in range(3, n + 1)]
    xs = dict(zip(range(3, n + 1), MPoly.gens(names)))
    P = xs[n] ** d
    x3 = xs[3]
    eqs = []
    for i in range(3, n):
        w = xs[i] ** d
        e = x3 * (w - P) - xs[i + 1] * ((x3 * P + 1 - P) * w - x3 * P)
        eqs.append(_strip(e))
    return DiagonalSystem(d, n, names, eqs)


def _strip(p: MPoly) -> MPoly:
    m = tuple(min(e[i] for e in p.terms) for i in range(p.nvars))
    return p._new({tuple(a - b for a, b in zip(e, m)): c for e, c in p.terms.items()})


def cross_ratio_form_gap(h: HPoint) -> float:
    """Distance between the source and target images in M_{0,n}."""
    return pi_maps(h).max_gap()


def drop_first(p: MPoly, value) -> MPoly:
    """Fix the first variable to value, returning a polynomial in the others."""
    out = {}
    for e, c in p.terms.items():
        key = e[1:]
        out[key] = out.get(key, Fraction(0)) + c * value ** e[0]
    return MPoly(out, p.nvars - 1, p.names[1:])


def exact_period(f: DynMap, n: int, tol: float = 1e-8) -> bool:
    """The orbit of 0 returns to 0 after n steps and not before."""
    orb = f.orbit(0, n)
    if chordal(orb[n], 0) > tol:
        return False
    return all(chordal(orb[k], 0) > 1e-6 for k in range(1, n))


def sample_curve(d: int, n: int, count: int, seed: int = 0, budget: int = 400) -> list:
    """Numeric points of the open curve, from rational values of x_3."""
    sysm = diagonal_system(d, n)
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > budget:
            raise RuntimeError(f"only {len(out)} valid samples after {budget} values of x3")
        x3 = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        if x3 == 0 or x3 ** d == 1:
            continue
        eqs = [drop_first(e, x3) for e in sysm.equations]
        try:
            sols = solve_numeric(eqs)
        except PositiveDimensional:
            continue
        for s in sols:
            full = (complex(x3),) + newton_system(eqs, s)
            if residual(sysm.equations, full) > 1e-10 * max(1.0, max(abs(v) for v in full)) ** (2 * d + 2):
                continue
            try:
                h = HPoint.from_list(d, full)
                h.check(tol=1e-7)
            except InvalidHPoint:
                continue
            if not exact_period(DynMap.from_hpoint(h), n):
                continue
            out.append(h)
            if len(out) == count:
                break
    return out


def hpoint_key(h: HPoint) -> tuple:
    return tuple(np.round([complex(h.x[i]) for i in sorted(h.x)], 9).tolist())


# -- the forgetful cross-ratio map on Per_{d,5} ------------------------------------


@dataclass
class FiberCount:
    target: Fraction
    mark: int  # the target mark whose cross-ratio CR(b_1, b_2, b_3, b_mark) is fixed
    points: list  # HPoints in the fiber


def _eliminated_system(d: int, c: Fraction, mark: int) -> list:
    """Equations in (x_3, x_5) after substituting x_4 = A/B from the first cycle relation."""
    x3, x5 = MPoly.gens(["x3", "x5"])
    P = x5 ** d
    A = x3 * (x3 ** d - P)
    B = (x3 * P + 1 - P) * x3 ** d - x3 * P
    Ad, Bd = A ** d, B ** d
    e2 = x3 * (Ad - P * Bd) - x5 * ((x3 * P + 1 - P) * Ad - x3 * P * Bd)
    if mark == 4:
        cr = x3 ** d * (1 - P) - c * (x3 ** d - P)
    elif mark == 5:
        cr = Ad * (1 - P) - c * (Ad - P * Bd)
    else:
        raise ValueError("mark must be 4 or 5")
    return [_strip(_remove_wall(e2, 1, d)), _strip(_remove_wall(cr, 1, d))]


def _remove_wall(p: MPoly, var: int, d: int) -> MPoly:
    """Divide out every factor u^d - 1 of p, u being variable var (the wall u^d = 1)."""
    while True:
        rest = dict(p.terms)
        quot = {}
        top = max((e[var] for e in rest), default=0)
        for k in range(top, d - 1, -1):
            for e in [e for e in rest if e[var] == k]:
                c = rest.pop(e)
                low = e[:var] + (k - d,) + e[var + 1:]
                quot[low] = quot.get(low, Fraction(0)) + c
                rest[low] = rest.get(low, Fraction(0)) + c
                if rest[low] == 0:
                    del rest[low]
        if any(v != 0 for v in rest.values()) or not quot:
            return p
        p = p._new({e: c for e, c in quot.items() if c != 0})


def cr_fiber(d: int, c, mark: int = 4) -> FiberCount:
    """Points of the open curve Per_{d,5} where CR(b_1, b_2, b_3, b_mark) = c."""
    c = Fraction(c)
    if c in (0, 1):
        raise ValueError("boundary values 0 and 1 are excluded")
    eqs = _eliminated_system(d, c, mark)
    sysm = diagonal_system(d, 5)
    pts = []
    for x3, x5 in solve_numeric(eqs):
        P = x5 ** d
        A = x3 * (x3 ** d - P)
        B = (x3 * P + 1 - P) * x3 ** d - x3 * P
        if abs(B) < 1e-10 * max(1.0, abs(A)):
            continue
        full = newton_system(sysm.equations, (x3, A / B, x5))
        try:
            h = HPoint.from_list(d, full)
            h.check(tol=1e-7)
        except InvalidHPoint:
            continue
        if residual(sysm.equations, full) > 1e-9 or not exact_period(DynMap.from_hpoint(h), 5):
            continue
        if any(max(abs(complex(h.x[i]) - complex(q.x[i])) for i in h.x) < 1e-6 for q in pts):
            continue
        pts.append(h)
    return FiberCount(c, mark, pts)


class UnstableFiber(RuntimeError):
    """The fiber cardinality changed between random targets."""


def rho_degree(d: int = 2, mark: int = 4, trials: int = 3, seed: int = 0) -> int:
    """Degree of the cross-ratio map on Per_{d,5}, as the common size of generic fibers."""
    rng = random.Random(seed)
    sizes = []
    while len(sizes) < trials:
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if c in (0, 1):
            continue
        sizes.append(len(cr_fiber(d, c, mark).points))
    if len(set(sizes)) != 1:
        raise UnstableFiber(f"fiber sizes {sizes}")
    return sizes[0]
