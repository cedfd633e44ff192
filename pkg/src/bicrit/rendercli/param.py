"""From a point u of the complex torus to a map in Per_{2,5}.

u goes to (P(u), P'(u)), then through the recorded coordinate changes to the
affine chart (X, Y) = (CR(3,4,5,1), CR(5,2,3,4)) of the plane cubic, and
finally to the cycle coordinates (x3, x4, x5).  The last step uses the
inverse of the chart, which is a ratio of quadrics:

    x3 = (X^2 + Y - Y^2) / (-X^2 + 2XY - 2X - Y^2 + Y)
    x4 = (-X^2 - Y + Y^2) / (-X^2 + 2XY - Y^2 + Y)
    x5 = (-X^2 - Y + Y^2) / (X^2 + 2XY - Y^2 - Y)

An independent route solves the curve equations constrained to the chart
values by elimination; the two are compared in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..elliptic import PER25_CUBIC, Lattice, WeierstrassCurve, periods, weierstrass_from_plane
from ..moduli import HPoint, InvalidHPoint, cross_ratio_values, is_inf
from ..percurve import diagonal_system
from ..percurve.solve import complex_poly
from .wp import Pole, wp, wp_array

RESIDUAL_TOL = 1e-7


@dataclass(frozen=True)
class Degenerate:
    """No valid parameter point (a puncture, a wall, or a pole)."""

    reason: str


@dataclass(frozen=True)
class CurveModel:
    """The cubic's Weierstrass model, the sign relating their x coordinates, and the lattice."""

    w: WeierstrassCurve
    sign: int
    lattice: Lattice


@lru_cache(maxsize=1)
def per25_model() -> CurveModel:
    w, s = weierstrass_from_plane(PER25_CUBIC)
    return CurveModel(w, s, periods(w))


# -- coordinate changes --------------------------------------------------------------


def chart_from_wp(p, dp, model: CurveModel):
    """(X, Y) on the cubic's affine chart from (P, P')."""
    inv = model.w.invariants()
    xw = p - float(inv.b2) / 12
    yw = (dp - float(model.w.a1) * xw - float(model.w.a3)) / 2
    return model.sign * xw, yw


def wp_from_chart(X, Y, model: CurveModel):
    inv = model.w.invariants()
    xw = model.sign * X
    return xw + float(inv.b2) / 12, 2 * Y + float(model.w.a1) * xw + float(model.w.a3)


def inverse_chart(X, Y):
    """(x3, x4, x5) from (X, Y); works elementwise on arrays."""
    X2, Y2, XY = X * X, Y * Y, X * Y
    num = Y2 - Y - X2
    d3 = -X2 + 2 * XY - 2 * X - Y2 + Y
    d4 = -X2 + 2 * XY - Y2 + Y
    d5 = X2 + 2 * XY - Y2 - Y
    return (-num) / d3, num / d4, num / d5, (d3, d4, d5)


def chart_of_cycle(xs) -> tuple:
    """(X, Y) of a configuration: a_3..a_5 with a_1 = 0, a_2 = 1, or all of a_1..a_5 (INF allowed)."""
    if len(xs) == 5:
        pos = dict(zip("12345", xs))
    else:
        pos = {"1": 0, "2": 1, "3": xs[0], "4": xs[1], "5": xs[2]}
    X = cross_ratio_values(pos["3"], pos["4"], pos["5"], pos["1"], strict=False)
    Y = cross_ratio_values(pos["5"], pos["2"], pos["3"], pos["4"], strict=False)
    return X, Y


def diagonal_residual(xs) -> float:
    """Largest residual of the two cycle relations, relative to the size of the point."""
    scale = max(1.0, max(abs(v) for v in xs)) ** 6
    return max(abs(f(tuple(xs))) for f in _diagonal_funcs()) / scale


@lru_cache(maxsize=1)
def _diagonal_funcs():
    return [complex_poly(e) for e in diagonal_system(2, 5).equations]


def _validate(xs):
    if any(not np.isfinite(v) for v in xs):
        return Degenerate("a cycle point is at infinity")
    try:
        h = HPoint.from_list(2, [complex(v) for v in xs])
        h.check(tol=1e-9)
    except InvalidHPoint as e:
        return Degenerate(f"wall: {e}")
    if diagonal_residual(xs) > RESIDUAL_TOL:
        return Degenerate("curve equations not satisfied")
    return h


def param_point(u: complex, model: CurveModel | None = None):
    """HPoint for u, or Degenerate near punctures, walls and the pole."""
    model = model or per25_model()
    r = wp(u, model.lattice)
    if isinstance(r, Pole):
        return Degenerate("pole: u is a lattice point (the puncture p2)")
    X, Y = chart_from_wp(*r, model)
    return point_from_chart(X, Y)


def point_from_chart(X: complex, Y: complex):
    x3, x4, x5, dens = inverse_chart(complex(X), complex(Y))
    if min(abs(d) for d in dens) < 1e-12:
        return Degenerate("chart inverse undefined")
    return _validate((x3, x4, x5))


def param_array(us: np.ndarray, model: CurveModel | None = None):
    """Vectorized param_point: arrays x3, x4, x5 and a validity mask."""
    model = model or per25_model()
    p, dp = wp_array(us, model.lattice)
    X, Y = chart_from_wp(p, dp, model)
    with np.errstate(all="ignore"):
        x3, x4, x5, dens = inverse_chart(X, Y)
        ok = np.isfinite(p) & np.all([np.abs(d) > 1e-12 for d in dens], axis=0)
        vals = [np.zeros_like(x3), np.ones_like(x3), x3, x4, x5]
        for i in range(5):
            for j in range(i + 1, 5):
                ok &= np.abs(vals[i] - vals[j]) > 1e-9
        sq = [v * v for v in vals[2:]] + [np.ones_like(x3), np.zeros_like(x3)]
        for i in range(len(sq)):
            for j in range(i + 1, len(sq)):
                ok &= np.abs(sq[i] - sq[j]) > 1e-9
        ok &= np.isfinite(x3) & np.isfinite(x4) & np.isfinite(x5)
    return x3, x4, x5, ok


# -- the elimination route -----------------------------------------------------------


def _pmul(a: dict, b: dict) -> dict:
    out = {}
    for (i, j), c in a.items():
        for (k, m), e in b.items():
            key = (i + k, j + m)
            out[key] = out.get(key, 0) + c * e
    return out


def _padd(*ps, signs=None) -> dict:
    out = {}
    for p, s in zip(ps, signs or [1] * len(ps)):
        for k, c in p.items():
            out[k] = out.get(k, 0) + s * c
    return out


def _const(c) -> dict:
    return {(0, 0): c}


def _eval_x3(p: dict, x3: complex) -> np.ndarray:
    """Coefficients in x4 (lowest first) after fixing x3."""
    deg = max(j for _, j in p)
    out = np.zeros(deg + 1, dtype=complex)
    for (i, j), c in p.items():
        out[j] += c * x3 ** i
    return out


def _sylvester(f: np.ndarray, g: np.ndarray) -> complex:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    S = np.zeros((size, size), dtype=complex)
    fh, gh = f[::-1], g[::-1]
    for i in range(n):
        S[i, i:i + m + 1] = fh
    for i in range(m):
        S[n + i, i:i + n + 1] = gh
    return complex(np.linalg.det(S))


def _eliminated(X: complex, Y: complex):
    """Chart-constrained equations in (x3, x4) with x5 = x3 x4 (X - 1) / (X x3 - x4) substituted."""
    x3, x4 = {(1, 0): 1}, {(0, 1): 1}
    one = _const(1)
    N = _pmul(_pmul(x3, x4), _const(X - 1))
    D = _padd(_pmul(_const(X), x3), x4, signs=[1, -1])
    # Y (x4 - x5)(x3 - 1) = (x4 - 1)(x3 - x5), times D
    lhs = _pmul(_pmul(_const(Y), _padd(_pmul(x4, D), N, signs=[1, -1])), _padd(x3, one, signs=[1, -1]))
    rhs = _pmul(_padd(x4, one, signs=[1, -1]), _padd(_pmul(x3, D), N, signs=[1, -1]))
    ya = _padd(lhs, rhs, signs=[1, -1])
    # x3 (x3^2 - P) = x4 ((x3 P + 1 - P) x3^2 - x3 P), P = N^2 / D^2, times D^2
    N2, D2 = _pmul(N, N), _pmul(D, D)
    x3sq = _pmul(x3, x3)
    left = _pmul(x3, _padd(_pmul(x3sq, D2), N2, signs=[1, -1]))
    inner = _padd(_pmul(_padd(_pmul(x3, N2), D2, N2, signs=[1, 1, -1]), x3sq), _pmul(x3, N2), signs=[1, -1])
    e1 = _padd(left, _pmul(x4, inner), signs=[1, -1])
    clean = [{k: c for k, c in p.items() if abs(c) > 0} for p in (ya, e1)]
    return clean


def param_point_resultant(X: complex, Y: complex):
    """Recover (x3, x4, x5) from (X, Y) by elimination; the best valid candidate or Degenerate."""
    ya, e1 = _eliminated(complex(X), complex(Y))
    dx = max(i for i, _ in ya) * max(j for _, j in e1) + max(i for i, _ in e1) * max(j for _, j in ya)
    K = 1 << int(np.ceil(np.log2(dx + 1)))
    zs = np.exp(2j * np.pi * np.arange(K) / K)
    vals = np.array([_sylvester(_eval_x3(ya, z), _eval_x3(e1, z)) for z in zs])
    coeffs = np.fft.fft(vals) / K
    coeffs = coeffs[: dx + 1]
    big = np.max(np.abs(coeffs))
    nz = np.nonzero(np.abs(coeffs) > 1e-10 * big)[0]
    coeffs = coeffs[: nz[-1] + 1]
    best, best_res = None, np.inf
    for r3 in np.roots(coeffs[::-1]):
        c4 = _eval_x3(ya, r3)
        c4 = np.trim_zeros(c4, "b")
        if len(c4) < 2:
            continue
        for r4 in np.roots(c4[::-1]):
            den = X * r3 - r4
            if abs(den) < 1e-12:
                continue
            r5 = r3 * r4 * (X - 1) / den
            xs = _polish((r3, r4, r5), X, Y)
            h = _validate(xs)
            if isinstance(h, Degenerate):
                continue
            res = diagonal_residual(xs) + max(abs(a - b) for a, b in zip(chart_of_cycle(xs), (X, Y)))
            if res < best_res:
                best, best_res = h, res
    if best is None or best_res > RESIDUAL_TOL:
        return Degenerate("no candidate under the residual threshold")
    return best


def _polish(xs, X, Y, steps: int = 20):
    """Gauss-Newton on the two curve equations and the two chart equations."""
    eqs = diagonal_system(2, 5).equations
    fs = [complex_poly(e) for e in eqs]
    js = [[complex_poly(e.diff(k)) for k in range(3)] for e in eqs]
    x = np.array(xs, dtype=complex)
    for _ in range(steps):
        a3, a4, a5 = x
        F = [f(x) for f in fs]
        J = [[g(x) for g in row] for row in js]
        # chart equations, cleared: X a3 (a5 - a4) - a4 (a5 - a3), Y (a4 - a5)(a3 - 1) - (a4 - 1)(a3 - a5)
        F.append(X * a3 * (a5 - a4) - a4 * (a5 - a3))
        J.append([X * (a5 - a4) + a4, -X * a3 - (a5 - a3), X * a3 - a4])
        F.append(Y * (a4 - a5) * (a3 - 1) - (a4 - 1) * (a3 - a5))
        J.append([Y * (a4 - a5) - (a4 - 1), Y * (a3 - 1) - (a3 - a5), -Y * (a3 - 1) + (a4 - 1)])
        with np.errstate(all="ignore"):
            dx, *_ = np.linalg.lstsq(np.array(J), -np.array(F), rcond=None)
        if not np.all(np.isfinite(dx)):
            break
        x = x + dx
        if np.linalg.norm(dx) < 1e-15 * max(1.0, np.linalg.norm(x)):
            break
    return tuple(complex(v) for v in x)


def chart_of_hpoint(h: HPoint) -> tuple:
    xs = [h.x[3], h.x[4], h.x[5]]
    X, Y = chart_of_cycle(xs)
    return complex(X), complex(Y)


def u_of_cycle(xs, model: CurveModel | None = None) -> complex:
    """A torus point for a cycle (INF entries allowed), via the elliptic logarithm."""
    from .wp import elliptic_log

    model = model or per25_model()
    X, Y = chart_of_cycle(xs)
    if is_inf(X) or is_inf(Y):
        raise ValueError("the chart point is at infinity")
    p, dp = wp_from_chart(complex(X), complex(Y), model)
    return elliptic_log(p, dp, model.lattice)
