"""The elliptic curve Per_{2,5}-bar: fitted model, invariants, punctures as points, periods."""

from __future__ import annotations

import time
from fractions import Fraction

from ..exactnum import to_complex
from .curves import PlaneCurve, fit_per25_cubic
from .periods import periods, period_convention
from .weierstrass import (
    ExceedsBound,
    Order,
    WeierstrassCurve,
    is_cyclic_group,
    plane_to_point,
    point_order,
    quotient_relation,
    rational_multiple,
    weierstrass_from_plane,
)

PER25_CUBIC = PlaneCurve.from_dict(3, {(3, 0, 0): 1, (0, 2, 1): 1, (1, 1, 1): -3, (1, 0, 2): 1})
# Coordinate change to the minimal model: [x : y : z] -> [-x + z : -x + y + 2z : z].
MINIMAL_CHANGE = [[-1, 0, 1], [-1, 1, 2], [0, 0, 1]]
MINIMAL_AINVS = [1, -1, 1, -1, 0]
REFERENCE_PERIODS = (3.09416, 2.74574)


def _label_key(p):
    """Unprimed member of a conjugate pair: larger real part of s2, then larger imaginary part."""
    s = p.stratum_coords.get("s2", p.stratum_coords.get("CR"))
    if s is None:
        return (0.0, 0.0)
    z = to_complex(s)
    return (round(z.real, 12), round(z.imag, 12))


def labelled_punctures(exact: bool = True) -> dict:
    """Punctures named p1..p7 and p5', p6', p7' after their strata."""
    from ..percurve import per25_punctures

    out = {}
    for name, sol in per25_punctures(exact).items():
        k = name.removeprefix("gamma")
        pts = sorted(sol.punctures, key=_label_key, reverse=True)
        for i, p in enumerate(pts):
            out[f"p{k}" + ("'" * i)] = p
    return out


def puncture_points(w: WeierstrassCurve | None = None, s: int | None = None) -> dict:
    """The punctures as points of the Weierstrass model, O = p2."""
    if w is None:
        w, s = weierstrass_from_plane(PER25_CUBIC)
    return {k: plane_to_point(w, s, p.plane_image) for k, p in labelled_punctures().items()}


def verify_invariants() -> dict:
    """Every exact and numeric claim about the curve, with a pass flag each."""
    t0 = time.perf_counter()
    w, s = weierstrass_from_plane(PER25_CUBIC)
    inv = w.invariants()
    wmin, _ = weierstrass_from_plane(PER25_CUBIC.substitute(MINIMAL_CHANGE))
    inv_min = wmin.invariants()
    pts = puncture_points(w, s)
    rational = [pts[k] for k in ("p1", "p2", "p3", "p4")]
    irrational = [k for k in pts if k not in ("p1", "p2", "p3", "p4")]
    orders = {k: point_order(p) for k, p in pts.items()}
    lat = periods(w)
    conv = period_convention(lat)
    checks = {
        "j": inv.j == Fraction(35937, 17),
        "c4^3 - c6^2 = 1728 disc": inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc,
        "minimal model ainvs": [int(a) for a in wmin.ainvs] == MINIMAL_AINVS,
        "|disc| of minimal model = 17": abs(inv_min.disc) == 17,
        "plane images on the cubic": all(PER25_CUBIC.contains(p.plane_image) for p in labelled_punctures().values()),
        "rational points cyclic of order 4": is_cyclic_group(rational),
        "irrational punctures exceed the torsion bound": all(isinstance(orders[k], ExceedsBound) for k in irrational),
        "p5 + p5' rational": quotient_relation(pts["p5"], pts["p5'"]),
        "p6 + p6' rational": quotient_relation(pts["p6"], pts["p6'"]),
        "p6 + p7 rational": quotient_relation(pts["p6"], pts["p7"]),
        "no multiple of p6 up to 18 is rational": rational_multiple(pts["p6"]) is None,
        "real period": abs(conv["real"] - REFERENCE_PERIODS[0]) < 1e-3,
        "second period (imaginary part)": abs(conv["imag_omega2"] - REFERENCE_PERIODS[1]) < 1e-3,
        "lattice reproduces g2, g3": lat.consistency() < 1e-9,
    }
    return {
        "curve": str(PER25_CUBIC),
        "ainvs": [str(a) for a in w.ainvs],
        "x_sign": s,
        "invariants": inv.as_dict(),
        "minimal_ainvs": [str(a) for a in wmin.ainvs],
        "minimal_disc": str(inv_min.disc),
        "points": {k: [str(v) for v in p.projective()] for k, p in pts.items()},
        "orders": {k: (o.k if isinstance(o, Order) else f">{o.bound}") for k, o in orders.items()},
        "periods": {"omega1": [lat.omega1.real, lat.omega1.imag], "omega2": [lat.omega2.real, lat.omega2.imag],
                    "convention": "real period and imaginary part of the second period", **conv},
        "checks": checks,
        "ok": all(checks.values()),
        "seconds": time.perf_counter() - t0,
    }


def fit_report(samples: int = 24, seed: int = 0) -> dict:
    t0 = time.perf_counter()
    curve = fit_per25_cubic(samples, seed)
    exact_ok = all(curve.contains(p.plane_image) for p in labelled_punctures().values())
    return {
        "curve": str(curve),
        "matches": curve == PER25_CUBIC,
        "punctures_on_curve": exact_ok,
        "samples": samples,
        "seed": seed,
        "ok": curve == PER25_CUBIC and exact_ok,
        "seconds": time.perf_counter() - t0,
    }
