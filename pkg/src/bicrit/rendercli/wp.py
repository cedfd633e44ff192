"""The Weierstrass function of a lattice: Laurent series near 0 plus duplication.

A point u is reduced to the centered fundamental parallelogram, halved m
times until it is small against the shortest period, evaluated by the
Laurent series, and doubled back with the tangent construction on
y^2 = 4x^3 - g2 x - g3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..elliptic import Lattice

POLE_TOL = 1e-12
SERIES_TERMS = 24


@dataclass(frozen=True)
class Pole:
    """u lies on (or within POLE_TOL of) a lattice point."""

    u: complex


def laurent_coeffs(g2: complex, g3: complex, terms: int = SERIES_TERMS) -> list:
    """c_k with P(u) = 1/u^2 + sum_{k>=2} c_k u^(2k-2)."""
    c = [0j, 0j, g2 / 20, g3 / 28]
    for k in range(4, terms + 2):
        c.append(3 * sum(c[m] * c[k - m] for m in range(2, k - 1)) / ((2 * k + 1) * (k - 3)))
    return c


def _basis(lat: Lattice):
    return np.array([[lat.omega1.real, lat.omega2.real], [lat.omega1.imag, lat.omega2.imag]])


def reduce_array(u: np.ndarray, lat: Lattice) -> np.ndarray:
    m = _basis(lat)
    st = np.linalg.solve(m, np.vstack([u.real.ravel(), u.imag.ravel()]))
    st -= np.floor(st + 0.5)
    red = st[0] * lat.omega1 + st[1] * lat.omega2
    return red.reshape(u.shape)


def lattice_distance(u: np.ndarray, lat: Lattice) -> np.ndarray:
    red = reduce_array(u, lat)
    best = np.abs(red)
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            best = np.minimum(best, np.abs(red - a * lat.omega1 - b * lat.omega2))
    return best


def wp_array(u, lat: Lattice, terms: int = SERIES_TERMS):
    """(P(u), P'(u)) for an array of u; entries at lattice points come back as nan."""
    u = np.asarray(u, dtype=complex)
    red = reduce_array(u, lat)
    pole = lattice_distance(u, lat) < POLE_TOL
    red = np.where(pole, 1.0, red)
    r0 = 0.125 * min(abs(lat.omega1), abs(lat.omega2))
    m = np.maximum(0, np.ceil(np.log2(np.maximum(np.abs(red), 1e-300) / r0))).astype(int)
    v = red / 2.0 ** m
    c = laurent_coeffs(lat.g2, lat.g3, terms)
    v2 = v * v
    p = 1 / v2
    dp = -2 / (v2 * v)
    vk = np.ones_like(v)
    for k in range(2, terms + 2):
        # vk = v^(2k-4) at the start of the step
        p = p + c[k] * vk * v2
        dp = dp + (2 * k - 2) * c[k] * vk * v
        vk = vk * v2
    g2 = lat.g2
    for step in range(int(m.max()) if m.size else 0):
        act = m > step
        if not np.any(act):
            break
        x1, y1 = p[act], dp[act]
        slope = (12 * x1 * x1 - g2) / (2 * y1)
        x3 = slope * slope / 4 - 2 * x1
        y3 = -(y1 + slope * (x3 - x1))
        p[act], dp[act] = x3, y3
    p = np.where(pole, np.nan, p)
    dp = np.where(pole, np.nan, dp)
    return p, dp


def wp(u: complex, lat: Lattice):
    """(P(u), P'(u)), or Pole(u) near a lattice point."""
    arr = np.array([complex(u)])
    if lattice_distance(arr, lat)[0] < POLE_TOL:
        return Pole(complex(u))
    p, dp = wp_array(arr, lat)
    return complex(p[0]), complex(dp[0])


def elliptic_log(x: complex, y: complex, lat: Lattice, grid: int = 48, steps: int = 60) -> complex:
    """A u in the fundamental parallelogram with (P(u), P'(u)) = (x, y)."""
    s = (np.arange(grid) + 0.5) / grid - 0.5
    S, T = np.meshgrid(s, s)
    us = S * lat.omega1 + T * lat.omega2
    p, _ = wp_array(us, lat)
    u = complex(us.ravel()[np.nanargmin(np.abs(p - x).ravel())])
    for _ in range(steps):
        pu, dpu = wp(u, lat)
        du = (pu - x) / dpu
        u -= du
        if abs(du) < 1e-15 * max(1.0, abs(u)):
            break
    _, dpu = wp(u, lat)
    if abs(dpu - y) > abs(dpu + y):
        u = -u
    return complex(reduce_array(np.array([u]), lat)[0])
