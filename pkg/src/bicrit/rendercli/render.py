"""Classifying maps by the fate of the free critical point, and rendering the torus picture.

A pixel is a point u of the torus C / (Z w1 + Z w2).  It becomes a map
f(z) = M(z^2) with the marked 5-cycle 0 -> 1 -> x3 -> x4 -> x5, and the orbit
of the free critical point infinity is followed in the chordal metric.  The
pixel is black when that orbit is not attracted to the cycle, and coloured
by the first hit otherwise.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..moduli import INF
from ..percurve import DynMap, chordal
from .param import CurveModel, param_array, per25_model, u_of_cycle, wp_from_chart
from .wp import elliptic_log

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class Attracted:
    first_hit: int


@dataclass(frozen=True)
class NotAttracted:
    pass


@dataclass(frozen=True)
class ParallelogramDomain:
    """The fundamental parallelogram, centered at offset."""

    offset: complex = 0j


@dataclass(frozen=True)
class ChartWindow:
    """A rectangle of complex X values on the cubic's affine chart, with a choice of branch for Y."""

    x_min: float = -2.0
    x_max: float = 2.0
    y_min: float = -2.0
    y_max: float = 2.0
    branch: int = 0


PALETTES = {
    "default": [(255, 221, 87), (244, 143, 66), (201, 76, 76), (126, 58, 140), (61, 90, 171),
                (56, 160, 178), (92, 184, 92), (200, 200, 200)],
    "gray": [(255 - 20 * k, 255 - 20 * k, 255 - 20 * k) for k in range(10)],
}
BLACK = (0, 0, 0)
DEGENERATE = (64, 64, 64)
RED = (230, 20, 20)
BLUE = (30, 60, 255)


@dataclass
class RenderConfig:
    width: int = 64
    height: int = 64
    maxiter: int = 200
    eps_attract: float = 1e-3
    domain: object = field(default_factory=ParallelogramDomain)
    palette: str = "default"
    overlay_punctures: bool = False
    overlay_pcf: bool = False
    output: str | None = None

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("width and height must be positive")
        if self.maxiter < 1:
            raise ValueError("maxiter must be at least 1")
        if not self.eps_attract > 0:
            raise ValueError("eps_attract must be positive")
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}")


def load_config(path) -> RenderConfig:
    """Read a TOML file; keys mirror RenderConfig, with a [domain] table."""
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    dom = data.pop("domain", {"kind": "parallelogram"})
    kind = dom.pop("kind", "parallelogram")
    if kind == "parallelogram":
        domain = ParallelogramDomain(complex(dom.get("offset_re", 0.0), dom.get("offset_im", 0.0)))
    elif kind == "chart":
        domain = ChartWindow(**dom)
    else:
        raise ValueError(f"unknown domain kind {kind!r}")
    known = {"width", "height", "maxiter", "eps_attract", "palette", "overlay_punctures", "overlay_pcf", "output"}
    extra = set(data) - known
    if extra:
        raise ValueError(f"unknown config keys: {sorted(extra)}")
    return RenderConfig(domain=domain, **data)


# -- classification ----------------------------------------------------------------


def _window(k: int, period: int) -> int:
    """Steps between the first hit and the confirming check: the doubling window, at least one period."""
    return max(k, period)


def classify(f: DynMap, cfg: RenderConfig, z0=INF):
    """Attracted(k) if the orbit of z0 is within eps of the cycle at step k and again after the window."""
    cycle = f.cycle
    period = len(cycle)
    z = z0
    orbit = [z]
    hit = 0
    check = 0
    for t in range(1, 2 * cfg.maxiter + period + 1):
        z = f(z)
        orbit.append(z)
        dist = min(chordal(z, c) for c in cycle)
        if hit and t == check:
            if dist < cfg.eps_attract:
                return Attracted(hit)
            hit = 0
        if not hit and t <= cfg.maxiter and dist < cfg.eps_attract:
            hit, check = t, t + _window(t, period)
        if not hit and t >= cfg.maxiter:
            break
    return NotAttracted()


def _hom_dist(p, q, x):
    """Chordal distance between [p : q] and the finite point x, elementwise."""
    return 2 * np.abs(p - x * q) / (np.sqrt(np.abs(p) ** 2 + np.abs(q) ** 2) * np.sqrt(np.abs(x) ** 2 + 1))


def classify_array(x3, x4, x5, ok, cfg: RenderConfig) -> np.ndarray:
    """First-hit indices (0 for not attracted, -1 for degenerate) for arrays of cycle coordinates."""
    shape = x3.shape
    x3, x4, x5 = (np.where(ok, v, 0.5) for v in (x3, x4, x5))
    P = x5 * x5
    a, b, c, e = x3, -x3 * P, x3 * P + 1 - P, -x3 * P
    cycle = [np.zeros_like(x3), np.ones_like(x3), x3, x4, x5]
    period = len(cycle)
    p = np.ones(shape, dtype=complex)
    q = np.zeros(shape, dtype=complex)
    hit = np.zeros(shape, dtype=int)
    check = np.zeros(shape, dtype=int)
    result = np.zeros(shape, dtype=int)
    done = ~ok.copy()
    with np.errstate(all="ignore"):
        for t in range(1, 2 * cfg.maxiter + period + 1):
            p2, q2 = p * p, q * q
            p, q = a * p2 + b * q2, c * p2 + e * q2
            s = np.maximum(np.abs(p), np.abs(q))
            s = np.where(s > 0, s, 1.0)
            p, q = p / s, q / s
            dist = np.min([_hom_dist(p, q, x) for x in cycle], axis=0)
            near = dist < cfg.eps_attract
            confirm = (~done) & (hit > 0) & (check == t)
            result = np.where(confirm & near, hit, result)
            done |= confirm & near
            hit = np.where(confirm & ~near, 0, hit)
            start = (~done) & (hit == 0) & near & (t <= cfg.maxiter)
            hit = np.where(start, t, hit)
            check = np.where(start, t + np.maximum(t, period), check)
            done |= (hit == 0) & (t >= cfg.maxiter)
            if done.all():
                break
    result = np.where(ok, result, -1)
    return result


# -- rendering ---------------------------------------------------------------------


@dataclass
class Image:
    width: int
    height: int
    data: bytearray

    def __post_init__(self):
        if len(self.data) != 3 * self.width * self.height:
            raise ValueError("buffer length must be 3 * width * height")

    def to_ppm(self) -> bytes:
        return f"P6\n{self.width} {self.height}\n255\n".encode() + bytes(self.data)

    def write(self, path) -> None:
        Path(path).write_bytes(self.to_ppm())

    def pixel(self, col: int, row: int) -> tuple:
        k = 3 * (row * self.width + col)
        return tuple(self.data[k:k + 3])


@dataclass
class RenderResult:
    image: Image
    classes: np.ndarray  # per pixel: -1 degenerate, 0 not attracted, k >= 1 first hit
    us: np.ndarray
    overlay: dict = field(default_factory=dict)  # name -> (col, row)

    def counts(self) -> dict:
        c = self.classes
        return {"attracted": int(np.sum(c > 0)), "not_attracted": int(np.sum(c == 0)),
                "degenerate": int(np.sum(c < 0))}


def pixel_grid(cfg: RenderConfig, model: CurveModel) -> np.ndarray:
    """Torus points u of the pixel centres (row 0 at the top)."""
    lat = model.lattice
    s = (np.arange(cfg.width) + 0.5) / cfg.width - 0.5
    t = 0.5 - (np.arange(cfg.height) + 0.5) / cfg.height
    S, T = np.meshgrid(s, t)
    dom = cfg.domain
    if isinstance(dom, ParallelogramDomain):
        return dom.offset + S * lat.omega1 + T * lat.omega2
    raise TypeError("pixel_grid is only defined for the parallelogram domain")


def chart_grid(cfg: RenderConfig) -> tuple:
    dom = cfg.domain
    xs = dom.x_min + (np.arange(cfg.width) + 0.5) / cfg.width * (dom.x_max - dom.x_min)
    ys = dom.y_max - (np.arange(cfg.height) + 0.5) / cfg.height * (dom.y_max - dom.y_min)
    XR, XI = np.meshgrid(xs, ys)
    X = XR + 1j * XI
    # the cubic with z = 1: Y^2 - 3XY + X^3 + X = 0
    disc = np.sqrt(9 * X * X - 4 * (X ** 3 + X))
    Y = (3 * X + (1 if dom.branch == 0 else -1) * disc) / 2
    return X, Y


def pixel_of(u: complex, cfg: RenderConfig, model: CurveModel) -> tuple:
    """(col, row) of the pixel containing u or one of its lattice translates."""
    lat = model.lattice
    m = np.array([[lat.omega1.real, lat.omega2.real], [lat.omega1.imag, lat.omega2.imag]])
    z = u - cfg.domain.offset
    s, t = np.linalg.solve(m, [z.real, z.imag])
    s -= np.floor(s + 0.5)
    t -= np.floor(t + 0.5)
    col = int(np.floor((s + 0.5) * cfg.width))
    row = int(np.floor((0.5 - t) * cfg.height))
    return min(max(col, 0), cfg.width - 1), min(max(row, 0), cfg.height - 1)


def puncture_us(model: CurveModel | None = None) -> dict:
    """Torus points of the ten punctures (p2 is the origin)."""
    from ..elliptic import labelled_punctures
    from ..exactnum import to_complex

    model = model or per25_model()
    out = {}
    for name, p in labelled_punctures().items():
        x, y, z = (to_complex(v) for v in p.plane_image)
        if abs(z) < 1e-14:
            out[name] = 0j
            continue
        pw, dpw = wp_from_chart(x / z, y / z, model)
        out[name] = elliptic_log(pw, dpw, model.lattice)
    return out


def pcf_us(model: CurveModel | None = None) -> dict:
    """Torus points of the 20 PCF maps, with their DynMaps."""
    from ..percurve import all_pcf_points

    model = model or per25_model()
    out = {}
    for name, pts in all_pcf_points().items():
        for i, q in enumerate(pts):
            out[f"{name}.{i}"] = (u_of_cycle(q.cycle, model), q.dynmap)
    return out


def render(cfg: RenderConfig, model: CurveModel | None = None) -> RenderResult:
    """Classify every pixel and paint the image; writes a PPM when cfg.output is set."""
    model = model or per25_model()
    if isinstance(cfg.domain, ChartWindow):
        from .param import inverse_chart

        X, Y = chart_grid(cfg)
        with np.errstate(all="ignore"):
            x3, x4, x5, dens = inverse_chart(X, Y)
        ok = np.all([np.abs(d) > 1e-12 for d in dens], axis=0) & np.isfinite(x3) & np.isfinite(x4) & np.isfinite(x5)
        us = np.full(X.shape, np.nan, dtype=complex)
    else:
        us = pixel_grid(cfg, model)
        x3, x4, x5, ok = param_array(us, model)
    classes = classify_array(x3, x4, x5, ok, cfg)
    pal = PALETTES[cfg.palette]
    rgb = np.zeros((cfg.height, cfg.width, 3), dtype=np.uint8)
    rgb[classes == 0] = BLACK
    rgb[classes < 0] = DEGENERATE
    for k in range(1, int(classes.max(initial=0)) + 1):
        rgb[classes == k] = pal[(k - 1) % len(pal)]
    overlay = {}
    if isinstance(cfg.domain, ParallelogramDomain):
        if cfg.overlay_punctures:
            for name, u in puncture_us(model).items():
                overlay[name] = pixel_of(u, cfg, model)
                _dot(rgb, *overlay[name], RED)
        if cfg.overlay_pcf:
            for name, (u, _) in pcf_us(model).items():
                overlay[name] = pixel_of(u, cfg, model)
                _dot(rgb, *overlay[name], BLUE)
    img = Image(cfg.width, cfg.height, bytearray(rgb.tobytes()))
    if cfg.output:
        img.write(cfg.output)
    return RenderResult(img, classes, us, overlay)


def _dot(rgb, col, row, color):
    h, w, _ = rgb.shape
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            r, c = row + dr, col + dc
            if 0 <= r < h and 0 <= c < w:
                rgb[r, c] = color


def classify_pixel(u: complex, cfg: RenderConfig, model: CurveModel | None = None):
    """Scalar classification of one torus point (used to check single pixels)."""
    from .param import Degenerate, param_point

    model = model or per25_model()
    h = param_point(u, model)
    if isinstance(h, Degenerate):
        return h
    return classify(DynMap.from_hpoint(h), cfg)
