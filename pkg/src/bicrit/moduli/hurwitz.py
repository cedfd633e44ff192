"""Points of the Hurwitz space H_{d,n} and the two forgetful maps.

Coordinates: a_* = infinity, a_1 = 0, a_{2,0} = 1 and a_{i,0} = x_i, with
the cover z -> z^d.  Hidden marks a_{i,k} = zeta^k x_i are labelled "i.k".
Target: b_* = infinity, b_2 = 0 and b_{i mod n + 1} = x_i^d.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from ..exactnum import is_zero
from .points import INF, Configuration, cross_ratio


class InvalidHPoint(ValueError):
    """Coordinates violating the Hurwitz-space open conditions."""


@dataclass
class HPoint:
    d: int
    n: int
    x: dict  # {i: x_i} for i = 3..n

    def __post_init__(self):
        self.x = {int(k): v for k, v in self.x.items()}
        if sorted(self.x) != list(range(3, self.n + 1)):
            raise InvalidHPoint(f"expected coordinates x_3..x_{self.n}")
        self.check()

    @classmethod
    def from_list(cls, d: int, xs) -> HPoint:
        xs = list(xs)
        return cls(d, len(xs) + 2, {i + 3: v for i, v in enumerate(xs)})

    def all_x(self) -> dict:
        out = {2: 1}
        out.update(self.x)
        return out

    def check(self, tol: float = 0.0) -> None:
        xs = self.all_x()

        def small(v):
            return abs(complex(v)) <= tol if tol else is_zero(v)

        for i, v in xs.items():
            if small(v):
                raise InvalidHPoint(f"x_{i} = 0")
        powers = {i: v ** self.d for i, v in xs.items()}
        for i in self.x:
            if small(powers[i] - 1):
                raise InvalidHPoint(f"x_{i}^d = 1")
        keys = sorted(xs)
        for a in keys:
            for b in keys:
                if a < b and small(powers[a] - powers[b]):
                    raise InvalidHPoint(f"x_{a}^d = x_{b}^d")

    def target_label(self, i: int) -> str:
        return str(i % self.n + 1)

    def source_configuration(self, hidden: bool = False) -> Configuration:
        pos = {"*": INF, "1": 0}
        for i, v in self.all_x().items():
            pos[str(i)] = v
            if hidden:
                for k in range(1, self.d):
                    pos[f"{i}.{k}"] = complex(v) * cmath.exp(2j * cmath.pi * k / self.d)
        if hidden:
            pos = {k: (complex(v) if v is not INF else v) for k, v in pos.items()}
        return Configuration(pos, strict=True)

    def target_configuration(self) -> Configuration:
        pos = {"*": INF, "2": 0}
        for i, v in self.all_x().items():
            pos[self.target_label(i)] = v ** self.d
        return Configuration(pos, strict=True)


@dataclass
class PiImages:
    """Both images in M_{0,n}, as the coordinates y_i = CR(1,2,3,i), i = 4..n."""

    source: dict
    target: dict

    def max_gap(self) -> float:
        return max(abs(complex(self.source[i]) - complex(self.target[i])) for i in self.source)


def pi_maps(h: HPoint) -> PiImages:
    """pi_2 (source, forgetting a_*) and pi_1 (target, forgetting b_*) in a common chart."""
    src = h.source_configuration()
    tgt = h.target_configuration()
    ys = {i: cross_ratio(src, "1", "2", "3", str(i)) for i in range(4, h.n + 1)}
    yt = {i: cross_ratio(tgt, "1", "2", "3", str(i)) for i in range(4, h.n + 1)}
    return PiImages(ys, yt)


def power_relation_gap(h: HPoint, i: int, k: int) -> float:
    """|CR(a_*, a_1, a_{2,0}, a_{i,k})^d - CR(b_*, b_2, b_3, b_{i+1})|."""
    src = h.source_configuration(hidden=True)
    tgt = h.target_configuration()
    lab = str(i) if k == 0 else f"{i}.{k}"
    lhs = complex(cross_ratio(src, "*", "1", "2", lab)) ** h.d
    rhs = complex(cross_ratio(tgt, "*", "2", "3", h.target_label(i)))
    return abs(lhs - rhs)
