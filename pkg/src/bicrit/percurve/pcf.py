"""Postcritically finite points: the curve meets the strata where the free critical point lands in the cycle.

On these strata the source tree has two components: a bubble carrying a_*
and one cycle mark a_j, and a main component carrying the other marks.
Rescaled to the main component, the limit map is an honest bicritical map
whose cycle passes through infinity.  Each solution is checked twice: by
the leading on-stratum equations and by iterating the limit map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exactnum import MPoly, is_zero
from ..moduli import INF, is_inf
from ..treecover import TABLE_PER25, TABLE_PERD4, CombinatorialType, reference_type
from .dynamics import DynMap, chordal
from .family import LeadingSystem
from .punctures import limit_cross_ratio, solve_stratum, specialized_config
from .solve import DISTINCT_TOL, residual, solve_numeric, strip_monomial

PCF_NAMES = {5: ("gammaI", "gammaII", "gammaIII", "gammaIV"), 4: ("gammaI", "gammaII", "gammaIII")}

# On the first PCF stratum of Per_{2,5}, the coordinates of the closed-form
# equations h1, h2 are these source cross-ratios.
H_COORDS = {"s2": ("1", "2", "4", "5"), "s3": ("1", "2", "3", "5")}


class PcfCountError(RuntimeError):
    """A PCF stratum did not produce the expected number of reduced points."""


@dataclass
class PcfPoint:
    stratum: str
    coords: dict  # unknown name -> complex value
    residual: float  # largest leading-equation residual
    jacobian: complex
    cycle: list  # limit cycle a_1, ..., a_n on the main component (INF allowed)
    dynmap: DynMap | None = None
    cycle_residual: float = 0.0  # chordal error of the cycle relations not used to fit M
    free_orbit_gap: float = 0.0  # chordal distance from f(infinity) to the cycle
    h_coords: dict = field(default_factory=dict)
    h_residuals: tuple = ()

    def to_json(self) -> dict:
        def enc(z):
            return "inf" if is_inf(z) else [complex(z).real, complex(z).imag]

        return {
            "stratum": self.stratum,
            "coords": {k: enc(v) for k, v in self.coords.items()},
            "residual": self.residual,
            "jacobian": enc(self.jacobian),
            "cycle": [enc(c) for c in self.cycle],
            "cycle_residual": self.cycle_residual,
            "free_orbit_gap": self.free_orbit_gap,
            "h_coords": {k: enc(v) for k, v in self.h_coords.items()},
            "h_residuals": list(self.h_residuals),
        }


def pcf_type(name: str, d: int = 2, n: int = 5) -> CombinatorialType:
    table = {5: TABLE_PER25, 4: TABLE_PERD4}.get(n)
    if table is None or name not in PCF_NAMES[n]:
        raise ValueError(f"no PCF stratum {name!r} for n = {n}")
    if n == 5 and d != 2:
        raise ValueError("PCF strata with n = 5 are tabulated for d = 2 only")
    return reference_type(table[name], d, n)


def expected_pcf_count(d: int, n: int) -> int:
    return 5 if n == 5 else d


def limit_cycle(ls: LeadingSystem, pt) -> list:
    """Positions of a_1..a_n rescaled to the component of a_1; marks elsewhere go to 0 or INF."""
    pos = specialized_config(ls, pt, exact=False)
    n = ls.gamma.n
    series = [pos[str(i)] for i in range(1, n + 1)]
    vals = [s.val for s in series if not is_inf(s) and s.coeffs]
    v = max(vals)
    out = []
    for s in series:
        if is_inf(s) or (s.coeffs and s.val < v):
            out.append(INF)
        elif not s.coeffs or s.val > v:
            out.append(0j)
        else:
            out.append(complex(s.coeffs[0]))
    scale = next(c for c in out if not is_inf(c) and abs(c) > 1e-12)
    return [c if is_inf(c) else c / scale for c in out]


def _fit_map(d: int, cycle: list) -> DynMap:
    """Fit M to three finite cycle relations (so the free critical point is not used)."""
    finite = [c for c in cycle if not is_inf(c)]
    k = len(cycle)
    pairs = []
    for i, c in enumerate(cycle):
        if is_inf(c):
            continue
        src = c ** d
        if all(abs(src - p) > 1e-9 for p, _ in pairs):
            pairs.append((src, cycle[(i + 1) % k]))
        if len(pairs) == 3:
            break
    if len(pairs) < 3 or len(finite) == k:
        return DynMap.from_cycle(d, cycle)
    from .dynamics import moebius_from_triple

    m = moebius_from_triple([p for p, _ in pairs], [q for _, q in pairs])
    return DynMap(d, m, list(cycle))


def h_system() -> list:
    """Cleared h1 = s2 - (s2(s3-1)/(s3(s2-1)))^2 and h2 = s3 - (s2/(s2-1))^2."""
    s2, s3 = MPoly.gens(["s2", "s3"])
    h1 = s2 * s3 ** 2 * (s2 - 1) ** 2 - s2 ** 2 * (s3 - 1) ** 2
    h2 = s3 * (s2 - 1) ** 2 - s2 ** 2
    return [strip_monomial(h1), strip_monomial(h2)]


def h_values(s2: complex, s3: complex) -> tuple:
    h1 = s2 - (s2 * (s3 - 1) / (s3 * (s2 - 1))) ** 2
    h2 = s3 - (s2 / (s2 - 1)) ** 2
    return h1, h2


def h_solutions() -> list:
    """Solutions of the closed-form system away from s2 in {0, 1} and s3 = 0."""
    out = []
    for s2, s3 in solve_numeric(h_system()):
        if abs(s2) < 1e-8 or abs(s2 - 1) < 1e-8 or abs(s3) < 1e-8:
            continue
        out.append((s2, s3))
    return out


def pcf_solve(name: str, d: int = 2, n: int = 5) -> list:
    """The reduced points of the curve's closure on a PCF stratum."""
    g = pcf_type(name, d, n)
    sol = solve_stratum(g, name, exact=False)
    want = expected_pcf_count(d, n)
    if len(sol.punctures) != want or sol.nonreduced:
        raise PcfCountError(
            f"{name}: {len(sol.punctures)} reduced and {len(sol.nonreduced)} nonreduced points, expected {want}"
        )
    out = []
    for p in sol.punctures:
        pt = tuple(complex(v) for v in p.unknowns.values())
        ls = p.system
        res = residual([strip_monomial(e) for e in ls.equations], pt)
        cyc = limit_cycle(ls, pt)
        f = _fit_map(d, cyc)
        j = next(i for i, c in enumerate(cyc) if is_inf(c))
        q = PcfPoint(
            stratum=name, coords=dict(p.unknowns), residual=res, jacobian=p.jacobian, cycle=cyc,
            dynmap=f, cycle_residual=f.cycle_residual(),
            free_orbit_gap=chordal(f(INF), cyc[(j + 1) % n]),
        )
        if n == 5 and name == "gammaI":
            pos = specialized_config(ls, pt, exact=False)
            q.h_coords = {k: complex(limit_cross_ratio(pos, t)) for k, t in H_COORDS.items()}
            q.h_residuals = tuple(abs(h) for h in h_values(q.h_coords["s2"], q.h_coords["s3"]))
        out.append(q)
    _check_distinct(out)
    return out


def _check_distinct(points: list) -> None:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            a = list(points[i].coords.values())
            b = list(points[j].coords.values())
            if max(abs(complex(x) - complex(y)) for x, y in zip(a, b)) <= DISTINCT_TOL:
                raise PcfCountError(f"{points[i].stratum}: solutions {i} and {j} coincide")


def all_pcf_points(d: int = 2, n: int = 5) -> dict:
    return {name: pcf_solve(name, d, n) for name in PCF_NAMES[n]}


def matches_h_system(points: list, tol: float = 1e-7) -> bool:
    """The h-coordinates of the points coincide, as a set, with the solutions of h1 = h2 = 0."""
    sols = h_solutions()
    mine = [(q.h_coords["s2"], q.h_coords["s3"]) for q in points]
    if len(sols) != len(mine):
        return False
    used = set()
    for a in mine:
        k = next((i for i, b in enumerate(sols) if i not in used
                  and max(abs(a[0] - b[0]), abs(a[1] - b[1])) < tol), None)
        if k is None:
            return False
        used.add(k)
    return True


__all__ = [
    "PcfPoint", "PcfCountError", "pcf_solve", "all_pcf_points", "h_system", "h_values", "h_solutions",
    "matches_h_system", "limit_cycle", "PCF_NAMES", "H_COORDS", "is_zero",
]
