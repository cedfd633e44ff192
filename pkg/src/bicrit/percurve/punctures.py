"""Points where the closure of the dynamical curve meets a boundary stratum.

For every component of the stratum (a placement of leg blocks on branch
copies) and every primitive weight vector, the leading diagonal equations
are solved; solutions that keep all chart points apart, all lambdas and
leading denominators nonzero are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..exactnum import TruncSeries, field_of, is_zero, scalar_json, to_complex
from ..moduli import INF, cr_pair, is_inf, series_cr_limit
from ..treecover import (
    TABLE_DIAGONAL_ONLY25,
    TABLE_PER25,
    TABLE_PERD4,
    CombinatorialType,
    diagonal_filter,
    reference_type,
)
from .family import LeadingSystem, components, leading_system, type_blocks, weight_vectors
from .solve import (
    DISTINCT_TOL,
    PositiveDimensional,
    complex_poly,
    jacobian_det,
    residual,
    solve_exact,
    solve_numeric,
    strip_monomial,
)

# Named stratum coordinates and certificates, as source cross-ratio tuples.
# Label "i.k" is the hidden mark a_{i,k}.
NAMED_COORDS = {
    "gamma4": {"CR": ("1", "2", "3", "4")},
    "gamma5": {"s2": ("1", "*", "3", "4"), "s3": ("*", "4", "5.1", "2")},
    "gamma6": {"s2": ("1", "*", "4", "3"), "s3": ("*", "2", "3.1", "5")},
    "gamma7": {"s2": ("1", "2", "3", "4"), "s3": ("1", "2", "3", "5")},
}
CERTIFICATES = {
    "gamma6": {"CR(1,3,4,5)": ("1", "3", "4", "5")},
}
# Plane chart of the curve: X = CR(3,4,5,1), Y = CR(5,2,3,4).
PLANE_X = ("3", "4", "5", "1")
PLANE_Y = ("5", "2", "3", "4")


@dataclass
class Puncture:
    """One point of the curve's closure on a boundary stratum."""

    stratum: str
    offsets: list
    weights: tuple
    unknowns: dict  # unknown name -> value (exact or complex)
    exact: bool
    field: object = None  # NumberField or None for Q
    stratum_coords: dict = dc_field(default_factory=dict)
    certificates: dict = dc_field(default_factory=dict)
    plane_image: tuple | None = None
    jacobian: complex = 0j
    system: LeadingSystem | None = None

    def to_json(self) -> dict:
        def enc(x):
            if is_inf(x):
                return "inf"
            if self.exact:
                return scalar_json(x)
            z = complex(x)
            return [z.real, z.imag]

        return {
            "stratum": self.stratum,
            "field": self.field.minpoly_string() if self.field is not None else "Q",
            "offsets": [list(o) for o in self.offsets],
            "weights": list(self.weights),
            "unknowns": {k: enc(v) for k, v in self.unknowns.items()},
            "coords": {k: enc(v) for k, v in self.stratum_coords.items()},
            "certificates": {k: enc(v) for k, v in self.certificates.items()},
            "plane_image": [enc(v) for v in self.plane_image] if self.plane_image else None,
        }


@dataclass
class StratumSolution:
    """Outcome of solving one stratum."""

    name: str
    punctures: list
    unresolved: list  # (offsets, weights, polynomial) left over by the exact layer
    nonreduced: list  # solutions with a singular Jacobian
    positive_dimensional: list  # (offsets, weights) whose leading system has a curve of solutions

    @property
    def meets_curve(self) -> bool:
        return bool(self.punctures)


# -- degeneracy checks ------------------------------------------------------------


def _eval_exact(p, pt):
    return p.eval(pt)


def _eval_numeric(p, pt):
    return complex_poly(p)(pt)


def is_nondegenerate(ls: LeadingSystem, pt, exact: bool) -> bool:
    """Lambdas, chart separations and leading denominators do not vanish at pt."""
    d = ls.gamma.d
    if exact:
        ev = _eval_exact

        def zero(x):
            return is_zero(x)
    else:
        ev = _eval_numeric
        scale = max(1.0, max(abs(v) for v in pt))

        def zero(x):
            return abs(x) < 1e-8 * scale ** 4

    for lam in ls.lambdas:
        if zero(ev(lam, pt)):
            return False
    for kind, group in ls.chart_groups:
        vals = [ev(x, pt) for x in group]
        if kind == "power":
            vals = [v ** d for v in vals]
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if zero(vals[i] - vals[j]):
                    return False
    for den in ls.denominators:
        if zero(ev(den, pt)):
            return False
    return True


def exact_jacobian(ls: LeadingSystem, pt):
    eqs = [strip_monomial(e) for e in ls.equations]
    nv = len(pt)
    rows = [[e.diff(j).eval(pt) for j in range(nv)] for e in eqs]
    if nv == 1:
        return rows[0][0]
    return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]


# -- named quantities ---------------------------------------------------------------


def _specialize(s, pt, exact: bool):
    if is_inf(s):
        return s
    if exact:
        return s.map_coeffs(lambda m: m.eval(pt))
    return s.map_coeffs(lambda m: _chop(complex_poly(m)(pt)))


def _chop(z: complex, tol: float = 1e-9):
    return 0j if abs(z) < tol else z


def specialized_config(ls: LeadingSystem, pt, exact: bool = True) -> dict:
    """Source positions with the unknowns replaced by the values pt."""
    return {k: _specialize(v, pt, exact) for k, v in ls.config.positions.items()}


def limit_cross_ratio(pos: dict, tup):
    num, den = cr_pair(*(pos[x] for x in tup))
    return series_cr_limit(num, den)


def plane_image(pos: dict):
    """Limit of [X : Y : 1] with X = CR(3,4,5,1), Y = CR(5,2,3,4), as a normalized triple."""
    nx, dx = cr_pair(*(pos[x] for x in PLANE_X))
    ny, dy = cr_pair(*(pos[x] for x in PLANE_Y))
    comps = [nx * dy, ny * dx, dx * dy]
    vals = [c.val if c.coeffs else None for c in comps]
    low = min(v for v in vals if v is not None)
    lead = [c.coeffs[0] if (c.coeffs and c.val == low) else Fraction(0) for c in comps]
    for k in (2, 1, 0):
        if not is_zero(lead[k]):
            return tuple(x / lead[k] for x in lead)
    raise ArithmeticError("plane image vanishes")


# -- solving a stratum ------------------------------------------------------------


def solve_stratum(g: CombinatorialType, name: str = "", exact: bool = True, max_weight: int = 3,
                  blocks=None) -> StratumSolution:
    """All points of the curve's closure on the stratum of g."""
    if blocks is None:
        blocks = type_blocks(g)
    punct, unresolved, nonred, posdim = [], [], [], []
    for offs in components(g, blocks):
        for w in weight_vectors(len(g.tau.edges), max_weight):
            ls = leading_system(g, offs, w, blocks)
            try:
                if exact:
                    res = solve_exact(ls.equations)
                    sols = res.solutions
                    unresolved.extend((offs, w, p) for p in res.unresolved)
                else:
                    sols = solve_numeric(ls.equations)
            except PositiveDimensional:
                posdim.append((offs, w))
                continue
            for pt in sols:
                if not is_nondegenerate(ls, pt, exact):
                    continue
                if exact:
                    jac = exact_jacobian(ls, pt)
                    singular = is_zero(jac)
                    jac = to_complex(jac)
                else:
                    jac = jacobian_det([strip_monomial(e) for e in ls.equations], pt)
                    singular = abs(jac) < 1e-9
                p = _make_puncture(ls, name, pt, exact, jac)
                (nonred if singular else punct).append(p)
    return StratumSolution(name, punct, unresolved, nonred, posdim)


def _make_puncture(ls: LeadingSystem, name: str, pt, exact: bool, jac) -> Puncture:
    fld = field_of(*pt) if exact else None
    p = Puncture(
        stratum=name, offsets=ls.offsets, weights=ls.weights,
        unknowns=dict(zip(ls.names, pt)), exact=exact, field=fld, jacobian=jac, system=ls,
    )
    if ls.gamma.n == 5:
        pos = specialized_config(ls, pt, exact)
        for key, tup in NAMED_COORDS.get(name, {}).items():
            p.stratum_coords[key] = limit_cross_ratio(pos, tup)
        for key, tup in CERTIFICATES.get(name, {}).items():
            p.certificates[key] = limit_cross_ratio(pos, tup)
        p.plane_image = plane_image(pos)
    return p


def named_type(name: str, d: int, n: int) -> CombinatorialType:
    """The tabulated stratum called name, for the given (d, n)."""
    tables = (TABLE_PER25, TABLE_DIAGONAL_ONLY25) if n == 5 else (TABLE_PERD4,)
    for table in tables:
        if name in table:
            return reference_type(table[name], d, n)
    raise KeyError(f"no tabulated stratum {name!r} for n = {n}")


class FilterRejected(ValueError):
    """The stratum does not meet the diagonal, so it cannot meet the curve."""


def puncture_solve(gamma, d: int = 2, n: int = 5, exact: bool = True) -> StratumSolution:
    """Points of the curve's closure on one stratum, given by table name or as a type.

    An empty ``punctures`` list means the stratum does not meet the curve.
    """
    if isinstance(gamma, str):
        name, g = gamma, named_type(gamma, d, n)
    else:
        name, g = "", gamma
    if not diagonal_filter(g):
        raise FilterRejected(f"stratum {name or g.key()} fails the diagonal filter")
    return solve_stratum(g, name, exact=exact)


def per25_punctures(exact: bool = True) -> dict:
    """Punctures of Per_{2,5} on the seven tabulated boundary strata."""
    return {f"gamma{k}": puncture_solve(f"gamma{k}", 2, 5, exact) for k in range(1, 8)}


def count_numeric(g: CombinatorialType, max_weight: int = 3) -> int:
    """Number of nondegenerate reduced solutions, found numerically."""
    return len(solve_stratum(g, exact=False, max_weight=max_weight).punctures)


def numeric_residual(p: Puncture) -> float:
    pt = tuple(to_complex(v) for v in p.unknowns.values())
    return residual([strip_monomial(e) for e in p.system.equations], pt)


__all__ = [
    "Puncture", "StratumSolution", "solve_stratum", "puncture_solve", "per25_punctures", "named_type",
    "FilterRejected", "count_numeric", "NAMED_COORDS",
    "CERTIFICATES", "plane_image", "limit_cross_ratio", "is_nondegenerate", "numeric_residual",
    "INF", "DISTINCT_TOL", "TruncSeries",
]
