"""Plane-curve fitting, Weierstrass curves, the group law and period lattices."""

from .curves import (
    CHART_X,
    CHART_Y,
    FitError,
    PlaneCurve,
    chart_point,
    fit_per25_cubic,
    fit_plane_curve,
    invert3,
    monomials,
)
from .periods import AGMError, Lattice, agm, period_convention, periods, short_g
from .report import (
    MINIMAL_AINVS,
    MINIMAL_CHANGE,
    PER25_CUBIC,
    REFERENCE_PERIODS,
    fit_report,
    labelled_punctures,
    puncture_points,
    verify_invariants,
)
from .weierstrass import (
    QUADRATIC_TORSION_BOUND,
    ECPoint,
    ExceedsBound,
    Invariants,
    NotWeierstrass,
    OffCurve,
    Order,
    SingularCurve,
    WeierstrassCurve,
    ec_add,
    ec_mul,
    ec_neg,
    group_table,
    invariants,
    is_cyclic_group,
    plane_to_point,
    point_order,
    quotient_relation,
    rational_multiple,
    weierstrass_from_plane,
)

__all__ = [
    "CHART_X", "CHART_Y", "FitError", "PlaneCurve", "chart_point", "fit_per25_cubic", "fit_plane_curve",
    "invert3", "monomials", "AGMError", "Lattice", "agm", "period_convention", "periods", "short_g",
    "MINIMAL_AINVS", "MINIMAL_CHANGE", "PER25_CUBIC", "REFERENCE_PERIODS", "fit_report", "labelled_punctures",
    "puncture_points", "verify_invariants", "QUADRATIC_TORSION_BOUND", "ECPoint", "ExceedsBound",
    "Invariants", "NotWeierstrass", "OffCurve", "Order", "SingularCurve", "WeierstrassCurve", "ec_add",
    "ec_mul", "ec_neg", "group_table", "invariants", "is_cyclic_group", "plane_to_point", "point_order",
    "quotient_relation", "rational_multiple", "weierstrass_from_plane",
]
