"""Configurations on P^1 and on nodal trees: cross-ratios, plumbing, Hurwitz coordinates."""

from .hurwitz import HPoint, InvalidHPoint, PiImages, pi_maps, power_relation_gap
from .plumbing import (
    NodeAtInfinity,
    PlumbingFamily,
    default_charts,
    plumb,
    separating_edges,
    series_cr,
    series_cr_limit,
    series_cr_order,
    uniform_series_family,
)
from .points import (
    INF,
    CoincidentPoints,
    Configuration,
    InteriorSymbol,
    NodeParamChoice,
    apply_moebius,
    boundary_cross_ratio,
    check_node_param,
    check_rewrite,
    cr_pair,
    cr_rewrite,
    cross_ratio,
    cross_ratio_values,
    is_inf,
    local_coordinate_tuples,
    node_param_choice,
    node_param_tuple,
    vertex_coordinate_tuples,
    vertex_flags,
)

__all__ = [
    "INF", "is_inf", "CoincidentPoints", "Configuration", "cross_ratio", "cross_ratio_values",
    "cr_pair", "cr_rewrite", "check_rewrite", "apply_moebius", "InteriorSymbol",
    "boundary_cross_ratio", "NodeParamChoice", "node_param_tuple", "node_param_choice",
    "check_node_param", "vertex_flags", "vertex_coordinate_tuples", "local_coordinate_tuples",
    "PlumbingFamily", "plumb", "NodeAtInfinity", "series_cr", "series_cr_limit",
    "series_cr_order", "separating_edges", "uniform_series_family", "default_charts",
    "HPoint", "InvalidHPoint", "PiImages", "pi_maps", "power_relation_gap",
]
