"""Torus parametrization of Per_{2,5}, the attracting-basin renderer and the command line."""

from .cli import build_parser, cli_run, main
from .param import (
    CurveModel,
    Degenerate,
    chart_from_wp,
    chart_of_cycle,
    chart_of_hpoint,
    inverse_chart,
    param_array,
    param_point,
    param_point_resultant,
    per25_model,
    point_from_chart,
    u_of_cycle,
    wp_from_chart,
)
from .render import (
    Attracted,
    ChartWindow,
    Image,
    NotAttracted,
    ParallelogramDomain,
    RenderConfig,
    RenderResult,
    classify,
    classify_array,
    classify_pixel,
    load_config,
    pcf_us,
    pixel_grid,
    pixel_of,
    puncture_us,
    render,
)
from .wp import Pole, elliptic_log, laurent_coeffs, wp, wp_array

__all__ = [
    "build_parser", "cli_run", "main", "CurveModel", "Degenerate", "chart_from_wp", "chart_of_cycle",
    "chart_of_hpoint", "inverse_chart", "param_array", "param_point", "param_point_resultant", "per25_model",
    "point_from_chart", "u_of_cycle", "wp_from_chart", "Attracted", "ChartWindow", "Image", "NotAttracted",
    "ParallelogramDomain", "RenderConfig", "RenderResult", "classify", "classify_array", "classify_pixel",
    "load_config", "pcf_us", "pixel_grid", "pixel_of", "puncture_us", "render", "Pole", "elliptic_log",
    "laurent_coeffs", "wp", "wp_array",
]
