"""The dynamical curve: equations, sampling, boundary points, PCF points and the n = 4 analysis."""

from .dynamics import (
    CoincidentInputs,
    DiagonalSystem,
    DynMap,
    FiberCount,
    UnstableFiber,
    chordal,
    cr_fiber,
    cross_ratio_form_gap,
    diagonal_system,
    exact_period,
    moebius_from_triple,
    rho_degree,
    sample_curve,
)
from .family import LeadingSystem, components, leading_system, type_blocks, weight_vectors
from .pcf import (
    H_COORDS,
    PCF_NAMES,
    PcfCountError,
    PcfPoint,
    all_pcf_points,
    h_solutions,
    h_system,
    h_values,
    limit_cycle,
    matches_h_system,
    pcf_solve,
    pcf_type,
)
from .perd4 import (
    StratumAnalysis,
    disc_formula_corrected,
    disc_formula_literal,
    g_from_solver,
    g_poly,
    genus_table,
    perd4_report,
)
from .punctures import (
    CERTIFICATES,
    NAMED_COORDS,
    FilterRejected,
    Puncture,
    StratumSolution,
    limit_cross_ratio,
    named_type,
    numeric_residual,
    per25_punctures,
    plane_image,
    puncture_solve,
    solve_stratum,
    specialized_config,
)
from .solve import PositiveDimensional, solve_exact, solve_numeric

__all__ = [
    "CoincidentInputs", "DiagonalSystem", "DynMap", "FiberCount", "UnstableFiber", "chordal", "cr_fiber",
    "cross_ratio_form_gap", "diagonal_system", "exact_period", "moebius_from_triple", "rho_degree",
    "sample_curve", "LeadingSystem", "components", "leading_system", "type_blocks", "weight_vectors",
    "H_COORDS", "PCF_NAMES", "PcfCountError", "PcfPoint", "all_pcf_points", "h_solutions", "h_system",
    "h_values", "limit_cycle", "matches_h_system", "pcf_solve", "pcf_type", "StratumAnalysis",
    "disc_formula_corrected", "disc_formula_literal", "g_from_solver", "g_poly", "genus_table",
    "perd4_report", "CERTIFICATES", "NAMED_COORDS", "FilterRejected", "Puncture", "StratumSolution",
    "limit_cross_ratio", "named_type", "numeric_residual", "per25_punctures", "plane_image",
    "puncture_solve", "solve_stratum", "specialized_config", "PositiveDimensional", "solve_exact",
    "solve_numeric",
]
