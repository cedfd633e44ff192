"""Stable marked trees and combinatorial types of admissible covers."""

from .covers import (
    CombinatorialType,
    StratumRecord,
    are_isomorphic_types,
    build_type,
    component_count_bruteforce,
    component_count_formula,
    diagonal_filter,
    enumerate_types,
    leg_image,
    leg_preimage,
    records_to_csv,
    source_bar,
    stratum_dimension,
    target_bar,
    tau_branches,
    to_dot,
    validate_type,
)
from .tables import (
    FIG_NEGATIVE,
    PERD4_COMPONENTS,
    TABLE_DIAGONAL_ONLY25,
    TABLE_PER25,
    TABLE_PERD4,
    infer_cover,
    name_records,
    reference_tables,
    reference_type,
)
from .trees import (
    Flag,
    MarkedTree,
    are_isomorphic,
    canonical_form,
    contract_edge,
    enumerate_stable_trees,
    is_stable,
    leg_key,
    stabilize,
)

__all__ = [
    "MarkedTree", "Flag", "is_stable", "stabilize", "contract_edge", "are_isomorphic",
    "canonical_form", "enumerate_stable_trees", "leg_key",
    "CombinatorialType", "StratumRecord", "validate_type", "diagonal_filter", "enumerate_types",
    "build_type", "tau_branches", "leg_image", "leg_preimage", "source_bar", "target_bar",
    "stratum_dimension", "component_count_formula", "component_count_bruteforce",
    "are_isomorphic_types", "to_dot", "records_to_csv",
    "TABLE_PER25", "TABLE_DIAGONAL_ONLY25", "TABLE_PERD4", "PERD4_COMPONENTS", "FIG_NEGATIVE",
    "infer_cover", "reference_type", "reference_tables", "name_records",
]
