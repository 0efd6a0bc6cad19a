"""Cryptographic Boolean functions formed through cognate ensembles.

The pipeline: property analysis, cognate ensembles around a nominal
function, constrained search, substitution tables, and AHP election.
"""
__version__ = "0.1.0"

from .ahp import ComparisonMatrix, DecisionProblem, priority_vector, score_measured, synthesize
from .boolean import TruthTable, format_truth_table, inner_product_bent, parse_truth_table
from .cognate import cognate_proximity, filter_ensemble, initial_ensemble
from .constraints import ConstraintSystem, evaluate_constraints
from .properties import (
    PropertyReport,
    algebraic_immunity,
    classify,
    correlation_immunity_order,
    indicators,
    linear_structures,
    nonlinearity,
)
from .sbox import SubstitutionTable, build_sbox, is_bijective, sbox_nonlinearity, sbox_report
from .search import (
    SearchConfig,
    check_component_constraints,
    gradient_descent_search,
    incremental_walsh_update,
)
from .spectra import autocorrelation, moebius_transform, walsh_spectrum

__all__ = [
    "ComparisonMatrix", "DecisionProblem", "priority_vector", "score_measured", "synthesize",
    "TruthTable", "format_truth_table", "inner_product_bent", "parse_truth_table",
    "cognate_proximity", "filter_ensemble", "initial_ensemble",
    "ConstraintSystem", "evaluate_constraints",
    "PropertyReport", "algebraic_immunity", "classify", "correlation_immunity_order",
    "indicators", "linear_structures", "nonlinearity",
    "SubstitutionTable", "build_sbox", "is_bijective", "sbox_nonlinearity", "sbox_report",
    "SearchConfig", "check_component_constraints", "gradient_descent_search",
    "incremental_walsh_update",
    "autocorrelation", "moebius_transform", "walsh_spectrum",
]
