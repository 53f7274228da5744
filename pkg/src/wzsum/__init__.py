"""Weighted zero-sum sequences over Z_n: decision engine, constants, extremal sets, theorem checks."""

from .constants import (
    BudgetExceeded,
    ConstantResult,
    Kind,
    Method,
    check_all_length_k,
    compute_constant,
    constant_lower_bound_check,
)
from .engine import (
    ANY,
    CONSECUTIVE,
    Sequence,
    SubsequenceConstraint,
    Witness,
    concat,
    exact_length,
    find_wzs_subsequence,
    has_wzs_subsequence,
    is_a_wzs,
    is_pair_wzs,
    remove,
    translate,
    verify_witness,
)
from .extremal import ExtremalClass, SymmetryRelation, are_related, canonicalize, enumerate_extremal
from .residues import Preset, Residue, ResidueKind, WeightSet, classify, resolve_weight_set, units, zero_divisors

__version__ = "0.1.0"

__all__ = [
    "ANY", "CONSECUTIVE", "BudgetExceeded", "ConstantResult", "ExtremalClass", "Kind", "Method", "Preset",
    "Residue", "ResidueKind", "Sequence", "SubsequenceConstraint", "SymmetryRelation", "WeightSet", "Witness",
    "are_related", "canonicalize", "check_all_length_k", "classify", "compute_constant", "concat",
    "constant_lower_bound_check", "enumerate_extremal", "exact_length", "find_wzs_subsequence",
    "has_wzs_subsequence", "is_a_wzs", "is_pair_wzs", "remove", "resolve_weight_set", "translate", "units",
    "verify_witness", "zero_divisors",
]
