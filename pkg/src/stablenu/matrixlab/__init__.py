"""Exact rational matrices for the pattern classes Q(D) and Q0(D)."""

from .linalg import (
    RationalMatrix,
    left_nullspace,
    nullity,
    rank,
    right_nullspace,
    schur_complement,
    support,
)
from .properties import (
    ASAPResult,
    Entry,
    SPResult,
    SPWitness,
    asap_check,
    in_Q,
    in_Q0,
    in_violation_space,
    pattern,
    sp_check,
    validate_sp_witness,
)
from .reduction import (
    MatrixVerdict,
    ReductionStep,
    check_matrix,
    lift_sp_witness,
    reduce_contract,
    reduce_delete,
    reduce_semicontract,
)
from .search import nu_lower_bound_search, random_q0_matrix, random_q_matrix

__all__ = [
    "ASAPResult", "Entry", "MatrixVerdict", "RationalMatrix", "ReductionStep", "SPResult",
    "SPWitness", "asap_check", "check_matrix", "in_Q", "in_Q0", "in_violation_space",
    "left_nullspace", "lift_sp_witness", "nu_lower_bound_search", "nullity", "pattern",
    "random_q0_matrix", "random_q_matrix", "rank", "reduce_contract", "reduce_delete",
    "reduce_semicontract", "right_nullspace", "schur_complement", "sp_check", "support",
    "validate_sp_witness",
]
