"""Exact para-Grassmann algebra for n-fermion coherent states."""

from .algebra import (
    DEGREE_CAP,
    Element,
    Monomial,
    adjoint,
    exp_coeffs,
    exp_nilpotent,
    multiply,
    recip1p,
    rsqrt1p,
    series_apply,
    sqrt1p,
    zeta_matrix_rep,
)
from .berezin import GTable, g_closed, g_recurrence, integrate
from .coherent import (
    NormalizationTable,
    WeightTable,
    left_cs,
    normalization_coeffs,
    overlap_two_generators,
    right_cs,
    solve_weight,
    verify_left_properties,
    verify_resolution,
    verify_right_eigenproperties,
)
from .displacement import displaced_state, displacement_operator, solve_weight_displaced
from .fock import (
    LadderSpec,
    build_annihilator,
    build_creator,
    build_general_ladder,
    build_number_operator,
    diag_relation,
    polynomial_form,
    verify_core_relations,
)
from .kernel import KERNEL_NAME
from .report import Check, IdentityViolation, Report
from .scalars import EXACT, Backend, GaussianRational, float_backend, get_backend

__version__ = "0.1.0"

__all__ = [
    "DEGREE_CAP", "Element", "Monomial", "adjoint", "exp_coeffs", "exp_nilpotent", "multiply",
    "recip1p", "rsqrt1p", "series_apply", "sqrt1p", "zeta_matrix_rep",
    "GTable", "g_closed", "g_recurrence", "integrate",
    "NormalizationTable", "WeightTable", "left_cs", "normalization_coeffs", "overlap_two_generators",
    "right_cs", "solve_weight", "verify_left_properties", "verify_resolution",
    "verify_right_eigenproperties",
    "displaced_state", "displacement_operator", "solve_weight_displaced",
    "LadderSpec", "build_annihilator", "build_creator", "build_general_ladder", "build_number_operator",
    "diag_relation", "polynomial_form", "verify_core_relations",
    "KERNEL_NAME", "Check", "IdentityViolation", "Report",
    "EXACT", "Backend", "GaussianRational", "float_backend", "get_backend",
]
