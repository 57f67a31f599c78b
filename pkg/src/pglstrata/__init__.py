"""Numerical types of subspaces of binary forms and rational curves with prescribed restricted tangent bundle."""

from .classify import (
    Decomposition,
    InternalInconsistency,
    NumericalType,
    Pencil,
    RetryBudgetExhausted,
    c_generated_part,
    classify,
    decompose,
    kronecker_left_indices,
    numerical_type,
    pencil_of,
)
from .curves import (
    CohomologyProfile,
    CurveMap,
    SplittingType,
    cohomology_profile,
    construct_with_splitting,
    project_curve,
    splitting_from_cohomology,
    splitting_from_type,
)
from .forms import (
    BinaryForm,
    DualFormSubspace,
    FormSubspace,
    annihilator,
    catalecticant,
    derivation_matrix,
    derivative_system,
    dual_multiply,
    partial,
    partial_inv,
    secant_member,
)
from .linalg import Mat, Subspace, canonicalize, intersect, kernel, preimage, span_sum
from .strata import StratumReport, dim_stratum, dim_VT, enumerate_types, generic_type, monomial_fixture

__version__ = "0.1.0"

__all__ = [
    "annihilator",
    "BinaryForm",
    "c_generated_part",
    "canonicalize",
    "catalecticant",
    "classify",
    "cohomology_profile",
    "CohomologyProfile",
    "construct_with_splitting",
    "CurveMap",
    "decompose",
    "Decomposition",
    "derivation_matrix",
    "derivative_system",
    "dim_stratum",
    "dim_VT",
    "dual_multiply",
    "DualFormSubspace",
    "enumerate_types",
    "FormSubspace",
    "generic_type",
    "InternalInconsistency",
    "intersect",
    "kernel",
    "kronecker_left_indices",
    "Mat",
    "monomial_fixture",
    "numerical_type",
    "NumericalType",
    "partial",
    "partial_inv",
    "Pencil",
    "pencil_of",
    "preimage",
    "project_curve",
    "RetryBudgetExhausted",
    "secant_member",
    "span_sum",
    "splitting_from_cohomology",
    "splitting_from_type",
    "SplittingType",
    "StratumReport",
    "Subspace",
]
