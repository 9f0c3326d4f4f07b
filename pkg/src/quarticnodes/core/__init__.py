"""Exact scalars, projective points, homogeneous forms and linear algebra."""

from .fields import GF, QQ, FieldMismatchError, Fp, PrimeField, RationalField, field_of, is_prime, scalar_str
from .forms import (
    P4_VARIABLES,
    Form,
    evaluate_form,
    format_form,
    linear_form,
    monomial_basis,
    monomial_count,
    partial_derivative,
    product,
    reduce_mod,
    vanishes_at,
    variable_names,
)
from .linalg import left_nullspace, matrix_rank, nullspace, rref
from .points import LinearSubspace, ProjectivePoint, projection_matrix, span, span_dimension

__all__ = [
    "GF",
    "QQ",
    "FieldMismatchError",
    "Fp",
    "PrimeField",
    "RationalField",
    "field_of",
    "is_prime",
    "scalar_str",
    "P4_VARIABLES",
    "Form",
    "evaluate_form",
    "format_form",
    "linear_form",
    "monomial_basis",
    "monomial_count",
    "partial_derivative",
    "product",
    "reduce_mod",
    "vanishes_at",
    "variable_names",
    "left_nullspace",
    "matrix_rank",
    "nullspace",
    "rref",
    "LinearSubspace",
    "ProjectivePoint",
    "projection_matrix",
    "span",
    "span_dimension",
]
