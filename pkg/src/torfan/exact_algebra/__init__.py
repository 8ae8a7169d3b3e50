"""Exact polynomial arithmetic, Gröbner bases, quotient algebras, and
exact/numeric linear algebra."""

from ._kernel import KERNEL
from .poly import Polynomial, Ring, grevlex_key
from .groebner import GroebnerBasis, QuotientAlgebra, groebner_basis, normal_form, quotient_algebra
from .linalg import (
    JordanProfile,
    UNIVARIATE,
    char_min_poly,
    charpoly,
    complex_eigen,
    eval_matrix_poly,
    factor_rational_poly,
    identity,
    inverse,
    jordan_profile,
    localize,
    mat_add,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    mat_vec,
    minpoly,
    nullspace,
    rank,
    rref,
    solve,
    to_numpy,
    trace,
    transpose,
    zero_matrix,
)

__all__ = [
    "KERNEL",
    "Ring",
    "Polynomial",
    "grevlex_key",
    "GroebnerBasis",
    "groebner_basis",
    "normal_form",
    "QuotientAlgebra",
    "quotient_algebra",
    "JordanProfile",
    "UNIVARIATE",
    "char_min_poly",
    "charpoly",
    "minpoly",
    "jordan_profile",
    "factor_rational_poly",
    "eval_matrix_poly",
    "localize",
    "complex_eigen",
    "identity",
    "zero_matrix",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_mul",
    "mat_pow",
    "mat_vec",
    "transpose",
    "trace",
    "rref",
    "rank",
    "solve",
    "nullspace",
    "inverse",
    "to_numpy",
]
