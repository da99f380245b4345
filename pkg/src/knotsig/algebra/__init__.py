"""Exact arithmetic substrate: matrices, polynomials, intervals, fields."""

from .cyclotomic import CycloElement, CyclotomicField
from .hermitian import Inertia, field_rank, hermitian_inertia
from .interval import (
    Const,
    Cos,
    CycloExpr,
    IntervalReal,
    Sin,
    UndecidedSignError,
    cos_2pi,
    exact_zero,
    refine_sign,
)
from .matrix import (
    DimensionError,
    Matrix,
    bareiss_determinant,
    block_diag,
    cofactor_determinant,
    inverse_rational,
    kron,
    rational_determinant,
    solve_rational,
)
from .poly import (
    LaurentPoly,
    Poly,
    cyclotomic_poly,
    euler_phi,
    poly_gcd,
    resultant,
    squarefree_part,
    trace_polynomial,
)
from .smith import SmithForm, invariant_factors, smith_normal_form
from .sturm import count_roots, isolate_roots, refine_root, sturm_sequence
