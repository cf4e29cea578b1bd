"""Exact arithmetic: finite fields, polynomials, rational functions, linear solving."""

from .field import FieldCtx, fq_ctx_new, fq_pth_root, primitive_polynomial, smallest_irreducible
from .ratfunc import RatFunc, ratfunc_canon
from .linalg import solve_linear, nullspace, ratmat_inverse, fq_nullspace, fq_rank, FqSpan

__all__ = [
    "FieldCtx", "fq_ctx_new", "fq_pth_root", "primitive_polynomial", "smallest_irreducible",
    "RatFunc", "ratfunc_canon",
    "solve_linear", "nullspace", "ratmat_inverse", "fq_nullspace", "fq_rank", "FqSpan",
]
