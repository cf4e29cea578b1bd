"""Finite automata for algebraic power series over finite fields.

The pipeline: a plane curve f(x, T) over F_q and a branch y of f at x = 0
give the orbit of y under the decimation operators (the q-kernel), a
linear q-representation, and from those the minimal reverse- and
forward-reading automata generating the coefficients of y.
"""

from .algebra import FieldCtx, RatFunc, fq_ctx_new, fq_pth_root, primitive_polynomial, ratfunc_canon
from .algebra.linalg import nullspace, solve_linear
from .automaton import (Dfao, build_forward_dfao, build_reverse_dfao, check_leading_zero_invariance,
                        dfao_eval, isomorphic, minimize, parse_json, serialize)
from .complexity import algebraize, base_compare, bounds_report, landau
from .errors import (ChristolError, ComputationRefused, InvariantBreach, UserInputError)
from .expr import parse_curve_expr
from .function_field import FFElem, PlaneCurve, curve_new, ff_arith, kp_decompose, lambda_p, lambda_q
from .kernel import (Kernel, Representation, enumerate_kernel, extract_representation,
                     kernel_truncated)
from .rational_sweep import RationalSeriesQ, classify_bounded, prime_sweep
from .series import TruncSeries, ff_to_series, hensel_expand, trunc_lambda

__all__ = [
    "FieldCtx", "RatFunc", "fq_ctx_new", "fq_pth_root", "primitive_polynomial", "ratfunc_canon",
    "nullspace", "solve_linear",
    "Dfao", "build_forward_dfao", "build_reverse_dfao", "check_leading_zero_invariance",
    "dfao_eval", "isomorphic", "minimize", "parse_json", "serialize",
    "algebraize", "base_compare", "bounds_report", "landau",
    "ChristolError", "ComputationRefused", "InvariantBreach", "UserInputError",
    "parse_curve_expr",
    "FFElem", "PlaneCurve", "curve_new", "ff_arith", "kp_decompose", "lambda_p", "lambda_q",
    "Kernel", "Representation", "enumerate_kernel", "extract_representation", "kernel_truncated",
    "RationalSeriesQ", "classify_bounded", "prime_sweep",
    "TruncSeries", "ff_to_series", "hensel_expand", "trunc_lambda",
]
