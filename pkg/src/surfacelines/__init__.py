"""surfacelines: exact computation of straight lines on rational parametric surfaces."""

__version__ = "0.1.0"

from .mpoly import (
    MPoly,
    content_primitive,
    factor_over_q,
    poly_gcd,
    resultant_wrt,
    squarefree_part,
)
from .ratfunc import RatFunc, substitute_rational
from .parsing import parse_poly, poly_to_text
