"""Exact composed sums, multiplications and products of polynomials.

Univariate composed operations work over finite fields; the bivariate ones
go through truncated Newton-Puiseux expansions over Q, Q(zeta_N) or F_{p^e}.
"""

from .errors import CompolyError
from .fields import QQ, CyclotomicField, FiniteField, build_extension, parse_field
from .unipoly import UPoly

__version__ = "0.1.0"

__all__ = ["CompolyError", "QQ", "CyclotomicField", "FiniteField", "build_extension", "parse_field", "UPoly"]
