"""Exact and numerical tools for Weyl-invariant E8 Jacobi forms."""

from .exact_poly import Poly, Rational, parse_poly

__all__ = ["Poly", "Rational", "parse_poly"]
__version__ = "0.1.0"
