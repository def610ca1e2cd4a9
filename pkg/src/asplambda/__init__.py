"""Typed ASP lambda calculus with inverse lambda algorithms."""

from .inverse import InverseResult, inverse_l, inverse_r, replace
from .reduction import apply, normalize
from .syntax import parse_term, parse_type, print_term, print_type
from .terms import alpha_eq, order
from .typecheck import TypeCheckError, infer, type_of

__all__ = [
    "InverseResult", "TypeCheckError", "alpha_eq", "apply", "infer", "inverse_l",
    "inverse_r", "normalize", "order", "parse_term", "parse_type", "print_term",
    "print_type", "replace", "type_of",
]
