"""Exact octonion arithmetic and generalized Cauchy-Riemann systems."""
from .algebra import (
    AlgebraError,
    AlgebraSpec,
    Element,
    conjugate,
    figure_rule_table,
    inner,
    multiply,
    structure_tensor,
    trace,
    verify_algebra_identities,
)
from .cayley_dickson import SignedPermutation, double, find_isomorphism
from .expr import ComponentPolynomial, ParseError, evaluate, load_function, lower, parse

__version__ = "0.1.0"
