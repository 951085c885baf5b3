"""Hilbert geometry over ordered valued fields.

Exact pseudo-distances on polytope interiors, quotient metric spaces,
the flag-complex model of a polytope glued from Weyl chambers, and the
finite-scale convergence of rescaled real Hilbert geometries.
"""

from .fields import (
    LogAbs,
    PuiseuxField,
    RationalField,
    RationalFunctionField,
    get_field,
    parse_element,
)

__all__ = [
    "LogAbs",
    "PuiseuxField",
    "RationalField",
    "RationalFunctionField",
    "get_field",
    "parse_element",
]

__version__ = "0.1.0"
