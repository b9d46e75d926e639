"""
Jet-space bookkeeping: total derivatives, vector fields, prolongation and brackets.
"""
from .context import JetContext, total_derivative, total_derivatives
from .fields import (
    ProlongedField,
    VectorField,
    apply,
    characteristic,
    lie_bracket,
    prolong,
    second_order_coefficients,
)

__all__ = [
    "JetContext",
    "ProlongedField",
    "VectorField",
    "apply",
    "characteristic",
    "lie_bracket",
    "prolong",
    "second_order_coefficients",
    "total_derivative",
    "total_derivatives",
]
