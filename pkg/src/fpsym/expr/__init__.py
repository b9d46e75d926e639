"""
Exact expressions: canonical form, differentiation, substitution, evaluation and text I/O.
"""
from .core import (
    DerivIndex,
    Expr,
    canonicalize,
    collect_coefficients,
    diff,
    evaluate,
    formal_atoms,
    formal_parts,
    in_canonical_class,
    is_formal,
    substitute,
)
from .declarations import AUXILIARY_JET, CLOSED_FORM, FORMAL, FPE_JET, Declarations, jet_name
from .equality import EqualityResult, equal
from .parser import parse
from .printer import to_text

__all__ = [
    "AUXILIARY_JET",
    "CLOSED_FORM",
    "DerivIndex",
    "Declarations",
    "EqualityResult",
    "Expr",
    "FORMAL",
    "FPE_JET",
    "canonicalize",
    "collect_coefficients",
    "diff",
    "equal",
    "evaluate",
    "formal_atoms",
    "formal_parts",
    "in_canonical_class",
    "is_formal",
    "jet_name",
    "parse",
    "substitute",
    "to_text",
]
