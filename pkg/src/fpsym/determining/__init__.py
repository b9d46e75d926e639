"""
Determining equations: derivation, normalization, generator verification and span comparison.
"""
from .ansatz import INFINITESIMAL_NAMES, Ansatz, point_ansatz, potential_ansatz
from .derive import CollectedTerm, DeterminingSystem, derive_determining, differential_closure, normalize
from .membership import MembershipReport, check_membership
from .verify import VerificationReport, criterion_residuals, substitute_field, verify_generator

__all__ = [
    "Ansatz",
    "CollectedTerm",
    "DeterminingSystem",
    "INFINITESIMAL_NAMES",
    "MembershipReport",
    "VerificationReport",
    "check_membership",
    "criterion_residuals",
    "derive_determining",
    "differential_closure",
    "normalize",
    "point_ansatz",
    "potential_ansatz",
    "substitute_field",
    "verify_generator",
]
