"""
The Fokker-Planck model: parameters, PDE systems, on-shell reduction and formal solutions.
"""
from .formal import ALPHA, BETA, FormalRule, alpha_rule, beta_rule, reduce_modulo
from .fpe import (
    AUXILIARY_CONTEXT,
    FPE_CONTEXT,
    auxiliary_system,
    conserved_audit,
    conserved_form,
    drift,
    fpe_delta,
    system_by_name,
)
from .params import SYMBOLIC, FpeParams, as_parameter
from .system import (
    Equation,
    PDESystem,
    RankCheck,
    evaluate_on,
    is_invertible_constant,
    jacobian_rank_check,
    on_shell_reduce,
    residuals,
)

__all__ = [
    "ALPHA",
    "AUXILIARY_CONTEXT",
    "BETA",
    "Equation",
    "FPE_CONTEXT",
    "FormalRule",
    "FpeParams",
    "PDESystem",
    "RankCheck",
    "SYMBOLIC",
    "alpha_rule",
    "as_parameter",
    "auxiliary_system",
    "beta_rule",
    "conserved_audit",
    "conserved_form",
    "drift",
    "evaluate_on",
    "fpe_delta",
    "is_invertible_constant",
    "jacobian_rank_check",
    "on_shell_reduce",
    "reduce_modulo",
    "residuals",
    "system_by_name",
]
