"""
Solution-generating operators, chains, potential-symmetry solutions and exact residual checks.
"""
from ..model.formal import ALPHA, FormalRule, alpha_rule, reduce_modulo
from .branch import (
    BranchReport,
    branch_conditions_check,
    branch_solution,
    compare_branch_conditions,
    derive_branch_conditions,
    invariant_form,
    power_branch,
)
from .chain import chain, check_exact, exact_residual, identify_operator
from .operators import OPERATORS, SolutionOperator, get_operator, transform
from .potential import (
    Y1,
    Y2,
    compare_surface_conditions,
    compare_y1_constraints,
    potential_candidates,
    rederive_y2,
    solve_y1,
    surface_conditions,
    y1_ansatz,
    y1_constraints,
)
from .records import Provenance, SolutionRecord, Status

__all__ = [
    "ALPHA",
    "BranchReport",
    "FormalRule",
    "OPERATORS",
    "Provenance",
    "SolutionOperator",
    "SolutionRecord",
    "Status",
    "Y1",
    "Y2",
    "alpha_rule",
    "branch_conditions_check",
    "branch_solution",
    "chain",
    "check_exact",
    "compare_branch_conditions",
    "compare_surface_conditions",
    "compare_y1_constraints",
    "derive_branch_conditions",
    "exact_residual",
    "get_operator",
    "identify_operator",
    "invariant_form",
    "potential_candidates",
    "power_branch",
    "reduce_modulo",
    "rederive_y2",
    "solve_y1",
    "surface_conditions",
    "transform",
    "y1_ansatz",
    "y1_constraints",
]
