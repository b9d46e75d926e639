"""
Formal solutions: a function symbol such as alpha(x, t) that is only known to
satisfy a PDE solved for its t-derivative.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import sympy as sp
from sympy.core.function import UndefinedFunction

from ..errors import FormalRuleError
from ..expr.const import REDUCTION_ORDER_LIMIT, T, X
from ..expr.core import DerivIndex, Expr, canonicalize, formal_atoms, formal_parts
from .fpe import AUXILIARY_CONTEXT, FPE_CONTEXT, auxiliary_system, fpe_delta
from .params import SYMBOLIC, FpeParams
from .system import evaluate_on, is_invertible_constant

logger = logging.getLogger(__name__)

ALPHA = sp.Function("alpha")
BETA = sp.Function("beta")


@dataclass(frozen=True)
class FormalRule:
    """f_t = solution for a formal function f(x, t); the solution has no t-derivatives of f."""

    function: UndefinedFunction
    solution: Expr
    args: Tuple[sp.Symbol, ...] = (X, T)
    variable: str = "t"

    @property
    def name(self) -> str:
        return self.function.__name__

    @property
    def applied(self) -> Expr:
        return self.function(*self.args)

    @classmethod
    def from_equation(
        cls, function: UndefinedFunction, equation: Expr, args: Tuple[sp.Symbol, ...] = (X, T), variable: str = "t"
    ) -> "FormalRule":
        """
        Solve ``equation = 0`` for the first ``variable`` derivative of ``function``.

        Raises:
            FormalRuleError: If that derivative is absent, nonlinear or has a non-invertible coefficient,
                or if other ``variable`` derivatives of ``function`` remain.
        """
        equation = canonicalize(equation)
        leading = sp.diff(function(*args), sp.Symbol(variable))
        coefficient = canonicalize(sp.diff(equation, leading))
        if coefficient == 0 or not is_invertible_constant(coefficient):
            raise FormalRuleError(
                f"Cannot solve {equation} for {leading}: coefficient {coefficient} is not an invertible constant"
            )
        solution = canonicalize(-(equation - coefficient * leading) / coefficient)
        if _pending(solution, function.__name__, variable):
            raise FormalRuleError(f"Solved form of {leading} still has {variable}-derivatives: {solution}")
        return cls(function=function, solution=solution, args=args, variable=variable)


def _pending(e: Expr, name: str, variable: str):
    return [a for a in formal_atoms(e, [name]) if formal_parts(a)[2].count(variable)]


def reduce_modulo(e: Expr, *rules: FormalRule) -> Expr:
    """
    Eliminate every ``variable`` derivative of each rule's function, mixed ones included.

    The normal form carries only derivatives in the other arguments.
    """
    e = canonicalize(e)
    for _ in range(4 * REDUCTION_ORDER_LIMIT):
        replacements = {}
        for rule in rules:
            for atom in _pending(e, rule.name, rule.variable):
                _, args, index = formal_parts(atom)
                if tuple(args) != tuple(rule.args):
                    raise FormalRuleError(f"{atom} is not applied to {rule.args}")
                remaining = index.minus(DerivIndex((rule.variable,)))
                value = rule.solution
                for name in remaining.variables:
                    value = sp.diff(value, sp.Symbol(name))
                replacements[atom] = value
        if not replacements:
            return e
        e = canonicalize(e.xreplace(replacements))
    logger.error(f"Reduction modulo {[r.name for r in rules]} did not terminate")
    raise FormalRuleError("Reduction modulo formal rules did not terminate")


def alpha_rule(p: FpeParams = SYMBOLIC) -> FormalRule:
    """alpha solves the FPE itself."""
    (delta,) = fpe_delta(p).expressions
    return FormalRule.from_equation(ALPHA, evaluate_on(delta, {"u": ALPHA(X, T)}, FPE_CONTEXT))


def beta_rule(p: FpeParams = SYMBOLIC) -> FormalRule:
    """beta solves the potential equation, obtained with u = beta_x and v = beta."""
    potential = auxiliary_system(p).expressions[0]
    bindings = {"u": sp.diff(BETA(X, T), X), "v": BETA(X, T)}
    return FormalRule.from_equation(BETA, evaluate_on(potential, bindings, AUXILIARY_CONTEXT))
