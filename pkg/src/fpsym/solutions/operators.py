"""
Operators that map a solution alpha of the FPE to another solution.

Each is the d/du coefficient of [V_j, V_alpha] for one point generator V_j.
"""
from dataclasses import dataclass
from typing import Callable, Dict

import sympy as sp

from ..expr.const import T, X
from ..expr.core import Expr, canonicalize
from ..model.fpe import drift
from ..model.params import SYMBOLIC, FpeParams

Rule = Callable[[Expr, FpeParams], Expr]


def _f1(alpha: Expr, p: FpeParams) -> Expr:
    w = drift(p)
    return sp.exp(-2 * p.a2 * T) * (sp.diff(alpha, T) - w * sp.diff(alpha, X) + 2 * w**2 * alpha)


def _f2(alpha: Expr, p: FpeParams) -> Expr:
    w = drift(p)
    return sp.exp(-p.a2 * T) / p.a2 * (sp.diff(alpha, X) / 2 - w * alpha)


def _f3(alpha: Expr, p: FpeParams) -> Expr:
    w = drift(p)
    return sp.exp(2 * p.a2 * T) * (sp.diff(alpha, T) + w * sp.diff(alpha, X) + p.a2 * alpha)


def _f4(alpha: Expr, p: FpeParams) -> Expr:
    return sp.diff(alpha, X) * sp.exp(p.a2 * T)


def _f5(alpha: Expr, p: FpeParams) -> Expr:
    return sp.diff(alpha, T)


@dataclass(frozen=True)
class SolutionOperator:
    id: str
    generator: str
    rule: Rule

    def __call__(self, alpha: Expr, p: FpeParams = SYMBOLIC) -> Expr:
        return transform(self, alpha, p)


OPERATORS: Dict[str, SolutionOperator] = {
    op.id: op
    for op in (
        SolutionOperator("F1", "V5", _f1),
        SolutionOperator("F2", "V3", _f2),
        SolutionOperator("F3", "V6", _f3),
        SolutionOperator("F4", "V1", _f4),
        SolutionOperator("F5", "V4", _f5),
    )
}


def get_operator(op_id: str) -> SolutionOperator:
    try:
        return OPERATORS[op_id.strip().upper()]
    except KeyError:
        raise KeyError(f"Unknown operator '{op_id}', expected one of {sorted(OPERATORS)}") from None


def transform(op: SolutionOperator, alpha: Expr, p: FpeParams = SYMBOLIC) -> Expr:
    """Canonical image of ``alpha`` (closed form or formal alpha(x, t)) under ``op``."""
    return canonicalize(op.rule(sp.sympify(alpha), p))
