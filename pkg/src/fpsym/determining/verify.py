import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import sympy as sp
from sympy.core.function import AppliedUndef

from ..expr.core import Expr, canonicalize, substitute
from ..expr.equality import CANONICAL, INCONCLUSIVE, equal
from ..jet.fields import VectorField, apply, prolong
from ..model.formal import FormalRule, reduce_modulo
from ..model.system import PDESystem, on_shell_reduce
from .ansatz import Ansatz

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerificationReport:
    """Per-equation residuals of the symmetry criterion."""

    residuals: Tuple[Expr, ...]
    passed: Optional[bool]
    method: str = CANONICAL
    confidence: float = 1.0
    label: str = ""

    @property
    def failing(self) -> Tuple[Expr, ...]:
        return tuple(r for r in self.residuals if r != 0)


def criterion_residuals(
    V: VectorField, system: PDESystem, order: Optional[int] = None, rules: Sequence[FormalRule] = ()
) -> Tuple[Expr, ...]:
    order = system.order if order is None else order
    prolonged = prolong(V, order)
    result = []
    for equation in system.equations:
        residual = on_shell_reduce(apply(prolonged, equation.expr), system)
        result.append(reduce_modulo(residual, *rules) if rules else residual)
    return tuple(result)


def verify_generator(
    V: VectorField,
    system: PDESystem,
    order: Optional[int] = None,
    rules: Sequence[FormalRule] = (),
    label: str = "",
) -> VerificationReport:
    """
    Check pr V (Delta) = 0 on the solution variety.

    Formal functions in ``V`` are first reduced modulo their ``rules``. Residuals
    that leave the canonical class are compared to zero numerically.
    """
    residuals = criterion_residuals(V, system, order, rules)
    if all(r == 0 for r in residuals):
        logger.debug(f"Generator {label or V} passes against {system.name}")
        return VerificationReport(residuals, True, CANONICAL, 1.0, label)
    outcomes = [equal(r, sp.Integer(0)) for r in residuals]
    confidence = min(o.confidence for o in outcomes)
    if any(o.equal is False for o in outcomes):
        logger.info(f"Generator {label or V} fails against {system.name}")
        method = next(o.method for o in outcomes if o.equal is False)
        return VerificationReport(residuals, False, method, confidence, label)
    if any(o.equal is None for o in outcomes):
        return VerificationReport(residuals, None, INCONCLUSIVE, confidence, label)
    method = next(o.method for o in outcomes if o.method != CANONICAL)
    return VerificationReport(residuals, True, method, confidence, label)


def substitute_field(
    constraints: Sequence[Expr], ansatz: Ansatz, V: VectorField, rules: Sequence[FormalRule] = ()
) -> Tuple[Expr, ...]:
    """Constraints with the ansatz unknowns replaced by the components of ``V``."""
    components = V.components()
    bindings: Dict[sp.Function, Expr] = {}
    for coordinate, expression in ansatz.components:
        for function in ansatz.functions:
            if isinstance(expression, sp.Expr) and expression.func == function:
                bindings[function] = components[coordinate]
    result = []
    for constraint in constraints:
        present = {f: v for f, v in bindings.items() if any(a.func == f for a in constraint.atoms(AppliedUndef))}
        value = substitute(constraint, present)
        result.append(canonicalize(reduce_modulo(value, *rules)) if rules else value)
    return tuple(result)
