"""
PDE systems with solvable leading derivatives, and evaluation on their solution variety.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp

from ..errors import OnShellReductionError, SystemDefinitionError
from ..expr.const import REDUCTION_ORDER_LIMIT, RESERVED_PARAMETERS
from ..expr.core import DerivIndex, Expr, canonicalize
from ..jet.context import JetContext, total_derivatives

logger = logging.getLogger(__name__)


def is_invertible_constant(c: Expr) -> bool:
    """Nonzero rational times a monomial in a2 (a2 is never zero)."""
    c = sp.sympify(c)
    if c == 0:
        return False
    allowed = {sp.Symbol(RESERVED_PARAMETERS[1])}
    if not c.free_symbols <= allowed:
        return False
    (a2,) = allowed
    coefficient, rest = c.as_coeff_Mul()
    if not coefficient.is_Rational:
        return False
    return rest == 1 or rest == a2 or (rest.is_Pow and rest.base == a2 and rest.exp.is_Integer)


@dataclass(frozen=True)
class Equation:
    """Delta = 0 together with the jet coordinate it is solved for."""

    expr: Expr
    leading: sp.Symbol

    def __post_init__(self) -> None:
        object.__setattr__(self, "expr", canonicalize(self.expr))

    @property
    def leading_coefficient(self) -> Expr:
        return canonicalize(sp.diff(self.expr, self.leading))

    def solved(self) -> Expr:
        c = self.leading_coefficient
        rest = canonicalize(self.expr - c * self.leading)
        return canonicalize(-rest / c)


@dataclass(frozen=True)
class PDESystem:
    equations: Tuple[Equation, ...]
    context: JetContext
    name: str = ""

    def __post_init__(self) -> None:
        leading = [eq.leading for eq in self.equations]
        if len(set(leading)) != len(leading):
            raise SystemDefinitionError(f"Leading coordinates must be distinct: {leading}")
        for eq in self.equations:
            parts = self.context.split(eq.leading)
            if parts is None or parts[1].order == 0:
                raise SystemDefinitionError(f"{eq.leading} is not a derivative coordinate of {self.context}")
            c = eq.leading_coefficient
            if self.context.jet_symbols(c) or not is_invertible_constant(c):
                raise SystemDefinitionError(
                    f"{eq.leading} must occur linearly with an invertible coefficient in {eq.expr}, got {c}"
                )

    @property
    def expressions(self) -> List[Expr]:
        return [eq.expr for eq in self.equations]

    @property
    def order(self) -> int:
        return max(self.context.jet_order(e) for e in self.expressions)

    def solved(self) -> Dict[sp.Symbol, Expr]:
        return {eq.leading: eq.solved() for eq in self.equations}


@dataclass(frozen=True)
class RankCheck:
    coordinates: Tuple[sp.Symbol, ...]
    rows: Tuple[Tuple[Expr, ...], ...]
    full_rank: bool

    @property
    def gradient(self) -> Tuple[Expr, ...]:
        return self.rows[0]


def jacobian_rank_check(
    system: Union[PDESystem, Sequence[Expr]], context: Optional[JetContext] = None
) -> RankCheck:
    """
    Jacobian with respect to (x, t, u, u_x, u_t, u_xx, u_xt, u_tt, ...).

    Maximal rank holds everywhere when some square block of the Jacobian has a
    determinant that is an invertible constant. Bare expressions are accepted so
    that degenerate equations, which cannot form a ``PDESystem``, can be checked.
    """
    if isinstance(system, PDESystem):
        expressions, ctx = system.expressions, system.context
    else:
        if context is None:
            raise ValueError("A jet context is required for bare expressions")
        expressions, ctx = [canonicalize(e) for e in system], context
    order = max((ctx.jet_order(e) for e in expressions), default=0)
    coordinates = tuple(ctx.independent_symbols) + tuple(ctx.coordinates(max_order=order))
    rows = tuple(tuple(canonicalize(sp.diff(e, s)) for s in coordinates) for e in expressions)
    parameters = {sp.Symbol(p) for p in RESERVED_PARAMETERS}
    constant_columns = [
        j for j in range(len(coordinates)) if all(row[j].free_symbols <= parameters for row in rows)
    ]
    full_rank = False
    for columns in itertools.combinations(constant_columns, len(rows)):
        block = sp.Matrix([[row[j] for j in columns] for row in rows])
        if is_invertible_constant(sp.factor(block.det())):
            full_rank = True
            break
    logger.debug(f"Rank check over {len(coordinates)} coordinates: {full_rank}")
    return RankCheck(coordinates, rows, full_rank)


def _reducer(
    symbol: sp.Symbol, system: PDESystem, ctx: JetContext
) -> Optional[Tuple[sp.Symbol, DerivIndex]]:
    parts = ctx.split(symbol)
    if parts is None:
        return None
    dependent, index = parts
    best = None
    for eq in system.equations:
        lead_dependent, lead_index = ctx.split(eq.leading)
        if lead_dependent != dependent or not index.contains(lead_index):
            continue
        key = (lead_index.count("t"), lead_index.order)
        if best is None or key > best[0]:
            best = (key, eq.leading, lead_index)
    if best is None:
        return None
    return best[1], index.minus(best[2])


def on_shell_reduce(e: Expr, system: PDESystem) -> Expr:
    """
    Replace every leading coordinate and its differential consequences by the solved forms.

    Raises:
        OnShellReductionError: If elimination does not terminate within the order bound.
    """
    ctx = system.context.with_max_order(REDUCTION_ORDER_LIMIT + 1)
    solved = system.solved()
    cache: Dict[sp.Symbol, Expr] = {}
    e = canonicalize(e)
    for _ in range(4 * REDUCTION_ORDER_LIMIT):
        replacements = {}
        for symbol in ctx.jet_symbols(e, min_order=1):
            if symbol in cache:
                replacements[symbol] = cache[symbol]
                continue
            target = _reducer(symbol, system, ctx)
            if target is None:
                continue
            if ctx.split(symbol)[1].order > REDUCTION_ORDER_LIMIT:
                raise OnShellReductionError(f"{symbol} exceeds the reduction order limit {REDUCTION_ORDER_LIMIT}")
            leading, remainder = target
            cache[symbol] = total_derivatives(solved[leading], remainder.variables, ctx)
            replacements[symbol] = cache[symbol]
        if not replacements:
            return e
        e = canonicalize(e.xreplace(replacements))
    logger.error(f"On-shell reduction did not terminate for system {system.name or '<anonymous>'}")
    raise OnShellReductionError(f"On-shell reduction did not terminate after {4 * REDUCTION_ORDER_LIMIT} passes")


def evaluate_on(e: Expr, bindings: Mapping[str, Expr], ctx: JetContext) -> Expr:
    """Substitute closed forms for dependent variables, u_J -> d_J u."""
    replacements = {}
    for symbol in ctx.jet_symbols(e):
        dependent, index = ctx.split(symbol)
        if dependent not in bindings:
            continue
        value = sp.sympify(bindings[dependent])
        for name in index.variables:
            value = sp.diff(value, sp.Symbol(name))
        replacements[symbol] = value
    return canonicalize(sp.sympify(e).xreplace(replacements))


def residuals(system: PDESystem, bindings: Mapping[str, Expr]) -> List[Expr]:
    return [evaluate_on(e, bindings, system.context) for e in system.expressions]

