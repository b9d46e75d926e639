"""
Reduction of the second potential symmetry through z = (a2 x + a1) e^{a2 t}.

Solutions invariant under it are written with two functions f(z) and g(z); the FPE
then becomes a set of linear ODE conditions on f and g.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import sympy as sp

from ..claims import get_claim
from ..determining.linear import span_contains
from ..errors import NonIntegerExponentError
from ..expr.const import T, X, Z
from ..expr.core import Expr, canonicalize, collect_coefficients, substitute
from ..model.fpe import drift
from ..model.params import SYMBOLIC, FpeParams
from .records import Provenance, SolutionRecord

logger = logging.getLogger(__name__)

F = sp.Function("f")
G = sp.Function("g")
BRANCH_NAMES = ("f", "g")
BRANCH_CLAIM = "Y2-branch-conditions"


def invariant_form(p: FpeParams = SYMBOLIC, f: Optional[Expr] = None, g: Optional[Expr] = None) -> Expr:
    """
    u = (4 a2 x f + g) / c^2 * exp(c^2 / a2) with c = a2 x + a1.

    ``f`` and ``g`` are expressions in z (defaults: the formal f(z), g(z)); the result
    is written in x and z.
    """
    c = drift(p)
    f = F(Z) if f is None else f
    g = G(Z) if g is None else g
    return (4 * p.a2 * X * f + g) / c**2 * sp.exp(c**2 / p.a2)


def _dx(e: Expr, p: FpeParams) -> Expr:
    # z depends on x through c: dz/dx = a2 z / c.
    return sp.diff(e, X) + p.a2 * Z / drift(p) * sp.diff(e, Z)


def _dt(e: Expr, p: FpeParams) -> Expr:
    return p.a2 * Z * sp.diff(e, Z)


@dataclass(frozen=True)
class ConditionCheck:
    index: int
    condition: Expr
    residual: Expr

    @property
    def holds(self) -> bool:
        return self.residual == 0


@dataclass(frozen=True)
class BranchReport:
    checks: Tuple[ConditionCheck, ...]

    @property
    def satisfied(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def violated(self) -> List[int]:
        return [c.index for c in self.checks if not c.holds]


def _check_exponents(e: Expr) -> None:
    for power in sp.sympify(e).atoms(sp.Pow):
        if power.base.has(Z) and not power.exp.is_Integer:
            raise NonIntegerExponentError(f"Power {power} of z has a non-integer exponent")


def check_conditions(conditions: List[Expr], fz: Expr, gz: Expr, p: FpeParams) -> BranchReport:
    _check_exponents(fz)
    _check_exponents(gz)
    bindings = {F: fz, G: gz}
    checks = []
    for k, condition in enumerate(conditions, start=1):
        condition = p.bind(condition)
        residual = substitute(condition, {fn: v for fn, v in bindings.items() if condition.has(fn)})
        checks.append(ConditionCheck(k, condition, canonicalize(sp.cancel(residual))))
    return BranchReport(tuple(checks))


def branch_conditions_check(fz: Expr, gz: Expr, p: FpeParams = SYMBOLIC) -> BranchReport:
    """
    Substitute f(z) = fz and g(z) = gz into the printed conditions.

    Raises:
        NonIntegerExponentError: If fz or gz raises z to a non-integer power.
    """
    report = check_conditions(get_claim(BRANCH_CLAIM).parsed(), fz, gz, p)
    logger.info(f"Printed branch conditions violated: {report.violated or 'none'}")
    return report


def derive_branch_conditions(p: FpeParams = SYMBOLIC) -> List[Expr]:
    """
    Conditions on f and g recomputed from the invariant form: Delta in (x, z)
    coordinates, exponential factor removed, numerator collected in powers of x.
    """
    u = invariant_form(p)
    c = drift(p)
    delta = _dt(u, p) + p.a2 * u + c * _dx(u, p) - _dx(_dx(u, p), p) / 2
    stripped = canonicalize(delta * sp.exp(-(c**2) / p.a2))
    numerator, _ = sp.fraction(sp.together(stripped))
    collected = collect_coefficients(numerator, [X])
    conditions = []
    for monomial in sorted(collected, key=lambda m: sp.degree(m, X)):
        condition = collected[monomial]
        if condition not in conditions:
            conditions.append(condition)
    logger.info(f"Derived {len(conditions)} branch conditions")
    return conditions


@dataclass(frozen=True)
class SpanComparison:
    """Which printed conditions follow from the derived ones, and conversely."""

    printed_in_derived: Tuple[Optional[bool], ...]
    derived_in_printed: Tuple[Optional[bool], ...]

    @property
    def equivalent(self) -> bool:
        return all(v is True for v in self.printed_in_derived + self.derived_in_printed)


def compare_branch_conditions(p: FpeParams = SYMBOLIC, seed: int = 0) -> SpanComparison:
    derived = derive_branch_conditions(p)
    printed = [p.bind(c) for c in get_claim(BRANCH_CLAIM).parsed()]
    return SpanComparison(
        tuple(span_contains(derived, c, BRANCH_NAMES, seed=seed) for c in printed),
        tuple(span_contains(printed, c, BRANCH_NAMES, seed=seed) for c in derived),
    )


def branch_solution(fz: Expr, gz: Expr, p: FpeParams = SYMBOLIC, id: str = "Y2-branch") -> SolutionRecord:
    """Closed form u(x, t) from a branch pair, as an unchecked record."""
    _check_exponents(fz)
    _check_exponents(gz)
    u = invariant_form(p, fz, gz).subs(Z, drift(p) * sp.exp(p.a2 * T))
    expression = canonicalize(sp.cancel(canonicalize(u)))
    return SolutionRecord(
        id=id,
        expression=expression,
        provenance=Provenance(seed=id, source="derived", anchor=get_claim(BRANCH_CLAIM).anchor),
    )


def power_branch(p: FpeParams, c: Expr = sp.Symbol("c")) -> Expr:
    """
    f(z) = c z^(a2 / (a2 - 1)), the solution of the first condition.

    Raises:
        NonIntegerExponentError: If a2 is symbolic or the exponent is not an integer.
        ValueError: If a2 = 1, where the first condition only allows f = 0.
    """
    if not p.a2.is_number:
        raise NonIntegerExponentError("The power branch needs a numeric a2")
    if p.a2 == 1:
        raise ValueError("a2 = 1 forces f = 0")
    exponent = sp.nsimplify(p.a2 / (p.a2 - 1))
    if not exponent.is_Integer:
        raise NonIntegerExponentError(f"Exponent a2/(a2 - 1) = {exponent} is not an integer")
    return c * Z**exponent
