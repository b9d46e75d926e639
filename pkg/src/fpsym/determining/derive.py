"""
Determining equations by coefficient collection over the unconstrained jet coordinates.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import sympy as sp

from ..expr.core import Expr, canonicalize, collect_coefficients
from ..jet.fields import apply, prolong
from ..model.system import PDESystem, on_shell_reduce
from .ansatz import Ansatz
from .linear import (
    close_under_derivatives,
    forced_zeros,
    minimal_zeros,
    reduced_rows,
    row_expression,
    unknown_atoms,
)

logger = logging.getLogger(__name__)

# Bound on closure rounds; each round can only add vanishing atoms.
CLOSURE_ROUNDS = 16
# Differentiation depth and round bound of the differential closure.
DIFFERENTIAL_DEPTH = 2
DIFFERENTIAL_ROUNDS = 8


@dataclass(frozen=True)
class CollectedTerm:
    equation: int
    monomial: Expr
    coefficient: Expr


@dataclass(frozen=True)
class DeterminingSystem:
    """Normalized constraints on the infinitesimals, with the raw collection kept for auditing."""

    constraints: Tuple[Expr, ...]
    zeros: Tuple[Expr, ...]
    terms: Tuple[CollectedTerm, ...]
    residuals: Tuple[Expr, ...]
    ansatz: Ansatz

    @property
    def names(self) -> Tuple[str, ...]:
        return self.ansatz.names

    @property
    def monomials(self) -> Tuple[Expr, ...]:
        return tuple(dict.fromkeys(term.monomial for term in self.terms))

    def reconstruct(self, equation: int) -> Expr:
        """Sum of monomial x coefficient for one equation; equals its residual."""
        return canonicalize(
            sum(
                (t.monomial * t.coefficient for t in self.terms if t.equation == equation),
                sp.Integer(0),
            )
        )


def normalize(
    equations: Sequence[Expr], names: Sequence[str]
) -> Tuple[List[Expr], List[Expr]]:
    """
    Row-reduce the constraints, then apply derivative closure until nothing changes.

    Returns:
        (constraints, zeros): the reduced constraints (vanishing atoms first) and
        the minimal set of atoms forced to vanish.
    """
    current = [canonicalize(e) for e in equations]
    current = [e for e in current if e != 0]
    # Constraints free of unknowns cannot be row-reduced; they are kept verbatim.
    inconsistent = [e for e in current if not unknown_atoms([e], names)]
    current = [e for e in current if e not in inconsistent]
    zeros: List[Expr] = []
    rows: List[List[Expr]] = []
    atoms: List[Expr] = []
    for round_number in range(CLOSURE_ROUNDS):
        atoms = unknown_atoms(current, names)
        rows = reduced_rows(current, atoms)
        single = [atoms[next(i for i, c in enumerate(row) if c != 0)] for row in rows if sum(c != 0 for c in row) == 1]
        fresh = [a for a in single if close_under_derivatives(a, zeros) != 0]
        logger.debug(f"Closure round {round_number}: {len(rows)} rows, {len(fresh)} new vanishing atoms")
        if not fresh:
            break
        zeros = minimal_zeros(zeros + fresh)
        current = [close_under_derivatives(e, zeros) for e in current]
        current = [e for e in current if e != 0]
    remaining = []
    for row in rows:
        e = close_under_derivatives(row_expression(row, atoms), zeros)
        if e != 0 and e not in remaining:
            remaining.append(e)
    constraints = list(zeros) + [e for e in remaining if e not in zeros] + list(dict.fromkeys(inconsistent))
    return constraints, zeros


def differential_closure(
    constraints: Sequence[Expr],
    names: Sequence[str],
    arguments: Sequence[sp.Symbol],
    depth: int = DIFFERENTIAL_DEPTH,
    seed: int = 0,
) -> Tuple[List[Expr], List[Expr]]:
    """
    Normalize, then add the unknown derivatives that the differential consequences
    of the constraints force to vanish, round by round until none is new.
    """
    constraints, zeros = normalize(constraints, names)
    if depth <= 0:
        return constraints, zeros
    for round_number in range(DIFFERENTIAL_ROUNDS):
        forced = forced_zeros(constraints, names, arguments, zeros, depth, seed=seed + round_number)
        fresh = [a for a in forced if close_under_derivatives(a, zeros) != 0]
        logger.debug(f"Differential round {round_number}: {len(fresh)} new vanishing atoms")
        if not fresh:
            break
        constraints, zeros = normalize(list(constraints) + fresh, names)
    return constraints, zeros


def derive_determining(
    system: PDESystem,
    ansatz: Ansatz,
    order: Optional[int] = None,
    logger: Optional[logging.Logger] = None,
    depth: int = DIFFERENTIAL_DEPTH,
    seed: int = 0,
) -> DeterminingSystem:
    """
    Apply the prolonged generic field to each equation, reduce on-shell and
    collect coefficients of the remaining derivative monomials. The collected
    constraints are closed under differential consequences up to ``depth``
    (0 keeps the linear normalization only).

    Raises:
        CollectionError: If a residual is not polynomial in the jet coordinates.
    """
    effective_logger = logger or logging.getLogger(__name__)
    order = system.order if order is None else order
    if order < system.order:
        raise ValueError(f"Prolongation order {order} is below the system order {system.order}")
    effective_logger.info(f"Deriving determining equations for {system.name or 'system'} at order {order}")
    prolonged = prolong(ansatz.field(), order)
    terms: List[CollectedTerm] = []
    residuals: List[Expr] = []
    for k, equation in enumerate(system.equations):
        residual = on_shell_reduce(apply(prolonged, equation.expr), system)
        residuals.append(residual)
        keys = sorted(system.context.jet_symbols(residual, min_order=1), key=lambda s: s.name)
        for monomial, coefficient in collect_coefficients(residual, keys).items():
            terms.append(CollectedTerm(k, monomial, coefficient))
    constraints, zeros = differential_closure(
        [t.coefficient for t in terms], ansatz.names, ansatz.arguments, depth, seed
    )
    effective_logger.info(f"Derived {len(constraints)} constraints from {len(terms)} collected coefficients")
    return DeterminingSystem(
        constraints=tuple(constraints),
        zeros=tuple(zeros),
        terms=tuple(terms),
        residuals=tuple(residuals),
        ansatz=ansatz,
    )
