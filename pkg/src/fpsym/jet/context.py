import itertools
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Set, Tuple

import sympy as sp

from ..errors import JetOrderError
from ..expr.core import DerivIndex, Expr, canonicalize
from ..expr.declarations import Declarations, jet_name


@dataclass(frozen=True)
class JetContext:
    """Independent and dependent variables of a jet space truncated at ``max_order``."""

    independent: Tuple[str, ...] = ("x", "t")
    dependent: Tuple[str, ...] = ("u",)
    max_order: int = 2

    def __post_init__(self) -> None:
        names = self.independent + self.dependent
        if len(set(names)) != len(names):
            raise ValueError(f"Variable names must be unique: {names}")
        if any(len(name) != 1 for name in names):
            raise ValueError(f"Variable names must be single letters: {names}")
        if self.max_order < 0:
            raise JetOrderError(f"Maximum jet order must be non-negative, got {self.max_order}")

    def with_max_order(self, max_order: int) -> "JetContext":
        return replace(self, max_order=max_order)

    def declarations(self) -> Declarations:
        return Declarations(
            independent=self.independent, dependent=self.dependent, max_order=self.max_order
        )

    @property
    def independent_symbols(self) -> Tuple[sp.Symbol, ...]:
        return tuple(sp.Symbol(name) for name in self.independent)

    @property
    def dependent_symbols(self) -> Tuple[sp.Symbol, ...]:
        return tuple(sp.Symbol(name) for name in self.dependent)

    @property
    def base_symbols(self) -> Tuple[sp.Symbol, ...]:
        return self.independent_symbols + self.dependent_symbols

    def indices(self, order: int) -> List[DerivIndex]:
        return [
            DerivIndex(combination)
            for combination in itertools.combinations_with_replacement(self.independent, order)
        ]

    def coordinate(self, dependent: str, index: DerivIndex) -> sp.Symbol:
        if dependent not in self.dependent:
            raise ValueError(f"Unknown dependent variable '{dependent}'")
        return sp.Symbol(jet_name(dependent, index))

    def coordinates(self, max_order: Optional[int] = None, min_order: int = 0) -> List[sp.Symbol]:
        top = self.max_order if max_order is None else max_order
        return [
            self.coordinate(dependent, index)
            for order in range(min_order, top + 1)
            for dependent in self.dependent
            for index in self.indices(order)
        ]

    def split(self, symbol: sp.Symbol) -> Optional[Tuple[str, DerivIndex]]:
        """(dependent, index) for a jet coordinate symbol, None otherwise."""
        if not isinstance(symbol, sp.Symbol):
            return None
        head, _, suffix = symbol.name.partition("_")
        if head not in self.dependent:
            return None
        if "_" in symbol.name and not suffix:
            return None
        if any(letter not in self.independent for letter in suffix):
            return None
        return head, DerivIndex.from_suffix(suffix)

    def jet_symbols(self, e: Expr, min_order: int = 0) -> Set[sp.Symbol]:
        found = set()
        for symbol in sp.sympify(e).free_symbols:
            parts = self.split(symbol)
            if parts is not None and parts[1].order >= min_order:
                found.add(symbol)
        return found

    def jet_order(self, e: Expr) -> int:
        orders = [self.split(s)[1].order for s in self.jet_symbols(e)]
        return max(orders, default=0)


def total_derivative(e: Expr, iv: str, ctx: JetContext) -> Expr:
    """
    Total derivative D_iv of an expression on the jet space.

    Raises:
        JetOrderError: If differentiating would leave the jet space of ``ctx``.
    """
    if iv not in ctx.independent:
        raise ValueError(f"'{iv}' is not an independent variable of {ctx}")
    e = sp.sympify(e)
    order = ctx.jet_order(e)
    if order >= ctx.max_order:
        raise JetOrderError(
            f"D_{iv} of an order-{order} expression exceeds maximum jet order {ctx.max_order}"
        )
    result = sp.diff(e, sp.Symbol(iv))
    for symbol in ctx.jet_symbols(e):
        dependent, index = ctx.split(symbol)
        result += ctx.coordinate(dependent, index.extend(iv)) * sp.diff(e, symbol)
    return canonicalize(result)


def total_derivatives(e: Expr, variables: Iterable[str], ctx: JetContext) -> Expr:
    for iv in variables:
        e = total_derivative(e, iv, ctx)
    return e
