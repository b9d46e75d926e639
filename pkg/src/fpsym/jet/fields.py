"""
Vector fields on the base space, their prolongations and Lie brackets.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

import sympy as sp

from ..errors import JetOrderError
from ..expr.const import MAX_JET_ORDER
from ..expr.core import DerivIndex, Expr, canonicalize
from ..expr.equality import equal
from .context import JetContext, total_derivative

logger = logging.getLogger(__name__)

JetKey = Tuple[str, DerivIndex]


@dataclass(frozen=True)
class VectorField:
    """xi^i d/dx^i + eta^a d/du^a with coefficients over base coordinates only."""

    context: JetContext
    xi: Tuple[Expr, ...]
    eta: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.xi) != len(self.context.independent):
            raise ValueError("One xi coefficient is needed per independent variable")
        if len(self.eta) != len(self.context.dependent):
            raise ValueError("One eta coefficient is needed per dependent variable")
        xi = tuple(canonicalize(c) for c in self.xi)
        eta = tuple(canonicalize(c) for c in self.eta)
        for coefficient in xi + eta:
            if self.context.jet_symbols(coefficient, min_order=1):
                raise JetOrderError(f"Vector field coefficient {coefficient} uses derivative coordinates")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)

    @classmethod
    def from_components(cls, context: JetContext, components: Mapping[str, Expr]) -> "VectorField":
        unknown = set(components) - set(context.independent + context.dependent)
        if unknown:
            raise ValueError(f"Unknown coordinates {sorted(unknown)} for {context}")
        return cls(
            context,
            tuple(sp.sympify(components.get(name, 0)) for name in context.independent),
            tuple(sp.sympify(components.get(name, 0)) for name in context.dependent),
        )

    def components(self) -> Dict[str, Expr]:
        names = self.context.independent + self.context.dependent
        return dict(zip(names, self.xi + self.eta))

    def component(self, name: str) -> Expr:
        return self.components()[name]

    def map(self, function) -> "VectorField":
        return VectorField(
            self.context,
            tuple(function(c) for c in self.xi),
            tuple(function(c) for c in self.eta),
        )

    def __add__(self, other: "VectorField") -> "VectorField":
        _require_same_space(self, other)
        return VectorField(
            self.context,
            tuple(a + b for a, b in zip(self.xi, other.xi)),
            tuple(a + b for a, b in zip(self.eta, other.eta)),
        )

    def __neg__(self) -> "VectorField":
        return self.scale(-1)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, factor: Expr) -> "VectorField":
        return self.map(lambda c: factor * c)

    def __rmul__(self, factor: Expr) -> "VectorField":
        return self.scale(factor)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.xi + self.eta)

    def as_derivation(self, f: Expr) -> Expr:
        """Action as a derivation on functions of the base coordinates."""
        total = sum(
            (c * sp.diff(f, s) for c, s in zip(self.xi + self.eta, self.context.base_symbols)),
            sp.Integer(0),
        )
        return canonicalize(total)

    __call__ = as_derivation

    def equals(self, other: "VectorField") -> bool:
        _require_same_space(self, other)
        return all(
            equal(a, b).equal for a, b in zip(self.xi + self.eta, other.xi + other.eta)
        )


def _require_same_space(first: VectorField, second: VectorField) -> None:
    if (first.context.independent, first.context.dependent) != (
        second.context.independent,
        second.context.dependent,
    ):
        raise ValueError("Vector fields live on different base spaces")


def characteristic(V: VectorField) -> Dict[str, Expr]:
    """Q^a = eta^a - sum_i xi^i u^a_i."""
    ctx = V.context
    result = {}
    for dependent, eta in zip(ctx.dependent, V.eta):
        q = eta
        for iv, xi in zip(ctx.independent, V.xi):
            q -= xi * ctx.coordinate(dependent, DerivIndex((iv,)))
        result[dependent] = canonicalize(q)
    return result


@dataclass(frozen=True)
class ProlongedField:
    """Prolongation of ``base`` to jet order ``order``."""

    base: VectorField
    order: int
    coefficients: Mapping[JetKey, Expr]

    @property
    def context(self) -> JetContext:
        return self.base.context

    def coefficient(self, dependent: str, index: DerivIndex) -> Expr:
        if index.order > self.order:
            raise JetOrderError(f"No coefficient of order {index.order} in an order-{self.order} prolongation")
        return self.coefficients[(dependent, index)]

    def coefficient_of(self, symbol: sp.Symbol) -> Expr:
        parts = self.context.split(symbol)
        if parts is None:
            raise ValueError(f"{symbol} is not a jet coordinate")
        return self.coefficient(*parts)

    def audit(self) -> List[JetKey]:
        """
        Recompute coefficients with eta_{J,i} = D_i eta_J - sum_k u_{J,k} D_i xi^k.

        Returns:
            Keys whose coefficient disagrees with the characteristic recursion.
        """
        ctx = self.context.with_max_order(self.order + 2)
        mismatches = []
        for dependent, eta in zip(ctx.dependent, self.base.eta):
            if not equal(self.coefficients[(dependent, DerivIndex())], eta):
                mismatches.append((dependent, DerivIndex()))
        for (dependent, index), value in self.coefficients.items():
            if index.order == 0:
                continue
            for iv in set(index.variables):
                parent = index.minus(DerivIndex((iv,)))
                recomputed = total_derivative(self.coefficients[(dependent, parent)], iv, ctx)
                for other, xi in zip(ctx.independent, self.base.xi):
                    recomputed -= ctx.coordinate(dependent, parent.extend(other)) * total_derivative(xi, iv, ctx)
                if not equal(recomputed, value):
                    mismatches.append((dependent, index))
                    break
        return mismatches


def prolong(V: VectorField, n: int) -> ProlongedField:
    """n-th prolongation through eta_J = D_J Q + sum_i xi^i u_{J,i}."""
    if n < 0 or n > MAX_JET_ORDER:
        raise JetOrderError(f"Prolongation order must be between 0 and {MAX_JET_ORDER}, got {n}")
    ctx = V.context.with_max_order(n + 1)
    q = characteristic(V)
    coefficients: Dict[JetKey, Expr] = {}
    for dependent in ctx.dependent:
        derivatives: Dict[DerivIndex, Expr] = {DerivIndex(): q[dependent]}
        for order in range(1, n + 1):
            for index in ctx.indices(order):
                last = index.variables[-1]
                parent = index.minus(DerivIndex((last,)))
                derivatives[index] = total_derivative(derivatives[parent], last, ctx)
        for index, dq in derivatives.items():
            value = dq
            for iv, xi in zip(ctx.independent, V.xi):
                value += xi * ctx.coordinate(dependent, index.extend(iv))
            coefficients[(dependent, index)] = canonicalize(value)
    logger.debug(f"Prolonged field to order {n}: {len(coefficients)} coefficients")
    return ProlongedField(V, n, coefficients)


def apply(P: ProlongedField, e: Expr) -> Expr:
    """Directional derivative of ``e`` along the prolonged field."""
    ctx = P.context
    e = sp.sympify(e)
    if ctx.jet_order(e) > P.order:
        raise JetOrderError(
            f"Expression of jet order {ctx.jet_order(e)} needs a prolongation of at least that order, have {P.order}"
        )
    total = sp.Integer(0)
    for iv, xi in zip(ctx.independent_symbols, P.base.xi):
        total += xi * sp.diff(e, iv)
    for symbol in ctx.jet_symbols(e):
        total += P.coefficient_of(symbol) * sp.diff(e, symbol)
    return canonicalize(total)


def lie_bracket(V: VectorField, W: VectorField) -> VectorField:
    """[V, W] with components V(W^c) - W(V^c)."""
    _require_same_space(V, W)
    return VectorField(
        V.context,
        tuple(V(w) - W(v) for v, w in zip(V.xi, W.xi)),
        tuple(V(w) - W(v) for v, w in zip(V.eta, W.eta)),
    )


def second_order_coefficients(V: VectorField) -> Dict[str, Expr]:
    """
    Classical second-order coefficients for one dependent variable u(x, t):
    eta^x, eta^t, eta^xx, eta^xt, eta^tt written with D_x, D_t acting on xi, tau, eta.
    """
    ctx = V.context.with_max_order(3)
    if ctx.independent != ("x", "t") or len(ctx.dependent) != 1:
        raise ValueError("Second-order formulas are written for u(x, t)")
    (u,) = ctx.dependent
    xi, tau = V.xi
    (eta,) = V.eta

    def c(suffix: str) -> sp.Symbol:
        return ctx.coordinate(u, DerivIndex.from_suffix(suffix))

    def d(e: Expr, iv: str) -> Expr:
        return total_derivative(e, iv, ctx)

    eta_x = d(eta, "x") - c("x") * d(xi, "x") - c("t") * d(tau, "x")
    eta_t = d(eta, "t") - c("x") * d(xi, "t") - c("t") * d(tau, "t")
    eta_xx = d(eta_x, "x") - c("xx") * d(xi, "x") - c("xt") * d(tau, "x")
    eta_xt = d(eta_x, "t") - c("xx") * d(xi, "t") - c("xt") * d(tau, "t")
    eta_tt = d(eta_t, "t") - c("xt") * d(xi, "t") - c("tt") * d(tau, "t")
    return {
        "x": canonicalize(eta_x),
        "t": canonicalize(eta_t),
        "xx": canonicalize(eta_xx),
        "xt": canonicalize(eta_xt),
        "tt": canonicalize(eta_tt),
    }
