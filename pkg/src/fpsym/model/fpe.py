"""
The Fokker-Planck family, its conserved form and the auxiliary potential system.

All residuals use the orientation Delta = u_t + a2 u + (a2 x + a1) u_x - u_xx / 2.
"""
from typing import Tuple

import sympy as sp

from ..expr.const import X
from ..expr.core import DerivIndex, Expr, canonicalize
from ..jet.context import JetContext, total_derivative
from .params import SYMBOLIC, FpeParams
from .system import Equation, PDESystem

FPE_CONTEXT = JetContext(independent=("x", "t"), dependent=("u",), max_order=2)
AUXILIARY_CONTEXT = JetContext(independent=("x", "t"), dependent=("u", "v"), max_order=2)


def _jet(ctx: JetContext, dependent: str, suffix: str = "") -> sp.Symbol:
    return ctx.coordinate(dependent, DerivIndex.from_suffix(suffix))


def drift(p: FpeParams = SYMBOLIC) -> Expr:
    """a2 x + a1."""
    return canonicalize(p.a2 * X + p.a1)


def fpe_delta(p: FpeParams = SYMBOLIC) -> PDESystem:
    ctx = FPE_CONTEXT
    u, u_x, u_t, u_xx = (_jet(ctx, "u", s) for s in ("", "x", "t", "xx"))
    delta = u_t + p.a2 * u + drift(p) * u_x - sp.Rational(1, 2) * u_xx
    return PDESystem((Equation(delta, u_t),), ctx, name="fpe")


def conserved_audit(T: Expr, X_flux: Expr, p: FpeParams = SYMBOLIC) -> Expr:
    """D_t T + D_x X - Delta, canonical; zero when (T, X) is a conserved form."""
    ctx = FPE_CONTEXT.with_max_order(3)
    (delta,) = fpe_delta(p).expressions
    return canonicalize(total_derivative(T, "t", ctx) + total_derivative(X_flux, "x", ctx) - delta)


def conserved_form(p: FpeParams = SYMBOLIC) -> Tuple[Expr, Expr]:
    """(T, X) with D_t T + D_x X = Delta identically."""
    ctx = FPE_CONTEXT
    u, u_x = _jet(ctx, "u"), _jet(ctx, "u", "x")
    density = u
    flux = canonicalize(drift(p) * u - sp.Rational(1, 2) * u_x)
    assert conserved_audit(density, flux, p) == 0, "conserved form does not reproduce Delta"
    return density, flux


def auxiliary_system(p: FpeParams = SYMBOLIC) -> PDESystem:
    """v_x = T, v_t = -X for the potential v."""
    ctx = AUXILIARY_CONTEXT
    density, flux = conserved_form(p)
    v_t, v_x = _jet(ctx, "v", "t"), _jet(ctx, "v", "x")
    return PDESystem(
        (Equation(v_t + flux, v_t), Equation(v_x - density, v_x)),
        ctx,
        name="auxiliary",
    )


def system_by_name(name: str, p: FpeParams = SYMBOLIC) -> PDESystem:
    systems = {"fpe": fpe_delta, "auxiliary": auxiliary_system}
    if name not in systems:
        raise ValueError(f"Unknown system '{name}', expected one of {sorted(systems)}")
    return systems[name](p)
