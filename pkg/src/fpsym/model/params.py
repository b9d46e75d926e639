from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Union

import sympy as sp

from ..errors import ConfigError
from ..expr.const import A1, A2
from ..expr.core import Expr, substitute

ParameterValue = Union[int, str, Fraction, Expr]


def as_parameter(value: ParameterValue, symbol: sp.Symbol) -> Expr:
    """Exact value for a parameter: rationals stay rationals, ``"symbolic"`` keeps the symbol."""
    if isinstance(value, str):
        text = value.strip()
        if text.lower() == "symbolic":
            return symbol
        try:
            return sp.Rational(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"Invalid value for {symbol}: {value!r}") from exc
    if isinstance(value, float):
        return sp.nsimplify(value, rational=True)
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.sympify(value)


@dataclass(frozen=True)
class FpeParams:
    """Drift parameters of u_t = -a2 u - (a2 x + a1) u_x + u_xx / 2."""

    a1: Expr = A1
    a2: Expr = A2

    def __post_init__(self) -> None:
        a1 = as_parameter(self.a1, A1)
        a2 = as_parameter(self.a2, A2)
        if a2 == 0:
            raise ConfigError("a2 must be nonzero")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    @property
    def is_numeric(self) -> bool:
        return bool(self.a1.is_number and self.a2.is_number)

    def substitutions(self) -> Dict[sp.Symbol, Expr]:
        """Bindings for the parameters that are not left symbolic."""
        return {s: v for s, v in ((A1, self.a1), (A2, self.a2)) if v != s}

    def bind(self, e: Any) -> Expr:
        return substitute(sp.sympify(e), self.substitutions())

    def describe(self) -> Dict[str, str]:
        return {"a1": str(self.a1), "a2": str(self.a2)}


SYMBOLIC = FpeParams()
