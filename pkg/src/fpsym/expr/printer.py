import sympy as sp
from sympy.printing.precedence import PRECEDENCE
from sympy.printing.str import StrPrinter

from .core import canonicalize, formal_parts, is_formal


class ExpressionPrinter(StrPrinter):
    """Prints expressions in the toolkit grammar (``^`` powers, ``alpha_x(x, t)`` derivatives)."""

    def _print_Pow(self, expr, rational=False):
        base, exponent = expr.as_base_exp()
        if exponent.is_Integer and exponent < 0:
            positive = sp.Pow(base, -exponent)
            return "1/" + self.parenthesize(positive, PRECEDENCE["Mul"], strict=True)
        if exponent.is_Integer:
            return f"{self.parenthesize(base, PRECEDENCE['Pow'], strict=True)}^{exponent}"
        return (
            f"{self.parenthesize(base, PRECEDENCE['Pow'], strict=True)}"
            f"^({self._print(exponent)})"
        )

    def _print_Derivative(self, expr):
        if not is_formal(expr):
            return super()._print_Derivative(expr)
        function, arguments, index = formal_parts(expr)
        args = ", ".join(self._print(a) for a in arguments)
        return f"{function.__name__}_{index.suffix}({args})"

    def _print_Exp1(self, expr):
        return "exp(1)"


_printer = ExpressionPrinter()


def to_text(e: sp.Expr) -> str:
    """Canonical text form; ``parse(to_text(e))`` reproduces ``canonicalize(e)``."""
    return _printer.doprint(canonicalize(e))
