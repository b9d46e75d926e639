from typing import Any, Dict, Sequence, Tuple

import sympy as sp
import yaml
from click.testing import CliRunner, Result

from fpsym.claims import get_claim
from fpsym.cli.main import main
from fpsym.expr.core import DerivIndex, Expr, canonicalize
from fpsym.jet.context import JetContext

X, T, U = sp.symbols("x t u")
A1, A2 = sp.symbols("a1 a2")


def jet(ctx: JetContext, dependent: str, suffix: str = "") -> sp.Symbol:
    """Jet coordinate such as u_xx for ``ctx``."""
    return ctx.coordinate(dependent, DerivIndex.from_suffix(suffix))


def claim_expression(claim_id: str) -> Expr:
    return get_claim(claim_id).expression


def is_zero(e: Any) -> bool:
    return canonicalize(e) == 0


def same(first: Any, second: Any) -> bool:
    """Canonical equality of two expressions."""
    return is_zero(sp.sympify(first) - sp.sympify(second))


def run_cli(runner: CliRunner, args: Sequence[str]) -> Tuple[Result, Dict[str, Any]]:
    """
    Invoke the CLI with a structured report and return the result together with
    the parsed report (empty when the command failed before reporting).
    """
    result = runner.invoke(main, ["--format", "structured", *args])
    report: Dict[str, Any] = {}
    if result.exit_code in (0, 1, 3) and result.stdout.strip():
        report = yaml.safe_load(result.stdout) or {}
    return result, report


def without_timing(report: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in report.items() if k != "timing"}
