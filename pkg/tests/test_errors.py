import pytest
import sympy as sp

from fpsym.errors import (
    CatalogVerificationError,
    ChainError,
    ConfigError,
    ExpressionError,
    ExpressionSyntaxError,
    FpsymError,
    GridError,
    NonIntegerExponentError,
    UndeclaredSymbolError,
)
from fpsym.expr.parser import parse
from fpsym.solutions import SolutionRecord, chain


@pytest.mark.parametrize(
    "error",
    [
        ExpressionSyntaxError("Unexpected end of input", "x +", 3),
        UndeclaredSymbolError("y"),
        NonIntegerExponentError("x^(1/2)"),
        CatalogVerificationError("V1", []),
        ChainError("halted"),
        GridError("h must be positive"),
        ConfigError("bad a2"),
    ],
)
def test_hierarchy(error):
    """Every toolkit error can be caught as FpsymError."""
    assert isinstance(error, FpsymError)


def test_syntax_error_position():
    error = ExpressionSyntaxError("Unexpected token", "x ** 2", 2)
    assert error.position == 2
    assert error.text == "x ** 2"
    assert "column 2" in str(error)


def test_undeclared_symbol_from_parser():
    """Only x, t, a1 and a2 may appear in a closed form."""
    with pytest.raises(UndeclaredSymbolError) as exc_info:
        parse("y*exp(-a2*t)")
    assert exc_info.value.name == "y"
    assert isinstance(exc_info.value, ExpressionError)


def test_catalog_verification_error():
    error = CatalogVerificationError("V4", [sp.Symbol("u_x"), 1])
    assert error.generator_id == "V4"
    assert error.residuals == (sp.Symbol("u_x"), 1)
    assert "V4" in str(error)
    assert "u_x" in str(error)


def test_chain_error_keeps_records():
    """A refuted seed halts the chain with the checked seed attached."""
    with pytest.raises(ChainError) as exc_info:
        chain(SolutionRecord.seed("seed", sp.Integer(1)), ["F1"])
    (record,) = exc_info.value.records
    assert record.id == "seed"
    assert record.residual is not None
