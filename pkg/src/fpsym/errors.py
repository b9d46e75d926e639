"""
Custom exception types for the fpsym toolkit.
"""
from typing import Any, Optional, Sequence


class FpsymError(Exception):
    """Base exception for all fpsym errors."""
    pass


class ExpressionError(FpsymError):
    """Base exception for expression construction and manipulation."""
    pass


class ExpressionSyntaxError(ExpressionError):
    """Raised when expression text does not conform to the grammar."""

    def __init__(self, message: str, text: str, position: Optional[int] = None):
        self.text = text
        self.position = position
        where = f" at column {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}")


class UndeclaredSymbolError(ExpressionError):
    """Raised when expression text uses a name missing from its declarations."""

    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        self.position = position
        where = f" at column {position}" if position is not None else ""
        super().__init__(f"Undeclared symbol '{name}'{where}")


class NonIntegerExponentError(ExpressionError):
    """Raised when a power has an exponent that is not an integer."""
    pass


class CyclicSubstitutionError(ExpressionError):
    """Raised when substitution bindings refer to each other in a cycle."""
    pass


class EvaluationError(ExpressionError):
    """Raised when an expression cannot be evaluated to a finite number."""
    pass


class CollectionError(ExpressionError):
    """Raised when an expression is not polynomial in the requested keys."""
    pass


class JetOrderError(FpsymError):
    """Raised when a jet computation exceeds the order its context allows."""
    pass


class SystemDefinitionError(FpsymError):
    """Raised when a PDE system is malformed (leading coordinate not solvable)."""
    pass


class OnShellReductionError(FpsymError):
    """Raised when on-shell elimination does not terminate within its bound."""
    pass


class FormalRuleError(FpsymError):
    """Raised when a formal symbol's defining rule cannot be solved or applied."""
    pass


class CatalogVerificationError(FpsymError):
    """Raised when a catalog generator fails verification at load time."""

    def __init__(self, generator_id: str, residuals: Sequence[Any]):
        self.generator_id = generator_id
        self.residuals = tuple(residuals)
        super().__init__(
            f"Generator {generator_id} failed verification; residuals: "
            + ", ".join(str(r) for r in self.residuals)
        )


class TableViolationError(FpsymError):
    """Raised when a bracket cannot be expressed in the generator basis."""
    pass


class ChainError(FpsymError):
    """Raised when a solution chain reaches a refuted link."""

    def __init__(self, message: str, records: Sequence[Any] = ()):
        self.records = tuple(records)
        super().__init__(message)


class GridError(FpsymError):
    """Raised for invalid finite-difference grids or unusable grid evaluations."""
    pass


class ConfigError(FpsymError):
    """Raised when run configuration is invalid."""
    pass
