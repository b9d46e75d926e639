"""
Symbol declarations used when reading expression text.
"""
import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Mapping, Tuple

import sympy as sp

from ..errors import ExpressionError
from .const import MAX_JET_ORDER, RESERVED_PARAMETERS
from .core import DerivIndex


def jet_name(dependent: str, index: DerivIndex) -> str:
    if index.order == 0:
        return dependent
    return f"{dependent}_{index.suffix}"


def _suffixes(letters: Tuple[str, ...], max_order: int):
    for order in range(1, max_order + 1):
        for combination in itertools.product(letters, repeat=order):
            yield "".join(combination)


def _derivative_builder(function: sp.Function, letters: str) -> Callable[..., sp.Expr]:
    variables = [sp.Symbol(letter) for letter in letters]

    def build(*args):
        return sp.diff(function(*args), *variables)

    return build


@dataclass(frozen=True)
class Declarations:
    """
    Names an expression may use.

    Independent and dependent variables are single letters so that jet
    coordinates and formal derivatives can be spelled with a suffix, as in
    ``u_xt`` or ``alpha_xx(x,t)``.
    """

    independent: Tuple[str, ...] = ("x", "t")
    dependent: Tuple[str, ...] = ()
    parameters: Tuple[str, ...] = ()
    functions: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    max_order: int = MAX_JET_ORDER
    _namespace: Dict[str, object] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        for name in self.independent + self.dependent:
            if len(name) != 1 or not name.isalpha():
                raise ExpressionError(f"Variable names must be single letters, got '{name}'")
        names = (
            list(self.independent)
            + list(self.dependent)
            + list(self.all_parameters)
            + [name for name, _ in self.functions]
        )
        duplicates = {n for n in names if names.count(n) > 1}
        if duplicates:
            raise ExpressionError(f"Names declared more than once: {sorted(duplicates)}")
        if self.max_order < 0:
            raise ExpressionError("max_order must be non-negative")

    @property
    def all_parameters(self) -> Tuple[str, ...]:
        extra = tuple(p for p in self.parameters if p not in RESERVED_PARAMETERS)
        return RESERVED_PARAMETERS + extra

    def with_parameters(self, *names: str) -> "Declarations":
        return replace(self, parameters=self.parameters + tuple(names))

    def with_functions(self, **signatures: Tuple[str, ...]) -> "Declarations":
        return replace(self, functions=self.functions + tuple(signatures.items()))

    def with_dependent(self, *names: str) -> "Declarations":
        return replace(self, dependent=self.dependent + tuple(names))

    def function(self, name: str) -> sp.Function:
        return sp.Function(name)

    def namespace(self) -> Mapping[str, object]:
        """Name -> sympy object (or constructor) for every spelling this context accepts."""
        if self._namespace:
            return self._namespace
        namespace: Dict[str, object] = {"exp": sp.exp}
        for name in self.independent + self.all_parameters:
            namespace[name] = sp.Symbol(name)
        for dependent in self.dependent:
            namespace[dependent] = sp.Symbol(dependent)
            for suffix in _suffixes(self.independent, self.max_order):
                namespace[f"{dependent}_{suffix}"] = sp.Symbol(
                    jet_name(dependent, DerivIndex.from_suffix(suffix))
                )
        for name, arguments in self.functions:
            function = sp.Function(name)
            namespace[name] = function
            letters = tuple(a for a in arguments if len(a) == 1)
            for suffix in _suffixes(letters, self.max_order):
                namespace[f"{name}_{suffix}"] = _derivative_builder(function, suffix)
        self._namespace.update(namespace)
        return self._namespace


CLOSED_FORM = Declarations()
FPE_JET = Declarations(dependent=("u",))
AUXILIARY_JET = Declarations(dependent=("u", "v"))
FORMAL = Declarations(dependent=("u",), functions=(("alpha", ("x", "t")), ("beta", ("x", "t"))))
