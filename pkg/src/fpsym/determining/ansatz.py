from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy.core.function import UndefinedFunction

from ..expr.declarations import Declarations
from ..jet.context import JetContext
from ..jet.fields import VectorField
from ..model.fpe import AUXILIARY_CONTEXT, FPE_CONTEXT

# Conventional names of the infinitesimals per base coordinate.
INFINITESIMAL_NAMES = {"x": "xi", "t": "tau", "u": "eta", "v": "phi"}

ComponentSpec = Union[sp.Expr, int, Sequence[str]]


@dataclass(frozen=True)
class Ansatz:
    """Components of a generic vector field: unknown functions of base coordinates or explicit expressions."""

    context: JetContext
    components: Tuple[Tuple[str, sp.Expr], ...]
    unknowns: Tuple[Tuple[str, Tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        base = set(self.context.independent + self.context.dependent)
        for name, arguments in self.unknowns:
            if not set(arguments) <= base:
                raise ValueError(f"Arguments of {name} must be base coordinates, got {arguments}")

    @classmethod
    def build(cls, context: JetContext, specs: Mapping[str, ComponentSpec]) -> "Ansatz":
        """
        Each coordinate maps to an argument list (unknown function) or an expression.
        Coordinates left out get the full base as arguments.
        """
        base = context.independent + context.dependent
        components = []
        unknowns = []
        for coordinate in base:
            spec = specs.get(coordinate, base)
            if isinstance(spec, (tuple, list)):
                name = INFINITESIMAL_NAMES.get(coordinate, f"{coordinate}_inf")
                arguments = tuple(spec)
                function = sp.Function(name)
                components.append((coordinate, function(*(sp.Symbol(a) for a in arguments))))
                unknowns.append((name, arguments))
            else:
                components.append((coordinate, sp.sympify(spec)))
        return cls(context, tuple(components), tuple(unknowns))

    @property
    def functions(self) -> Tuple[UndefinedFunction, ...]:
        return tuple(sp.Function(name) for name, _ in self.unknowns)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.unknowns)

    @property
    def arguments(self) -> Tuple[sp.Symbol, ...]:
        """Base coordinates the unknowns depend on, in base order."""
        used = {a for _, arguments in self.unknowns for a in arguments}
        return tuple(sp.Symbol(name) for name in self.context.independent + self.context.dependent if name in used)

    def field(self) -> VectorField:
        return VectorField.from_components(self.context, dict(self.components))

    def declarations(self, max_order: int = 4) -> Declarations:
        """Symbol declarations for reading constraints written in these unknowns."""
        return Declarations(
            independent=self.context.independent,
            dependent=self.context.dependent,
            functions=self.unknowns,
            max_order=max_order,
        )


def point_ansatz(context: Optional[JetContext] = None) -> Ansatz:
    return Ansatz.build(context or FPE_CONTEXT, {})


def potential_ansatz(context: Optional[JetContext] = None) -> Ansatz:
    return Ansatz.build(context or AUXILIARY_CONTEXT, {})
