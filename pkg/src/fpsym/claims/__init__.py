"""
Registry of published claims (closed-form solutions, printed systems and conditions)
shipped with the toolkit and read from ``claims.yaml``.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Mapping, Optional, Tuple

import sympy as sp
import yaml

from ..determining.ansatz import point_ansatz, potential_ansatz
from ..expr.core import Expr, substitute
from ..expr.declarations import AUXILIARY_JET, CLOSED_FORM, FPE_JET, Declarations
from ..expr.parser import parse

logger = logging.getLogger(__name__)

SOLUTION = "solution"
FLUX = "flux"
DETERMINING = "determining"
CONSTRAINTS = "constraints"
SURFACE = "surface"
GENERATOR = "generator"

BRANCH = Declarations(independent=("z",), functions=(("f", ("z",)), ("g", ("z",))))
ODE = Declarations(functions=(("q1", ("t",)), ("q2", ("t",))))


def declarations_for(name: str) -> Declarations:
    """Symbol declarations a claim's ``context`` key refers to."""
    if name == "point-ansatz":
        return point_ansatz().declarations()
    if name == "potential-ansatz":
        return potential_ansatz().declarations()
    contexts = {
        "closed": CLOSED_FORM,
        "fpe-jet": FPE_JET,
        "auxiliary-jet": AUXILIARY_JET,
        "branch": BRANCH,
        "ode": ODE,
    }
    if name not in contexts:
        raise KeyError(f"Unknown claim context '{name}'")
    return contexts[name]


@dataclass(frozen=True)
class Claim:
    id: str
    kind: str
    anchor: str
    expressions: Tuple[str, ...]
    context: str = "closed"
    parameters: Tuple[str, ...] = ()
    defaults: Mapping[str, str] = field(default_factory=dict)
    fixed: Mapping[str, str] = field(default_factory=dict)
    system: Optional[str] = None
    components: Tuple[str, ...] = ()

    @property
    def declarations(self) -> Declarations:
        return declarations_for(self.context).with_parameters(*self.parameters)

    def parsed(self) -> List[Expr]:
        return [parse(text, self.declarations) for text in self.expressions]

    def fields(self) -> Dict[str, Expr]:
        """Component name to coefficient for a generator claim."""
        if len(self.components) != len(self.expressions):
            raise ValueError(
                f"Claim {self.id} names {len(self.components)} components for {len(self.expressions)} expressions"
            )
        return dict(zip(self.components, self.parsed()))

    @property
    def expression(self) -> Expr:
        """The single expression of a solution or flux claim."""
        if len(self.expressions) != 1:
            raise ValueError(f"Claim {self.id} has {len(self.expressions)} expressions")
        return self.parsed()[0]

    def instantiate(self, **values) -> Expr:
        """The expression with its free parameters bound (defaults unless overridden)."""
        bindings = {**self.defaults, **{k: str(v) for k, v in values.items()}}
        unknown = set(bindings) - set(self.parameters)
        if unknown:
            raise ValueError(f"Claim {self.id} has no parameters {sorted(unknown)}")
        return substitute(
            self.expression, {sp.Symbol(k): sp.Rational(v) for k, v in bindings.items()}
        )

    def fixed_parameters(self) -> Dict[str, sp.Rational]:
        return {k: sp.Rational(v) for k, v in self.fixed.items()}


def _claim(raw: Mapping[str, object]) -> Claim:
    return Claim(
        id=str(raw["id"]),
        kind=str(raw["kind"]),
        anchor=str(raw.get("anchor", "")),
        expressions=tuple(str(e) for e in raw.get("expressions", [])),
        context=str(raw.get("context", "closed")),
        parameters=tuple(raw.get("parameters", [])),
        defaults={str(k): str(v) for k, v in (raw.get("defaults") or {}).items()},
        fixed={str(k): str(v) for k, v in (raw.get("fixed") or {}).items()},
        system=raw.get("system"),
        components=tuple(str(c) for c in raw.get("components", [])),
    )


@lru_cache(maxsize=1)
def load_claims() -> Tuple[Claim, ...]:
    text = resources.files(__package__).joinpath("claims.yaml").read_text()
    data = yaml.safe_load(text) or {}
    claims = tuple(_claim(raw) for raw in data.get("claims", []))
    logger.debug(f"Loaded {len(claims)} claims")
    return claims


def get_claim(claim_id: str) -> Claim:
    for claim in load_claims():
        if claim.id == claim_id:
            return claim
    raise KeyError(f"Unknown claim '{claim_id}'")


def claims_of_kind(kind: str) -> List[Claim]:
    return [c for c in load_claims() if c.kind == kind]


__all__ = [
    "BRANCH",
    "CONSTRAINTS",
    "Claim",
    "DETERMINING",
    "FLUX",
    "GENERATOR",
    "ODE",
    "SOLUTION",
    "SURFACE",
    "claims_of_kind",
    "declarations_for",
    "get_claim",
    "load_claims",
]
