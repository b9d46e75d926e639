"""
Solution records: a closed form in (x, t), where it came from, and what the checkers said.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

from ..claims import Claim
from ..expr.core import Expr
from ..expr.declarations import CLOSED_FORM, Declarations
from ..expr.parser import parse
from ..expr.printer import to_text


class Status(str, Enum):
    UNCHECKED = "unchecked"
    SYMBOLICALLY_VERIFIED = "symbolically-verified"
    NUMERICALLY_VERIFIED = "numerically-verified"
    REFUTED = "refuted"

    @property
    def verified(self) -> bool:
        return self in (Status.SYMBOLICALLY_VERIFIED, Status.NUMERICALLY_VERIFIED)


@dataclass(frozen=True)
class Provenance:
    """Seed id plus the operators applied to it, in order."""

    seed: str
    operators: Tuple[str, ...] = ()
    source: str = "derived"
    anchor: str = ""

    def then(self, operator: str) -> "Provenance":
        return replace(self, operators=self.operators + (operator,))

    def describe(self) -> str:
        if not self.operators:
            return self.seed
        return " -> ".join((self.seed,) + self.operators)


@dataclass(frozen=True)
class SolutionRecord:
    id: str
    expression: Expr
    provenance: Provenance
    status: Status = Status.UNCHECKED
    parameters: Tuple[str, ...] = ()
    residual: Optional[Expr] = None
    evidence: Tuple[Any, ...] = field(default_factory=tuple)

    @classmethod
    def seed(cls, id: str, expression: Expr, anchor: str = "", source: str = "seed") -> "SolutionRecord":
        return cls(id=id, expression=expression, provenance=Provenance(seed=id, source=source, anchor=anchor))

    @classmethod
    def from_claim(cls, claim: Claim, **values) -> "SolutionRecord":
        """Unchecked record for a published closed form, free parameters bound."""
        return cls(
            id=claim.id,
            expression=claim.instantiate(**values) if claim.parameters else claim.expression,
            provenance=Provenance(seed=claim.id, source="claim", anchor=claim.anchor),
        )

    @classmethod
    def from_text(
        cls,
        id: str,
        text: str,
        declarations: Declarations = CLOSED_FORM,
        provenance: Optional[Provenance] = None,
    ) -> "SolutionRecord":
        expression = parse(text, declarations)
        return cls(
            id=id,
            expression=expression,
            provenance=provenance or Provenance(seed=id, source="imported"),
            parameters=tuple(declarations.parameters),
        )

    def with_status(
        self, status: Status, residual: Optional[Expr] = None, evidence: Any = None
    ) -> "SolutionRecord":
        """New record with ``status``; evidence accumulates."""
        extra = (evidence,) if evidence is not None else ()
        return replace(
            self,
            status=status,
            residual=residual if residual is not None else self.residual,
            evidence=self.evidence + extra,
        )

    @property
    def text(self) -> str:
        return to_text(self.expression)

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "id": self.id,
            "expression": self.text,
            "status": self.status.value,
            "provenance": {
                "seed": self.provenance.seed,
                "operators": list(self.provenance.operators),
                "source": self.provenance.source,
            },
        }
        if self.provenance.anchor:
            data["anchor"] = self.provenance.anchor
        if self.residual is not None:
            data["residual"] = to_text(self.residual)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], declarations: Declarations = CLOSED_FORM) -> "SolutionRecord":
        raw = data.get("provenance") or {}
        provenance = Provenance(
            seed=str(raw.get("seed", data["id"])),
            operators=tuple(raw.get("operators", [])),
            source=str(raw.get("source", "imported")),
            anchor=str(data.get("anchor", "")),
        )
        return cls(
            id=str(data["id"]),
            expression=parse(str(data["expression"]), declarations),
            provenance=provenance,
            status=Status(data.get("status", Status.UNCHECKED.value)),
        )
