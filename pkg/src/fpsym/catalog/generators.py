"""
Named symmetry generators of the FPE and of its auxiliary potential system.

Generators are stored parametrically in (a1, a2) and verified against their
target system when loaded.
"""
import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Mapping, Optional

import sympy as sp

from ..claims import GENERATOR, get_claim
from ..determining.verify import VerificationReport, verify_generator
from ..errors import CatalogVerificationError
from ..expr.const import T, U, V, X
from ..expr.core import Expr
from ..jet.fields import VectorField
from ..model.formal import ALPHA, BETA, FormalRule, alpha_rule, beta_rule
from ..model.fpe import AUXILIARY_CONTEXT, FPE_CONTEXT, auxiliary_system, drift, fpe_delta, system_by_name
from ..model.params import SYMBOLIC, FpeParams

logger = logging.getLogger(__name__)

FPE = "fpe"
AUXILIARY = "auxiliary"
POTENTIAL = "potential"

POINT_ANCHOR = "Point symmetries of the FPE are generated by the operators"
POTENTIAL_ANCHOR = "admits a non trivial symmetry group"
PROJECTION_ANCHOR = "The potential symmetries of the FPE are generated by the vector fields"


@dataclass(frozen=True)
class GeneratorRecord:
    id: str
    field: VectorField
    target: str
    label: str
    rule: Optional[FormalRule] = None
    report: Optional[VerificationReport] = None

    @property
    def rules(self) -> tuple:
        return (self.rule,) if self.rule is not None else ()


def _point_fields(p: FpeParams) -> Dict[str, Mapping[str, Expr]]:
    a2, w = p.a2, drift(p)
    return {
        "V1": {"x": sp.exp(a2 * T)},
        "V2": {"u": U},
        "V3": {
            "x": sp.exp(-a2 * T) / (2 * a2),
            "u": w * U / a2 * sp.exp(-a2 * T),
        },
        "V4": {"t": 1},
        "V5": {
            "t": sp.exp(-2 * a2 * T),
            "x": -w * sp.exp(-2 * a2 * T),
            "u": -2 * w**2 * sp.exp(-2 * a2 * T) * U,
        },
        "V6": {
            "t": sp.exp(2 * a2 * T),
            "x": w * sp.exp(2 * a2 * T),
            "u": -a2 * U * sp.exp(2 * a2 * T),
        },
        "Valpha": {"u": ALPHA(X, T)},
    }


def _potential_fields(p: FpeParams) -> Dict[str, Mapping[str, Expr]]:
    a1, a2, w = p.a1, p.a2, drift(p)
    decay = sp.exp(-a2 * T)
    return {
        "W1": {"x": sp.exp(a2 * T)},
        "W2": {"u": U, "v": V},
        "W3": {
            "x": decay / (2 * a2),
            "u": ((X + a1 / a2) * U + V) * decay,
            "v": (a1 / a2 + X) * V * decay,
        },
        "W4": {"t": 1},
        "W5": {
            "x": -w * decay**2,
            "t": decay**2,
            "u": -2 * ((w**2 - a2) * U + 2 * a2 * w * V) * decay**2,
            "v": -(2 * w**2 - a2) * V * decay**2,
        },
        "W6": {
            "t": sp.exp(2 * a2 * T),
            "x": w * sp.exp(2 * a2 * T),
            "u": -a2 * U * sp.exp(2 * a2 * T),
        },
        "Wbeta": {"u": sp.diff(BETA(X, T), X), "v": BETA(X, T)},
    }


def _load(
    fields: Mapping[str, Mapping[str, Expr]],
    target: str,
    label: str,
    p: FpeParams,
    verify: bool,
) -> List[GeneratorRecord]:
    if target == FPE:
        context, system, rule_name, rule = FPE_CONTEXT, fpe_delta(p), "Valpha", alpha_rule(p)
    else:
        context, system, rule_name, rule = AUXILIARY_CONTEXT, auxiliary_system(p), "Wbeta", beta_rule(p)
    records = []
    for generator_id, components in fields.items():
        record = GeneratorRecord(
            id=generator_id,
            field=VectorField.from_components(context, components),
            target=target,
            label=label,
            rule=rule if generator_id == rule_name else None,
        )
        if verify:
            report = verify_generator(record.field, system, rules=record.rules, label=generator_id)
            if not report.passed:
                logger.error(f"Generator {generator_id} failed verification against {target}")
                raise CatalogVerificationError(generator_id, report.residuals)
            record = replace(record, report=report)
        records.append(record)
    logger.info(f"Loaded {len(records)} generators for the {target} system")
    return records


def load_point_generators(p: FpeParams = SYMBOLIC, verify: bool = True) -> List[GeneratorRecord]:
    """V1..V6 and Valpha, each checked against the FPE unless ``verify`` is off."""
    return _load(_point_fields(p), FPE, POINT_ANCHOR, p, verify)


def load_potential_generators(p: FpeParams = SYMBOLIC, verify: bool = True) -> List[GeneratorRecord]:
    """W1..W6 and Wbeta, each checked against the auxiliary system unless ``verify`` is off."""
    return _load(_potential_fields(p), AUXILIARY, POTENTIAL_ANCHOR, p, verify)


def printed_generator_audit(claim_id: str, p: FpeParams = SYMBOLIC) -> VerificationReport:
    """Symmetry criterion for a printed generator claim against the system it names."""
    claim = get_claim(claim_id)
    if claim.kind != GENERATOR:
        raise ValueError(f"Claim {claim_id} is a {claim.kind} claim, not a generator")
    target = claim.system or AUXILIARY
    context = FPE_CONTEXT if target == FPE else AUXILIARY_CONTEXT
    field = VectorField.from_components(context, {name: p.bind(c) for name, c in claim.fields().items()})
    report = verify_generator(field, system_by_name(target, p), label=claim.id)
    logger.info(f"Printed generator {claim.id}: passed={report.passed}")
    return report


def by_id(records: Iterable[GeneratorRecord]) -> Dict[str, GeneratorRecord]:
    return {record.id: record for record in records}


def potentiality_filter(g: GeneratorRecord) -> bool:
    """True iff xi, tau or eta of an auxiliary-system generator depends on v."""
    if g.target != AUXILIARY:
        raise ValueError(f"Generator {g.id} does not act on the auxiliary system")
    components = g.field.components()
    return any(sp.diff(components[name], V) != 0 for name in ("x", "t", "u"))


# Potential symmetries are named after the auxiliary generator they project.
PROJECTED_NAMES = {"W3": "Y1", "W5": "Y2"}


def project_potential_symmetries(filtered: Iterable[GeneratorRecord]) -> List[GeneratorRecord]:
    """Drop the d/dv component; the result acts on (x, t, u) with coefficients depending on v."""
    projected = []
    for g in filtered:
        components = g.field.components()
        field = VectorField.from_components(
            FPE_CONTEXT, {name: components[name] for name in ("x", "t", "u")}
        )
        projected.append(
            GeneratorRecord(
                id=PROJECTED_NAMES.get(g.id, f"Y({g.id})"),
                field=field,
                target=POTENTIAL,
                label=PROJECTION_ANCHOR,
            )
        )
    return projected


def printed_potential_symmetries(p: FpeParams = SYMBOLIC) -> Dict[str, VectorField]:
    """Y1 and Y2 as stated, for comparison with the projections."""
    a1, a2, w = p.a1, p.a2, drift(p)
    decay = sp.exp(-a2 * T)
    return {
        "Y1": VectorField.from_components(
            FPE_CONTEXT,
            {"x": decay / (2 * a2), "u": ((X + a1 / a2) * U + V) * decay},
        ),
        "Y2": VectorField.from_components(
            FPE_CONTEXT,
            {
                "x": -w * decay**2,
                "t": decay**2,
                "u": -2 * ((w**2 - a2) * U + 2 * a2 * w * V) * decay**2,
            },
        ),
    }
