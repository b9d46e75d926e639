import logging
from typing import List

from ...catalog.generators import (
    PROJECTION_ANCHOR,
    GeneratorRecord,
    load_point_generators,
    load_potential_generators,
    potentiality_filter,
    printed_generator_audit,
    printed_potential_symmetries,
    project_potential_symmetries,
)
from ...claims import get_claim
from ...determining.verify import verify_generator
from ...expr.equality import equal
from ...expr.printer import to_text
from ...model.fpe import auxiliary_system, fpe_delta
from ..config import RunConfig
from ..report import FAIL, INCONCLUSIVE, INFO, PASS, Report

logger = logging.getLogger(__name__)

POINT = "point"
POTENTIAL = "potential"
ALL = "all"
TARGETS = (POINT, POTENTIAL, ALL)

# The auxiliary generators whose x, t, u components depend on v.
EXPECTED_POTENTIAL = ("W3", "W5")
# Printed generators that differ from the catalog entry they name.
PRINTED_GENERATORS = {"W5": "W5-printed"}
FILTER_ANCHOR = "are the only generators"


def _verify(report: Report, records: List[GeneratorRecord], config: RunConfig) -> None:
    p = config.params
    for record in records:
        system = fpe_delta(p) if record.target == "fpe" else auxiliary_system(p)
        result = verify_generator(record.field, system, rules=record.rules, label=record.id)
        if result.passed:
            outcome = PASS
        elif result.passed is None:
            outcome = INCONCLUSIVE
        else:
            outcome = FAIL
        report.add(
            record.id,
            outcome,
            record.label,
            f"{system.name}: {result.method}",
            residuals=[to_text(r) for r in result.residuals],
            confidence=result.confidence,
        )


def _printed(report: Report, config: RunConfig) -> None:
    for generator_id, claim_id in PRINTED_GENERATORS.items():
        result = printed_generator_audit(claim_id, config.params)
        if result.passed:
            outcome = PASS
        elif result.passed is None:
            outcome = INCONCLUSIVE
        else:
            outcome = FAIL if config.strict else INFO
        report.add(
            claim_id,
            outcome,
            get_claim(claim_id).anchor,
            f"printed form of {generator_id}: {result.method}",
            residuals=[to_text(r) for r in result.residuals],
        )


def _filter(report: Report, records: List[GeneratorRecord], config: RunConfig) -> None:
    filtered = [g for g in records if potentiality_filter(g)]
    ids = tuple(g.id for g in filtered)
    report.add(
        "potentiality-filter",
        PASS if ids == EXPECTED_POTENTIAL else FAIL,
        FILTER_ANCHOR,
        ", ".join(ids) or "none",
        selected=list(ids),
        expected=list(EXPECTED_POTENTIAL),
    )
    printed = printed_potential_symmetries(config.params)
    for projection in project_potential_symmetries(filtered):
        expected = printed.get(projection.id)
        if expected is None:
            report.add(projection.id, FAIL, PROJECTION_ANCHOR, "no printed counterpart")
            continue
        mismatched = [
            name
            for name, value in projection.field.components().items()
            if not equal(value, expected.component(name)).equal
        ]
        report.add(
            projection.id,
            FAIL if mismatched else PASS,
            PROJECTION_ANCHOR,
            f"mismatched components: {', '.join(mismatched)}" if mismatched else "matches printed form",
            components={k: to_text(v) for k, v in projection.field.components().items()},
        )


def verify_generators(config: RunConfig, target: str = ALL) -> Report:
    """Symmetry criterion for every catalog generator of the selected target."""
    if target not in TARGETS:
        raise ValueError(f"Unknown target '{target}', expected one of {TARGETS}")
    report = Report("verify", {"target": target, **config.echo()})
    if target in (POINT, ALL):
        _verify(report, load_point_generators(config.params, verify=False), config)
    if target in (POTENTIAL, ALL):
        records = load_potential_generators(config.params, verify=False)
        _verify(report, records, config)
        _filter(report, records, config)
        _printed(report, config)
    logger.info(f"Verified {len(report.items)} items for target {target}")
    return report
