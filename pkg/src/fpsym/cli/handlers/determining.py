import logging

from ...claims import get_claim
from ...determining.ansatz import point_ansatz, potential_ansatz
from ...determining.derive import derive_determining
from ...determining.membership import check_membership
from ...expr.printer import to_text
from ...model.fpe import system_by_name
from ..config import RunConfig
from ..report import FAIL, INCONCLUSIVE, INFO, PASS, Report

logger = logging.getLogger(__name__)

SYSTEMS = ("fpe", "auxiliary")
PRINTED = {"fpe": "point-system", "auxiliary": "potential-system"}


def compare_determining(config: RunConfig, system: str = "fpe") -> Report:
    """Derive the determining system and compare its span with the printed one."""
    if system not in SYSTEMS:
        raise ValueError(f"Unknown system '{system}', expected one of {SYSTEMS}")
    p = config.params
    ansatz = point_ansatz() if system == "fpe" else potential_ansatz()
    derived = derive_determining(system_by_name(system, p), ansatz, seed=config.seed)
    claim = get_claim(PRINTED[system])
    claimed = [p.bind(c) for c in claim.parsed()]
    membership = check_membership(claimed, derived, seed=config.seed)

    report = Report("determining", {"system": system, **config.echo()})
    report.add(
        "derived",
        INFO,
        claim.anchor,
        f"{len(derived.constraints)} constraints, {len(derived.zeros)} vanishing derivatives",
        constraints=[to_text(c) for c in derived.constraints],
    )
    mismatch = FAIL if config.strict else INFO
    report.add(
        "printed-in-derived",
        PASS if not membership.unmatched_claimed else mismatch,
        claim.anchor,
        f"{len(membership.matched_claimed)}/{len(claimed)} printed constraints in the derived span",
        unmatched=[to_text(c) for c in membership.unmatched_claimed],
    )
    report.add(
        "derived-in-printed",
        PASS if not membership.unmatched_derived else mismatch,
        claim.anchor,
        f"{len(membership.unmatched_derived)} derived constraints outside the printed span",
        unmatched=[to_text(c) for c in membership.unmatched_derived],
    )
    if membership.inconclusive:
        report.add(
            "membership",
            INCONCLUSIVE,
            claim.anchor,
            f"{len(membership.inconclusive)} constraints not classified",
            inconclusive=[to_text(c) for c in membership.inconclusive],
        )
    logger.info(f"Determining system {system}: equivalent={membership.equivalent}")
    return report
